#pragma once

#include <cstddef>
#include <string_view>

#include "refgame/quantum/game.h"

namespace refgame::quantum {

enum class Value2Scheme {
  // Optimistic matrix multiplicative weights for both players, fixed step.
  kOptimistic,
  // Multiplicative weights for the minimizer with step min(0.5, sqrt(ln d / t)),
  // exact eigenvector best responses for the maximizer.
  kBestResponse,
};

std::string_view to_string(Value2Scheme s);
Value2Scheme value2_scheme_from_string(std::string_view s);

struct Value2Options {
  Value2Scheme scheme = Value2Scheme::kOptimistic;
  double step = 0.25;  // kOptimistic only
  long max_iterations = 200000;
};

// max_rho min_sigma tr(R (rho (x) sigma)) for a two-turn game. Certificates:
// upper = lambda_max(E_A(sigma)) for the best minimizer iterate or average seen,
// lower = lambda_min(E_B(rho)) likewise; value is their midpoint. Stops once
// upper - lower <= tol, otherwise throws SolverConvergenceError at the cap.
GameValueReport value2(const QuantumGame& game, double tol, const Value2Options& opts = {});

// Same solver on a grouped observable over (A (x) B).
GameValueReport solve_bilinear(const ComplexMatrix& grouped, std::size_t dim_a, std::size_t dim_b,
                               double tol, const Value2Options& opts = {});

}  // namespace refgame::quantum
