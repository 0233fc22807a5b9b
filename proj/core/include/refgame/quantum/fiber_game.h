#pragma once

#include <cstddef>
#include <string_view>

#include "refgame/quantum/game.h"

namespace refgame::quantum {

enum class FiberOrder { kMinThenMax, kMaxThenMin };

std::string_view to_string(FiberOrder o);
FiberOrder fiber_order_from_string(std::string_view s);

struct FiberOptions {
  double mu_start = 1.0;
  double mu_factor = 0.2;
  int max_newton_steps = 600;
  // Eigenvalues of rho1 below this (relative to the largest) are treated as
  // outside its support.
  double support_tolerance = 1e-12;
};

// Inner game of a game whose maximizer first commits to rho1 on its first
// register: the maximizer's final state ranges over the fiber
//   S(rho1) = { rho2 >= 0 on all maximizer registers : tr_rest(rho2) = rho1 }
// and the minimizer over all density matrices on its registers.
class FiberGame {
 public:
  FiberGame(const Observable& r, const RegisterLayout& layout);
  explicit FiberGame(const QuantumGame& game);

  std::size_t first_dim() const { return first_dim_; }
  std::size_t extension_dim() const { return ext_dim_; }
  std::size_t min_dim() const { return min_dim_; }

  struct Solution {
    GameValueReport report;
    // Y on the first register with tr(Y rho1') >= value(rho1') for every rho1'.
    // Only set by the max-then-min solve when rho1 has full rank.
    ComplexMatrix dual;
    bool has_dual = false;
  };

  // max-then-min: barrier method on max_{rho2 in S} min eig E_B(rho2).
  // min-then-max: barrier method on min_{sigma, Y} tr(Y rho1) s.t. Y (x) I >= E_A(sigma).
  // Both report rigorous lower/upper certificates; the value is the bound the
  // chosen outer player controls. Throws SolverConvergenceError when the gap
  // stays above tol.
  Solution solve(const ComplexMatrix& rho1, FiberOrder order, double tol,
                 const FiberOptions& opts = {}) const;

 private:
  ComplexMatrix grouped_;
  std::size_t first_dim_ = 1;
  std::size_t ext_dim_ = 1;
  std::size_t min_dim_ = 1;
};

GameValueReport value2_fiber(const Observable& r, const RegisterLayout& layout,
                             const DensityMatrix& rho1, FiberOrder order, double tol,
                             const FiberOptions& opts = {});

// |value2_fiber(min-then-max) - value2_fiber(max-then-min)|
double sion_gap(const Observable& r, const RegisterLayout& layout, const DensityMatrix& rho1,
                double tol, const FiberOptions& opts = {});

}  // namespace refgame::quantum
