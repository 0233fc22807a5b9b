#pragma once

#include <array>

#include "refgame/quantum/fiber_game.h"
#include "refgame/quantum/game.h"
#include "refgame/quantum/value2.h"

namespace refgame::quantum {

struct Value3Options {
  int grid_radii = 10;        // shells at radius k / grid_radii
  int grid_directions = 100;  // Fibonacci points per shell
  double grid_tol = 1e-3;     // inner tolerance while scanning the grid
  int refine_rounds = 12;
  double refine_step = 0.1;   // first pattern-search step, halved per round
  int max_moves_per_round = 50;
  bool grid_only = false;     // skip refinement
  FiberOptions fiber;
};

struct Value3Report {
  GameValueReport report;
  std::array<double, 3> bloch{};  // maximizing rho1 found
  long evaluations = 0;
};

// (I + x X + y Y + z Z) / 2
ComplexMatrix bloch_density(const std::array<double, 3>& r);

// max over rho1 of the fiber value, for three-turn games whose first register
// is one qubit. lower_cert is the best fiber value found; upper_cert is the
// smallest lambda_max(Y) over the dual certificates collected on the way.
Value3Report value3(const QuantumGame& game, double tol, const Value3Options& opts = {});

// |value3(game) - value2(merged game)|
double collapse_gap(const Observable& r, const RegisterLayout& layout, double tol,
                    const Value3Options& v3 = {}, const Value2Options& v2 = {});

}  // namespace refgame::quantum
