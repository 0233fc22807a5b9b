#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "refgame/linops/matrix.h"

namespace refgame::quantum::detail {

using linops::ComplexMatrix;

// M(x) = constant + sum_u x_u * terms[u], Hermitian, required positive definite.
struct LmiBlock {
  ComplexMatrix constant;
  std::vector<std::pair<std::size_t, ComplexMatrix>> terms;

  ComplexMatrix at(const std::vector<double>& x) const;
};

// minimize cost . x  subject to every block positive definite.
struct BarrierProblem {
  std::vector<double> cost;
  std::vector<LmiBlock> blocks;
};

struct BarrierOptions {
  double mu_start = 1.0;
  double mu_factor = 0.2;
  double mu_floor = 1e-13;
  int max_newton_steps = 600;
  int max_centering_steps = 80;
  double centering_tolerance = 1e-10;
};

// Central point for the current barrier weight; `inverses[j]` is M_j(x)^{-1}.
struct BarrierPoint {
  std::vector<double> x;
  double mu = 0.0;
  std::vector<ComplexMatrix> blocks;
  std::vector<ComplexMatrix> inverses;
};

struct BarrierResult {
  BarrierPoint point;
  long newton_steps = 0;
  bool stopped = false;  // the stage callback accepted a point
};

// Path-following log-barrier method. `x0` must be strictly feasible. After
// each centering `stage_done` is called; returning true ends the solve.
BarrierResult barrier_solve(const BarrierProblem& problem, std::vector<double> x0,
                            const BarrierOptions& opts,
                            const std::function<bool(const BarrierPoint&)>& stage_done);

// Orthonormal (Frobenius) Hermitian bases. `hermitian_basis` puts I/sqrt(d) first.
std::vector<ComplexMatrix> traceless_hermitian_basis(std::size_t d);
std::vector<ComplexMatrix> hermitian_basis(std::size_t d);

}  // namespace refgame::quantum::detail
