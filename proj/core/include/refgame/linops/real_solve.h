#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace refgame::linops {

// Dense real n x n matrix, row-major, for the small Newton systems of the
// barrier solvers.
struct RealMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  explicit RealMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

// Solve A x = b for symmetric positive definite A (Cholesky). nullopt if a
// pivot is not positive.
std::optional<std::vector<double>> solve_spd(const RealMatrix& a, const std::vector<double>& b);

// Gaussian elimination with partial pivoting. nullopt if singular.
std::optional<std::vector<double>> solve_general(RealMatrix a, std::vector<double> b);

}  // namespace refgame::linops
