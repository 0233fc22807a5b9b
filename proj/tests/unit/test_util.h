#pragma once

#include <cmath>
#include <cstdint>

#include "refgame/linops/eigen.h"
#include "refgame/linops/matrix.h"
#include "refgame/linops/states.h"

namespace refgame::testing {

using linops::Complex;
using linops::ComplexMatrix;

inline ComplexMatrix random_matrix(std::size_t dim, std::uint64_t seed) {
  linops::Rng rng(seed);
  return linops::random_complex_gaussian(dim, rng);
}

inline ComplexMatrix random_herm(std::size_t dim, std::uint64_t seed) {
  linops::Rng rng(seed);
  return linops::random_hermitian(dim, rng);
}

// Entrywise Kronecker product written out from the index formula.
inline ComplexMatrix kron_by_index(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix c(da * db);
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t j1 = 0; j1 < da; ++j1)
      for (std::size_t i2 = 0; i2 < db; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2) c(i1 * db + i2, j1 * db + j2) = a(i1, j1) * b(i2, j2);
  return c;
}

inline double payoff(const ComplexMatrix& r, const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  return linops::trace_product(r, kron_by_index(rho, sigma));
}

inline double min_eig(const ComplexMatrix& m) { return linops::min_eigenvalue(m); }

}  // namespace refgame::testing
