#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "refgame/linops/matrix.h"

namespace refgame::linops {

struct EigenOptions {
  // Off-diagonal Frobenius mass, relative to ||A||_F, at which a sweep stops.
  double tolerance = 1e-14;
  // Sweep cap is max_sweeps_per_dim * dim.
  int max_sweeps_per_dim = 50;
};

// A = V diag(values) V^dagger, eigenvalues ascending, eigenvectors as columns of V.
struct EigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;

  Vector column(std::size_t j) const;
};

// Cyclic complex Jacobi. Throws InputError if `h` is not Hermitian within 1e-10.
EigenDecomposition hermitian_eigen(const ComplexMatrix& h, const EigenOptions& opts = {});

struct EigenPair {
  double value = 0.0;
  Vector vector;
};

// Largest eigenvalue and a unit eigenvector. The vector is the limit of shifted
// power iteration started from the fixed vector (1,...,1)/sqrt(d): the normalized
// projection of that start vector onto the top eigenspace. Falls back to the
// Jacobi eigenvector when the start vector is orthogonal to the eigenspace.
EigenPair top_eigpair(const ComplexMatrix& h);
// Smallest eigenvalue, same conventions.
EigenPair bottom_eigpair(const ComplexMatrix& h);

double max_eigenvalue(const ComplexMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);

// V f(D) V^dagger.
ComplexMatrix apply_spectral(const EigenDecomposition& eig, const std::function<double(double)>& f);

// Frobenius-nearest PSD matrix (negative eigenvalues clipped to 0).
ComplexMatrix project_psd(const ComplexMatrix& h);

// exp(H) / tr exp(H), computed with the top eigenvalue shifted out.
ComplexMatrix gibbs_state(const ComplexMatrix& h);

// Inverse and log-determinant of a Hermitian positive definite matrix via
// Cholesky. Returns nullopt when the factorization hits a non-positive pivot.
struct HpdInverse {
  ComplexMatrix inverse;
  double log_det = 0.0;
};
std::optional<HpdInverse> hpd_inverse(const ComplexMatrix& a);

}  // namespace refgame::linops
