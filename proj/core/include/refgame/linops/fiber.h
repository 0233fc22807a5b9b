#pragma once

#include <span>
#include <string>

#include "refgame/linops/layout.h"
#include "refgame/linops/matrix.h"
#include "refgame/linops/states.h"

namespace refgame::linops {

// Orthogonal projection of Hermitian `x` onto the affine set
// { r : tr_ext(r) = rho1 }, i.e. r = x + (rho1 - tr_ext(x)) (x) I / d_ext with
// the identity placed on factor `ext`.
ComplexMatrix project_fiber_affine(const ComplexMatrix& x, const ComplexMatrix& rho1,
                                   std::span<const std::size_t> dims, std::size_t ext);
ComplexMatrix project_fiber_affine(const ComplexMatrix& x, const DensityMatrix& rho1,
                                   const RegisterLayout& layout, const std::string& extended);

struct FiberProjectionOptions {
  int max_iterations = 10000;
  // Stop once successive iterates differ by at most this (Frobenius).
  double step_tolerance = 1e-10;
  // Reaching the cap with a larger residual is a ConvergenceError.
  double failure_residual = 1e-6;
  // Eigenvalues of rho1 below this, relative to the largest, count as outside
  // its support.
  double support_tolerance = 1e-12;
};

// Frobenius-nearest point of S = { r >= 0 : tr_ext(r) = rho1 }, by Dykstra's
// alternating projections between the PSD cone and the affine fiber,
// restricted to supp(rho1) (x) H_ext.
DensityMatrix project_fiber(const ComplexMatrix& x, const ComplexMatrix& rho1,
                            std::span<const std::size_t> dims, std::size_t ext,
                            const FiberProjectionOptions& opts = {});
DensityMatrix project_fiber(const ComplexMatrix& x, const DensityMatrix& rho1,
                            const RegisterLayout& layout, const std::string& extended,
                            const FiberProjectionOptions& opts = {});

}  // namespace refgame::linops
