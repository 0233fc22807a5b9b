#include "refgame/linops/fiber.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "refgame/common.h"
#include "refgame/linops/eigen.h"
#include "refgame/linops/tensor.h"

namespace refgame::linops {
namespace {

void check_fiber_dims(const ComplexMatrix& x, const ComplexMatrix& rho1,
                      std::span<const std::size_t> dims, std::size_t ext) {
  if (ext >= dims.size()) throw InputError("extended factor out of range");
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (x.dim() != total) throw InputError("fiber projection: matrix does not match dims");
  if (rho1.dim() * dims[ext] != total) {
    throw InputError("fiber projection: marginal dimension does not match kept registers");
  }
  if (!x.is_hermitian(1e-10)) throw InputError("fiber projection: input is not Hermitian");
}

double constraint_residual(const ComplexMatrix& r, const ComplexMatrix& rho1,
                           std::span<const std::size_t> dims, std::size_t ext) {
  return max_abs_diff(partial_trace(r, dims, {ext}), rho1);
}

}  // namespace

ComplexMatrix project_fiber_affine(const ComplexMatrix& x, const ComplexMatrix& rho1,
                                   std::span<const std::size_t> dims, std::size_t ext) {
  check_fiber_dims(x, rho1, dims, ext);
  ComplexMatrix delta = rho1 - partial_trace(x, dims, {ext});
  delta *= 1.0 / static_cast<double>(dims[ext]);
  return (x + embed_with_identity(delta, dims, ext)).hermitian_part();
}

ComplexMatrix project_fiber_affine(const ComplexMatrix& x, const DensityMatrix& rho1,
                                   const RegisterLayout& layout, const std::string& extended) {
  const auto dims = layout.dims();
  return project_fiber_affine(x, rho1.mat(), dims, layout.index_of(extended));
}

DensityMatrix project_fiber(const ComplexMatrix& x, const ComplexMatrix& rho1,
                            std::span<const std::size_t> dims, std::size_t ext,
                            const FiberProjectionOptions& opts) {
  check_fiber_dims(x, rho1, dims, ext);
  // Work in (kept registers, ext) order.
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (k != ext) order.push_back(k);
  }
  order.push_back(ext);
  std::vector<std::size_t> pdims;
  for (std::size_t k : order) pdims.push_back(dims[k]);
  const std::size_t d1 = rho1.dim();
  const std::size_t d2 = dims[ext];
  const ComplexMatrix y = permute_factors(x.hermitian_part(), dims, order);

  // Members of S vanish on ker(rho1) (x) H_ext, so project the compression of
  // y onto the support of rho1, where the fiber has interior points.
  const auto eig = hermitian_eigen(rho1);
  const double cut = opts.support_tolerance * std::max(eig.values.back(), 0.0);
  std::vector<Vector> v;
  std::vector<double> kept;
  for (std::size_t j = 0; j < d1; ++j) {
    if (eig.values[j] > cut) {
      v.push_back(eig.column(j));
      kept.push_back(eig.values[j]);
    }
  }
  const std::size_t r = v.size();
  ComplexMatrix yr(r * d2);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d1; ++b) {
          const Complex w = std::conj(v[i][a]) * v[j][b];
          if (w == 0.0) continue;
          for (std::size_t p = 0; p < d2; ++p)
            for (std::size_t q = 0; q < d2; ++q) yr(i * d2 + p, j * d2 + q) += w * y(a * d2 + p, b * d2 + q);
        }
  yr = yr.hermitian_part();
  const ComplexMatrix rho_r = ComplexMatrix::diagonal(kept);
  const std::vector<std::size_t> rdims{r, d2};

  // Dykstra: the affine set needs no correction term, the cone does.
  ComplexMatrix current = project_fiber_affine(yr, rho_r, rdims, 1);
  ComplexMatrix cone_corr(r * d2);
  ComplexMatrix cone_pt = current;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const ComplexMatrix shifted = current + cone_corr;
    cone_pt = project_psd(shifted);
    cone_corr = shifted - cone_pt;
    ComplexMatrix next = project_fiber_affine(cone_pt, rho_r, rdims, 1);
    const double step = (next - current).frobenius_norm();
    current = std::move(next);
    if (step <= opts.step_tolerance) break;
    if (it + 1 == opts.max_iterations) {
      const double residual = std::max(constraint_residual(cone_pt, rho_r, rdims, 1),
                                       std::max(0.0, -min_eigenvalue(current)));
      if (residual > opts.failure_residual) {
        throw ConvergenceError("fiber projection did not converge", residual);
      }
    }
  }
  // `current` has the exact marginal; mixing with rho_r (x) I / d2 removes
  // leftover negativity without touching it.
  std::vector<double> d0;
  for (double k : kept)
    for (std::size_t p = 0; p < d2; ++p) d0.push_back(k / static_cast<double>(d2));
  std::vector<double> isqrt;
  for (double k : d0) isqrt.push_back(1.0 / std::sqrt(k));
  const ComplexMatrix s = ComplexMatrix::diagonal(isqrt);
  const double ell = min_eigenvalue((s * current * s).hermitian_part());
  if (ell < 0.0) {
    const double theta = -ell / (1.0 - ell);
    current *= 1.0 - theta;
    current.axpy(theta, ComplexMatrix::diagonal(d0));
  }

  ComplexMatrix lifted(d1 * d2);
  for (std::size_t a = 0; a < d1; ++a)
    for (std::size_t b = 0; b < d1; ++b)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          const Complex w = v[i][a] * std::conj(v[j][b]);
          if (w == 0.0) continue;
          for (std::size_t p = 0; p < d2; ++p)
            for (std::size_t q = 0; q < d2; ++q)
              lifted(a * d2 + p, b * d2 + q) += w * current(i * d2 + p, j * d2 + q);
        }
  std::vector<std::size_t> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inverse[order[k]] = k;
  return DensityMatrix(permute_factors(lifted.hermitian_part(), pdims, inverse));
}

DensityMatrix project_fiber(const ComplexMatrix& x, const DensityMatrix& rho1,
                            const RegisterLayout& layout, const std::string& extended,
                            const FiberProjectionOptions& opts) {
  const auto dims = layout.dims();
  return project_fiber(x, rho1.mat(), dims, layout.index_of(extended), opts);
}

}  // namespace refgame::linops
