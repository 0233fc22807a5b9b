#include "refgame/linops/states.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "refgame/common.h"
#include "refgame/linops/eigen.h"

namespace refgame::linops {
namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = 1e-9;
constexpr double kTraceTol = 1e-10;

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng Rng::derived(std::uint64_t seed, std::uint64_t index) { return Rng(mix_seed(seed, index)); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.empty()) throw InputError("density matrix must have dim >= 1");
  if (!mat_.is_hermitian(kHermitianTol)) throw InputError("density matrix is not Hermitian");
  if (std::abs(mat_.trace() - 1.0) > kTraceTol) throw InputError("density matrix trace is not 1");
  if (min_eigenvalue(mat_) < -kPsdTol) throw InputError("density matrix is not PSD");
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
  Vector v(psi.begin(), psi.end());
  const double n = norm(v);
  for (auto& x : v) x /= n;
  return DensityMatrix(ComplexMatrix::outer(v));
}

DensityMatrix DensityMatrix::basis(std::size_t dim, std::size_t index) {
  return DensityMatrix(ComplexMatrix::basis_projector(dim, index));
}

Observable::Observable(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.empty()) throw InputError("observable must have dim >= 1");
  if (!mat_.is_hermitian(kHermitianTol)) throw InputError("observable is not Hermitian");
  const auto eig = hermitian_eigen(mat_);
  if (eig.values.front() < -kPsdTol || eig.values.back() > 1.0 + kPsdTol) {
    throw InputError("observable eigenvalues must lie in [0, 1]");
  }
}

ComplexMatrix random_complex_gaussian(std::size_t dim, Rng& rng) {
  ComplexMatrix g(dim);
  for (auto& x : g.entries()) {
    const double re = rng.normal();
    const double im = rng.normal();
    x = Complex(re, im);
  }
  return g;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  return random_complex_gaussian(dim, rng).hermitian_part();
}

Vector random_unit_vector(std::size_t dim, Rng& rng) {
  Vector v(dim);
  for (auto& x : v) {
    const double re = rng.normal();
    const double im = rng.normal();
    x = Complex(re, im);
  }
  const double n = norm(v);
  for (auto& x : v) x /= n;
  return v;
}

DensityMatrix random_density(std::size_t dim, Rng& rng) {
  if (dim == 0) throw InputError("dim must be >= 1");
  const ComplexMatrix g = random_complex_gaussian(dim, rng);
  ComplexMatrix p = (g * g.adjoint()).hermitian_part();
  p *= 1.0 / p.trace().real();
  return DensityMatrix(std::move(p));
}

DensityMatrix random_density(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rng);
}

Observable random_observable(std::size_t dim, Rng& rng) {
  if (dim == 0) throw InputError("dim must be >= 1");
  const ComplexMatrix h = random_hermitian(dim, rng);
  const auto eig = hermitian_eigen(h);
  const double radius = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  if (radius == 0.0) return Observable(0.5 * ComplexMatrix::identity(dim));
  ComplexMatrix r = h + radius * ComplexMatrix::identity(dim);
  r *= 1.0 / (2.0 * radius);
  // Clip round-off so the extreme eigenvalue sits inside [0, 1].
  r = apply_spectral(hermitian_eigen(r), [](double x) { return std::clamp(x, 0.0, 1.0); });
  return Observable(std::move(r));
}

Observable random_observable(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_observable(dim, rng);
}

}  // namespace refgame::linops
