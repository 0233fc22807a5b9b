#pragma once

#include <cstdint>
#include <random>

#include "refgame/linops/matrix.h"

namespace refgame::linops {

// Seeded generator with platform-independent uniform and normal draws
// (std:: distributions are implementation-defined, mt19937_64 is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for (seed, index), e.g. per instance or per trial.
  static Rng derived(std::uint64_t seed, std::uint64_t index);

  double uniform();  // [0, 1)
  double normal();   // standard normal, Box-Muller
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

// Hermitian, PSD, unit trace.
class DensityMatrix {
 public:
  // Validates the invariants; throws InputError.
  explicit DensityMatrix(ComplexMatrix mat);

  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix pure(std::span<const Complex> psi);
  static DensityMatrix basis(std::size_t dim, std::size_t index);

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
};

// Hermitian with 0 <= R <= I.
class Observable {
 public:
  explicit Observable(ComplexMatrix mat);

  const ComplexMatrix& mat() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
};

ComplexMatrix random_complex_gaussian(std::size_t dim, Rng& rng);
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
Vector random_unit_vector(std::size_t dim, Rng& rng);

// G G^dagger / tr(G G^dagger) for a seeded complex Gaussian G.
DensityMatrix random_density(std::size_t dim, std::uint64_t seed);
DensityMatrix random_density(std::size_t dim, Rng& rng);
// (H + ||H|| I) / (2 ||H||) for a seeded Hermitian Gaussian H.
Observable random_observable(std::size_t dim, std::uint64_t seed);
Observable random_observable(std::size_t dim, Rng& rng);

}  // namespace refgame::linops
