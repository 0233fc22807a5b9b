#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "refgame/common.h"
#include "refgame/linops/eigen.h"
#include "refgame/linops/fiber.h"
#include "refgame/linops/json.h"
#include "refgame/linops/layout.h"
#include "refgame/linops/states.h"
#include "refgame/linops/tensor.h"
#include "test_util.h"

using namespace refgame;
using namespace refgame::linops;
using refgame::testing::kron_by_index;
using refgame::testing::random_herm;
using refgame::testing::random_matrix;

namespace {

RegisterLayout qubit_layout(int n) {
  std::vector<Register> regs;
  for (int i = 0; i < n; ++i) {
    regs.push_back({"r" + std::to_string(i), 1,
                    i % 2 == 0 ? Player::kMaximizer : Player::kMinimizer, i + 1});
  }
  return RegisterLayout(regs);
}

// Member of { r >= 0 : tr_2 r = rho1 } built from conditional states on the
// eigenbasis of rho1.
ComplexMatrix random_extension(const ComplexMatrix& rho1, std::size_t d2, Rng& rng) {
  const auto eig = hermitian_eigen(rho1);
  ComplexMatrix out(rho1.dim() * d2);
  for (std::size_t i = 0; i < rho1.dim(); ++i) {
    const ComplexMatrix tau = random_density(d2, rng).mat();
    const Vector v = eig.column(i);
    out.axpy(std::max(eig.values[i], 0.0), tensor(ComplexMatrix::outer(v), tau));
  }
  return out;
}

double frob(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

}  // namespace

TEST(Tensor, IdentityTimesIdentity) {
  EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
            ComplexMatrix::identity(4));
}

TEST(Tensor, BasisProjectors) {
  const auto p = tensor(ComplexMatrix::basis_projector(2, 0), ComplexMatrix::basis_projector(2, 1));
  EXPECT_EQ(p, ComplexMatrix::basis_projector(4, 1));
}

TEST(Tensor, MatchesIndexFormula) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = random_matrix(2, seed);
    const auto b = random_matrix(2, seed + 100);
    EXPECT_LE(max_abs_diff(tensor(a, b), kron_by_index(a, b)), 1e-15);
  }
  const auto a = random_matrix(3, 7);
  const auto b = random_matrix(4, 8);
  EXPECT_LE(max_abs_diff(tensor(a, b), kron_by_index(a, b)), 1e-15);
}

TEST(PartialTrace, ProductStateMarginal) {
  const auto rho = random_density(2, 1).mat();
  const auto sigma = random_density(2, 2).mat();
  const auto layout = qubit_layout(2);
  EXPECT_LE(max_abs_diff(partial_trace(tensor(rho, sigma), layout, {"r1"}), rho), 1e-14);
  EXPECT_LE(max_abs_diff(partial_trace(tensor(rho, sigma), layout, {"r0"}), sigma), 1e-14);
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
  const double h = 1.0 / std::sqrt(2.0);
  const Vector phi{h, 0.0, 0.0, h};
  const auto m = partial_trace(ComplexMatrix::outer(phi), qubit_layout(2), {"r1"});
  EXPECT_LE(max_abs_diff(m, 0.5 * ComplexMatrix::identity(2)), 1e-15);
}

TEST(PartialTrace, MatchesDirectSummation) {
  const auto m = random_matrix(8, 11);
  const auto layout = qubit_layout(3);
  // Trace the middle qubit: out[(a c),(a' c')] = sum_b m[(a b c),(a' b c')].
  ComplexMatrix want(4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 2; ++b) want(a * 2 + c, a2 * 2 + c2) += m(a * 4 + b * 2 + c, a2 * 4 + b * 2 + c2);
  EXPECT_LE(max_abs_diff(partial_trace(m, layout, {"r1"}), want), 1e-14);

  // Trace the first and last: out[b, b'] = sum_{a,c} m[(a b c),(a b' c)].
  ComplexMatrix want2(2);
  for (int b = 0; b < 2; ++b)
    for (int b2 = 0; b2 < 2; ++b2)
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) want2(b, b2) += m(a * 4 + b * 2 + c, a * 4 + b2 * 2 + c);
  EXPECT_LE(max_abs_diff(partial_trace(m, layout, {"r0", "r2"}), want2), 1e-14);
}

TEST(PartialTrace, UnknownIdIsInputError) {
  EXPECT_THROW(partial_trace(ComplexMatrix::identity(4), qubit_layout(2), {"nope"}), InputError);
}

TEST(PartialTrace, LinearAndTracePreserving) {
  const auto layout = qubit_layout(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = random_matrix(8, seed);
    const auto b = random_matrix(8, seed + 50);
    const Complex alpha(0.3, -1.2);
    const Complex beta(-2.0, 0.5);
    const auto lhs = partial_trace(alpha * a + beta * b, layout, {"r0"});
    const auto rhs = alpha * partial_trace(a, layout, {"r0"}) + beta * partial_trace(b, layout, {"r0"});
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-10);
    EXPECT_LE(std::abs(partial_trace(a, layout, {"r1", "r2"}).trace() - a.trace()), 1e-10);
  }
}

TEST(PermuteFactors, SwapsProductFactors) {
  const auto a = random_matrix(2, 1);
  const auto b = random_matrix(4, 2);
  const std::vector<std::size_t> dims{2, 4};
  const std::vector<std::size_t> order{1, 0};
  EXPECT_LE(max_abs_diff(permute_factors(tensor(a, b), dims, order), tensor(b, a)), 1e-15);
}

TEST(TopEigpair, IdentityReturnsStartVector) {
  const auto p = top_eigpair(ComplexMatrix::identity(2));
  EXPECT_NEAR(p.value, 1.0, 1e-12);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(p.vector[0] - h), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.vector[1] - h), 0.0, 1e-12);
}

TEST(TopEigpair, Diagonal) {
  const std::vector<double> d{0.3, 0.9};
  const auto p = top_eigpair(ComplexMatrix::diagonal(d));
  EXPECT_NEAR(p.value, 0.9, 1e-12);
  EXPECT_NEAR(std::abs(p.vector[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.vector[1]), 1.0, 1e-12);
}

TEST(TopEigpair, AgreesWithRayleighProbes) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto h = random_herm(8, 300 + seed);
    const auto p = top_eigpair(h);
    // Residual and unit norm.
    const Vector hv = h * p.vector;
    double res = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) res = std::max(res, std::abs(hv[i] - p.value * p.vector[i]));
    EXPECT_LE(res, 1e-8 * 8);
    EXPECT_NEAR(norm(p.vector), 1.0, 1e-12);

    // Probe oracle: no Rayleigh quotient exceeds the value, and shifted power
    // iteration from the best probe climbs to it.
    Rng rng(900 + seed);
    double best = -1e300;
    Vector best_v;
    for (int k = 0; k < 2000; ++k) {
      const Vector v = random_unit_vector(8, rng);
      const double q = dot(v, h * v).real();
      EXPECT_LE(q, p.value + 1e-12);
      if (q > best) {
        best = q;
        best_v = v;
      }
    }
    const double shift = h.frobenius_norm();
    Vector v = best_v;
    for (int it = 0; it < 20000; ++it) {
      Vector w = h * v;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += shift * v[i];
      const double n = norm(w);
      for (auto& x : w) x /= n;
      v = std::move(w);
    }
    EXPECT_NEAR(dot(v, h * v).real(), p.value, 1e-6);
  }
}

TEST(TopEigpair, RejectsNonHermitian) {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(top_eigpair(m), InputError);
}

TEST(TopEigpair, Deterministic) {
  const auto h = random_herm(16, 5);
  const auto a = top_eigpair(h);
  const auto b = top_eigpair(h);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.vector, b.vector);
}

TEST(HermitianEigen, Reconstructs) {
  const auto h = random_herm(12, 77);
  const auto eig = hermitian_eigen(h);
  const auto back = apply_spectral(eig, [](double x) { return x; });
  EXPECT_LE(max_abs_diff(back, h), 1e-12);
  for (std::size_t i = 1; i < eig.values.size(); ++i) EXPECT_LE(eig.values[i - 1], eig.values[i]);
}

TEST(ProjectPsd, FixedPointOnPsd) {
  const auto p = random_density(4, 3).mat();
  EXPECT_LE(max_abs_diff(project_psd(p), p), 1e-12);
}

TEST(ProjectPsd, ClipsNegativeEigenvalue) {
  const std::vector<double> d{1.0, -1.0};
  const std::vector<double> want{1.0, 0.0};
  EXPECT_LE(max_abs_diff(project_psd(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(want)), 1e-15);
}

TEST(ProjectPsd, NearerThanRandomPsdProbes) {
  const auto h = random_herm(4, 21);
  const auto p = project_psd(h);
  EXPECT_GE(min_eigenvalue(p), -1e-12);
  const double dist = frob(h, p);
  Rng rng(22);
  for (int k = 0; k < 100; ++k) {
    const auto g = random_complex_gaussian(4, rng);
    ComplexMatrix x = g * g.adjoint();
    x *= rng.uniform() * 2.0;
    EXPECT_LE(dist, frob(h, x.hermitian_part()) + 1e-12);
  }
}

TEST(ProjectPsd, RejectsNonHermitian) {
  ComplexMatrix m(2);
  m(1, 0) = Complex(0.0, 1.0);
  EXPECT_THROW(project_psd(m), InputError);
}

TEST(FiberAffine, FixedPoint) {
  const auto layout = qubit_layout(2);
  const auto rho1 = random_density(2, 4);
  const auto x = tensor(rho1.mat(), random_density(2, 5).mat());
  EXPECT_LE(max_abs_diff(project_fiber_affine(x, rho1, layout, "r1"), x), 1e-14);
}

TEST(FiberAffine, ZeroInput) {
  const auto out = project_fiber_affine(ComplexMatrix(4), DensityMatrix::maximally_mixed(2),
                                        qubit_layout(2), "r1");
  EXPECT_LE(max_abs_diff(out, 0.25 * ComplexMatrix::identity(4)), 1e-15);
}

TEST(FiberAffine, OrthogonalProjection) {
  const auto layout = qubit_layout(2);
  const std::vector<std::size_t> dims{2, 2};
  const auto rho1 = random_density(2, 8);
  const auto x = random_herm(4, 9);
  const auto out = project_fiber_affine(x, rho1, layout, "r1");
  EXPECT_LE(max_abs_diff(partial_trace(out, layout, {"r1"}), rho1.mat()), 1e-12);
  const auto diff = out - x;
  for (std::uint64_t s = 0; s < 50; ++s) {
    // Directions inside the subspace have zero marginal on the kept register.
    const auto h = random_herm(4, 1000 + s);
    ComplexMatrix m = partial_trace(h, dims, {1});
    m *= 0.5;
    const auto dir = h - embed_with_identity(m, dims, 1);
    EXPECT_LE(std::abs(frobenius_inner(diff, dir)), 1e-9);
  }
}

TEST(FiberAffine, DimensionMismatch) {
  EXPECT_THROW(project_fiber_affine(ComplexMatrix(4), DensityMatrix::maximally_mixed(4),
                                    qubit_layout(2), "r1"),
               InputError);
}

TEST(Fiber, MemberIsFixed) {
  const auto layout = qubit_layout(2);
  Rng rng(31);
  const auto rho1 = random_density(2, rng);
  const auto x = random_extension(rho1.mat(), 2, rng);
  EXPECT_LE(max_abs_diff(project_fiber(x, rho1, layout, "r1").mat(), x), 1e-8);
}

TEST(Fiber, PureMarginalForcesProduct) {
  const auto layout = qubit_layout(2);
  const auto rho1 = DensityMatrix::basis(2, 0);
  const auto out = project_fiber(random_herm(4, 12), rho1, layout, "r1").mat();
  const auto tau = partial_trace(out, layout, {"r0"});
  EXPECT_LE(max_abs_diff(out, tensor(rho1.mat(), tau)), 1e-7);
  EXPECT_GE(min_eigenvalue(tau), -1e-8);
  EXPECT_NEAR(tau.trace().real(), 1.0, 1e-8);
}

TEST(Fiber, NearerThanRandomMembers) {
  const auto layout = qubit_layout(2);
  Rng rng(41);
  const auto rho1 = random_density(2, rng);
  const auto x = random_herm(4, 42);
  const auto p = project_fiber(x, rho1, layout, "r1").mat();
  EXPECT_GE(min_eigenvalue(p), -1e-8);
  EXPECT_LE(max_abs_diff(partial_trace(p, layout, {"r1"}), rho1.mat()), 1e-8);
  const double dist = frob(x, p);
  for (int k = 0; k < 100; ++k) {
    EXPECT_LE(dist, frob(x, random_extension(rho1.mat(), 2, rng)) + 1e-8);
  }
}

TEST(Fiber, Idempotent) {
  const auto layout = qubit_layout(3);
  const auto rho1 = random_density(4, 50);
  const auto once = project_fiber(random_herm(8, 51), rho1, layout, "r2");
  const auto twice = project_fiber(once.mat(), rho1, layout, "r2");
  EXPECT_LE(max_abs_diff(once.mat(), twice.mat()), 1e-8);
}

TEST(Fiber, ConvexCombinationsStayInside) {
  Rng rng(61);
  const auto rho1 = random_density(2, rng);
  const auto a = random_extension(rho1.mat(), 2, rng);
  const auto b = project_fiber(random_herm(4, 62), rho1, qubit_layout(2), "r1").mat();
  const std::vector<std::size_t> dims{2, 2};
  for (int s = 0; s <= 10; ++s) {
    const double t = s / 10.0;
    ComplexMatrix c = a;
    c *= 1.0 - t;
    c.axpy(t, b);
    EXPECT_GE(min_eigenvalue(c), -1e-8);
    EXPECT_LE(max_abs_diff(partial_trace(c, dims, {1}), rho1.mat()), 1e-8);
  }
}

TEST(RandomStates, DensityInvariants) {
  const auto rho = random_density(2, 42);
  EXPECT_TRUE(rho.mat().is_hermitian(1e-10));
  EXPECT_NEAR(rho.mat().trace().real(), 1.0, 1e-10);
  EXPECT_GE(min_eigenvalue(rho.mat()), -1e-9);
}

TEST(RandomStates, ObservableSpectrum) {
  const auto r = random_observable(4, 7);
  const auto eig = hermitian_eigen(r.mat());
  EXPECT_GE(eig.values.front(), -1e-9);
  EXPECT_LE(eig.values.back(), 1.0 + 1e-9);
}

TEST(RandomStates, SeedDeterminismAndDistinctness) {
  EXPECT_EQ(random_density(4, 9).mat(), random_density(4, 9).mat());
  EXPECT_EQ(random_observable(4, 9).mat(), random_observable(4, 9).mat());
  double total = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    total += max_abs_diff(random_density(4, 2 * s).mat(), random_density(4, 2 * s + 1).mat());
  }
  EXPECT_GT(total / 100.0, 1e-3);
}

TEST(DensityMatrix, RejectsInvalid) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), InputError);
  const std::vector<double> neg{1.5, -0.5};
  EXPECT_THROW(DensityMatrix(ComplexMatrix::diagonal(neg)), InputError);
  EXPECT_THROW(Observable(2.0 * ComplexMatrix::identity(2)), InputError);
}

TEST(Layout, Invariants) {
  EXPECT_THROW(RegisterLayout({{"a", 1, Player::kMinimizer, 1}}), InputError);
  EXPECT_THROW(RegisterLayout({{"a", 1, Player::kMaximizer, 2}, {"b", 1, Player::kMinimizer, 1}}),
               InputError);
  EXPECT_THROW(RegisterLayout({{"a", 1, Player::kMaximizer, 1}, {"b", 1, Player::kMaximizer, 2}}),
               InputError);
  const RegisterLayout l({{"x1", 1, Player::kMaximizer, 1},
                          {"y1", 2, Player::kMinimizer, 2},
                          {"x2", 1, Player::kMaximizer, 3}});
  EXPECT_EQ(l.total_dim(), 16u);
  EXPECT_EQ(l.player_dim(Player::kMaximizer), 4u);
  EXPECT_EQ(l.grouped_order(), (std::vector<std::size_t>{0, 2, 1}));
}

TEST(MatrixJson, RoundTrip) {
  const auto m = random_matrix(3, 5);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  EXPECT_THROW(matrix_from_json(nlohmann::json{{"dim", 2}, {"entries", {{1, 0}}}}), InputError);
}
