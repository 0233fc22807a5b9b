#include "refgame/quantum/fiber_game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "barrier.h"
#include "refgame/linops/eigen.h"
#include "refgame/linops/fiber.h"
#include "refgame/linops/tensor.h"

namespace refgame::quantum {
namespace {

using linops::Complex;
using linops::Vector;

// Observable and marginal restricted to the support of rho1.
struct Reduced {
  ComplexMatrix grouped;
  ComplexMatrix rho1;
  std::size_t rank = 0;
  bool full = true;
};

Reduced reduce_to_support(const ComplexMatrix& grouped, const ComplexMatrix& rho1,
                          std::size_t block, double support_tol) {
  const std::size_t d1 = rho1.dim();
  const auto eig = linops::hermitian_eigen(rho1);
  const double cut = support_tol * std::max(eig.values.back(), 0.0);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < d1; ++j) {
    if (eig.values[j] > cut) keep.push_back(j);
  }
  Reduced out;
  out.rank = keep.size();
  if (out.rank == d1) {
    out.grouped = grouped;
    out.rho1 = rho1;
    return out;
  }
  out.full = false;
  const std::size_t r = out.rank;
  const std::size_t m = block;
  std::vector<Vector> v;
  for (std::size_t j : keep) v.push_back(eig.column(j));
  // T = (V^dagger (x) I) Rg, shape (r m) x (d1 m).
  std::vector<Complex> t(r * m * d1 * m);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t x = 0; x < d1; ++x) {
      const Complex w = std::conj(v[i][x]);
      if (w == 0.0) continue;
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t col = 0; col < d1 * m; ++col) {
          t[(i * m + p) * d1 * m + col] += w * grouped(x * m + p, col);
        }
      }
    }
  }
  out.grouped = ComplexMatrix(r * m);
  for (std::size_t row = 0; row < r * m; ++row) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t x = 0; x < d1; ++x) {
        const Complex w = v[j][x];
        if (w == 0.0) continue;
        for (std::size_t q = 0; q < m; ++q) {
          out.grouped(row, j * m + q) += t[row * d1 * m + x * m + q] * w;
        }
      }
    }
  }
  out.grouped = out.grouped.hermitian_part();
  std::vector<double> diag;
  for (std::size_t j : keep) diag.push_back(eig.values[j]);
  out.rho1 = ComplexMatrix::diagonal(diag);
  return out;
}

struct Bounds {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool done(double tol) const { return upper - lower <= tol; }
};

detail::BarrierOptions barrier_options(const FiberOptions& o) {
  detail::BarrierOptions b;
  b.mu_start = o.mu_start;
  b.mu_factor = o.mu_factor;
  b.max_newton_steps = o.max_newton_steps;
  return b;
}

GameValueReport make_report(const Bounds& b, double value, long steps) {
  GameValueReport rep;
  rep.lower_cert = b.lower;
  rep.upper_cert = std::max(b.upper, b.lower);
  rep.value = std::clamp(value, rep.lower_cert, rep.upper_cert);
  rep.gap = rep.upper_cert - rep.lower_cert;
  rep.iterations = steps;
  return rep;
}

}  // namespace

std::string_view to_string(FiberOrder o) {
  return o == FiberOrder::kMinThenMax ? "min-then-max" : "max-then-min";
}

FiberOrder fiber_order_from_string(std::string_view s) {
  if (s == "min-then-max") return FiberOrder::kMinThenMax;
  if (s == "max-then-min") return FiberOrder::kMaxThenMin;
  throw InputError("unknown fiber order: " + std::string(s));
}

FiberGame::FiberGame(const Observable& r, const RegisterLayout& layout)
    : FiberGame(QuantumGame(r, layout)) {}

FiberGame::FiberGame(const QuantumGame& game) : grouped_(game.grouped()) {
  const auto max_regs = game.layout().owned_by(Player::kMaximizer);
  first_dim_ = game.layout().registers()[max_regs.front()].dim();
  ext_dim_ = game.max_dim() / first_dim_;
  min_dim_ = game.min_dim();
}

FiberGame::Solution FiberGame::solve(const ComplexMatrix& rho1, FiberOrder order, double tol,
                                     const FiberOptions& opts) const {
  if (rho1.dim() != first_dim_) {
    throw InputError("rho1 dimension does not match the maximizer's first register");
  }
  if (!(tol > 0.0)) throw InputError("tol must be positive");
  const std::size_t d2 = ext_dim_;
  const std::size_t db = min_dim_;
  const Reduced red = reduce_to_support(grouped_, rho1, d2 * db, opts.support_tolerance);
  const std::size_t r = red.rank;
  const std::size_t n2 = r * d2;
  const std::vector<std::size_t> fiber_dims{r, d2};
  const ComplexMatrix id2 = ComplexMatrix::identity(d2);
  const ComplexMatrix rho0 = linops::tensor(red.rho1, (1.0 / static_cast<double>(d2)) * id2);
  const auto fbasis = detail::hermitian_basis(r);

  Solution sol;
  Bounds bounds;
  detail::BarrierProblem prob;
  std::vector<double> x0;

  if (order == FiberOrder::kMaxThenMin) {
    const auto gbasis = detail::traceless_hermitian_basis(d2);
    const std::size_t k_count = fbasis.size() * gbasis.size();
    const std::size_t t_index = k_count;
    prob.cost.assign(k_count + 1, 0.0);
    prob.cost[t_index] = -1.0;
    detail::LmiBlock state{rho0, {}};
    const ComplexMatrix eb0 = contract_for_min(red.grouped, n2, db, rho0);
    detail::LmiBlock slack{eb0, {}};
    std::size_t k = 0;
    for (const auto& f : fbasis) {
      for (const auto& g : gbasis) {
        ComplexMatrix dk = linops::tensor(f, g);
        slack.terms.emplace_back(k, contract_for_min(red.grouped, n2, db, dk));
        state.terms.emplace_back(k, std::move(dk));
        ++k;
      }
    }
    slack.terms.emplace_back(t_index, -1.0 * ComplexMatrix::identity(db));
    prob.blocks = {std::move(state), std::move(slack)};
    x0.assign(k_count + 1, 0.0);
    x0[t_index] = linops::min_eigenvalue(eb0) - 1.0;

    auto stage = [&](const detail::BarrierPoint& pt) {
      const ComplexMatrix& rho2 = pt.blocks[0];
      bounds.lower = std::max(
          bounds.lower, linops::min_eigenvalue(contract_for_min(red.grouped, n2, db, rho2)));
      ComplexMatrix sigma = pt.inverses[1];
      sigma *= 1.0 / sigma.trace().real();
      const ComplexMatrix ea = contract_for_max(red.grouped, n2, db, sigma);
      ComplexMatrix stationary = ea;
      stationary.axpy(pt.mu, pt.inverses[0]);
      ComplexMatrix y = linops::partial_trace(stationary, fiber_dims, {1});
      y *= 1.0 / static_cast<double>(d2);
      const double shift = linops::max_eigenvalue(ea - linops::tensor(y, id2));
      y += shift * ComplexMatrix::identity(r);
      const double upper = linops::trace_product(y, red.rho1);
      if (upper < bounds.upper) bounds.upper = upper;
      if (red.full) {
        sol.dual = y.hermitian_part();
        sol.has_dual = true;
      }
      return bounds.done(tol);
    };
    const auto res = detail::barrier_solve(prob, x0, barrier_options(opts), stage);
    sol.report = make_report(bounds, bounds.lower, res.newton_steps);
    if (!res.stopped) {
      throw SolverConvergenceError("max-then-min fiber solve did not reach tol", sol.report);
    }
    return sol;
  }

  // min-then-max over (Y, sigma).
  const auto sbasis = detail::traceless_hermitian_basis(db);
  const std::size_t ny = fbasis.size();
  prob.cost.assign(ny + sbasis.size(), 0.0);
  for (std::size_t a = 0; a < ny; ++a) prob.cost[a] = linops::trace_product(fbasis[a], red.rho1);
  const ComplexMatrix sigma0 = (1.0 / static_cast<double>(db)) * ComplexMatrix::identity(db);
  const ComplexMatrix ea0 = contract_for_max(red.grouped, n2, db, sigma0);
  detail::LmiBlock slack{-1.0 * ea0, {}};
  detail::LmiBlock strategy{sigma0, {}};
  for (std::size_t a = 0; a < ny; ++a) slack.terms.emplace_back(a, linops::tensor(fbasis[a], id2));
  for (std::size_t j = 0; j < sbasis.size(); ++j) {
    slack.terms.emplace_back(ny + j, -1.0 * contract_for_max(red.grouped, n2, db, sbasis[j]));
    strategy.terms.emplace_back(ny + j, sbasis[j]);
  }
  prob.blocks = {std::move(slack), std::move(strategy)};
  x0.assign(prob.cost.size(), 0.0);
  x0[0] = (linops::max_eigenvalue(ea0) + 1.0) * std::sqrt(static_cast<double>(r));

  const auto rho0_eig = linops::hermitian_eigen(rho0);
  const ComplexMatrix rho0_isqrt =
      linops::apply_spectral(rho0_eig, [](double v) { return 1.0 / std::sqrt(v); });

  auto stage = [&](const detail::BarrierPoint& pt) {
    const ComplexMatrix& sigma = pt.blocks[1];
    ComplexMatrix y(r);
    for (std::size_t a = 0; a < ny; ++a) y.axpy(pt.x[a], fbasis[a]);
    const ComplexMatrix ea = contract_for_max(red.grouped, n2, db, sigma);
    const double excess = linops::max_eigenvalue(ea - linops::tensor(y, id2));
    const double upper = linops::trace_product(y, red.rho1) + std::max(0.0, excess);
    bounds.upper = std::min(bounds.upper, upper);

    ComplexMatrix guess = pt.inverses[0];
    guess *= pt.mu;
    ComplexMatrix x = linops::project_fiber_affine(guess, red.rho1, fiber_dims, 1);
    const double ell = linops::min_eigenvalue(rho0_isqrt * x * rho0_isqrt);
    if (ell < 0.0) {
      const double theta = std::min(1.0, -ell / (1.0 - ell) * (1.0 + 1e-12));
      x *= 1.0 - theta;
      x.axpy(theta, rho0);
    }
    const double lower = linops::min_eigenvalue(contract_for_min(red.grouped, n2, db, x));
    bounds.lower = std::max(bounds.lower, lower);
    return bounds.done(tol);
  };
  const auto res = detail::barrier_solve(prob, x0, barrier_options(opts), stage);
  sol.report = make_report(bounds, bounds.upper, res.newton_steps);
  if (!res.stopped) {
    throw SolverConvergenceError("min-then-max fiber solve did not reach tol", sol.report);
  }
  return sol;
}

GameValueReport value2_fiber(const Observable& r, const RegisterLayout& layout,
                             const DensityMatrix& rho1, FiberOrder order, double tol,
                             const FiberOptions& opts) {
  return FiberGame(r, layout).solve(rho1.mat(), order, tol, opts).report;
}

double sion_gap(const Observable& r, const RegisterLayout& layout, const DensityMatrix& rho1,
                double tol, const FiberOptions& opts) {
  const FiberGame game(r, layout);
  const double a = game.solve(rho1.mat(), FiberOrder::kMinThenMax, tol, opts).report.value;
  const double b = game.solve(rho1.mat(), FiberOrder::kMaxThenMin, tol, opts).report.value;
  return std::abs(a - b);
}

}  // namespace refgame::quantum
