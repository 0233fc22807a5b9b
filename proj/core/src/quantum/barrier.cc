#include "barrier.h"

#include <cmath>
#include <optional>

#include "refgame/common.h"
#include "refgame/linops/eigen.h"
#include "refgame/linops/real_solve.h"

namespace refgame::quantum::detail {
namespace {

using linops::Complex;
using linops::RealMatrix;

struct Evaluation {
  std::vector<ComplexMatrix> blocks;
  std::vector<ComplexMatrix> inverses;
  double phi = 0.0;
};

std::optional<Evaluation> evaluate(const BarrierProblem& p, const std::vector<double>& x,
                                   double mu) {
  Evaluation ev;
  double phi = 0.0;
  for (std::size_t u = 0; u < x.size(); ++u) phi += p.cost[u] * x[u];
  phi /= mu;
  for (const LmiBlock& b : p.blocks) {
    ComplexMatrix m = b.at(x);
    auto inv = linops::hpd_inverse(m);
    if (!inv) return std::nullopt;
    phi -= inv->log_det;
    ev.blocks.push_back(std::move(m));
    ev.inverses.push_back(std::move(inv->inverse));
  }
  ev.phi = phi;
  return ev;
}

// tr(A B) for square A, B of equal size.
double trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return linops::trace_product(a, b);
}

}  // namespace

ComplexMatrix LmiBlock::at(const std::vector<double>& x) const {
  ComplexMatrix m = constant;
  for (const auto& [u, a] : terms) {
    if (x[u] != 0.0) m.axpy(x[u], a);
  }
  return m;
}

BarrierResult barrier_solve(const BarrierProblem& problem, std::vector<double> x0,
                            const BarrierOptions& opts,
                            const std::function<bool(const BarrierPoint&)>& stage_done) {
  const std::size_t n = x0.size();
  BarrierResult result;
  double mu = opts.mu_start;
  auto ev = evaluate(problem, x0, mu);
  if (!ev) throw InputError("barrier_solve: starting point is not strictly feasible");
  std::vector<double> x = std::move(x0);

  while (true) {
    for (int step = 0; step < opts.max_centering_steps; ++step) {
      if (result.newton_steps >= opts.max_newton_steps) break;
      // Gradient and Hessian of phi at x.
      std::vector<double> grad(n);
      for (std::size_t u = 0; u < n; ++u) grad[u] = problem.cost[u] / mu;
      RealMatrix hess(n);
      for (std::size_t j = 0; j < problem.blocks.size(); ++j) {
        const LmiBlock& blk = problem.blocks[j];
        const ComplexMatrix& inv = ev->inverses[j];
        std::vector<ComplexMatrix> prods;
        prods.reserve(blk.terms.size());
        for (const auto& [u, a] : blk.terms) {
          prods.push_back(inv * a);
          grad[u] -= prods.back().trace().real();
        }
        for (std::size_t p = 0; p < blk.terms.size(); ++p) {
          for (std::size_t q = p; q < blk.terms.size(); ++q) {
            const double h = trace_of_product(prods[p], prods[q]);
            const std::size_t u = blk.terms[p].first;
            const std::size_t v = blk.terms[q].first;
            hess(u, v) += h;
            if (u != v) {
              hess(v, u) += h;
            } else if (p != q) {
              hess(u, u) += h;
            }
          }
        }
      }
      std::vector<double> rhs(n);
      for (std::size_t u = 0; u < n; ++u) rhs[u] = -grad[u];
      auto delta = linops::solve_spd(hess, rhs);
      if (!delta) delta = linops::solve_general(hess, rhs);
      if (!delta) break;
      double decrement = 0.0;
      for (std::size_t u = 0; u < n; ++u) decrement -= grad[u] * (*delta)[u];
      if (!(decrement > 0.0) || decrement * 0.5 <= opts.centering_tolerance) break;

      double alpha = 1.0 / (1.0 + std::sqrt(decrement));
      if (decrement < 0.25) alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        std::vector<double> trial(x);
        for (std::size_t u = 0; u < n; ++u) trial[u] += alpha * (*delta)[u];
        auto tev = evaluate(problem, trial, mu);
        if (!tev) continue;
        if (tev->phi <= ev->phi - 0.25 * alpha * decrement ||
            (alpha < 1e-6 && tev->phi <= ev->phi)) {
          x = std::move(trial);
          ev = std::move(tev);
          moved = true;
          break;
        }
      }
      ++result.newton_steps;
      if (!moved) break;
    }

    result.point.x = x;
    result.point.mu = mu;
    result.point.blocks = ev->blocks;
    result.point.inverses = ev->inverses;
    if (stage_done(result.point)) {
      result.stopped = true;
      return result;
    }
    if (result.newton_steps >= opts.max_newton_steps || mu * opts.mu_factor < opts.mu_floor) {
      return result;
    }
    mu *= opts.mu_factor;
    ev = evaluate(problem, x, mu);
  }
}

std::vector<ComplexMatrix> traceless_hermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> out;
  const double r2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      ComplexMatrix sym(d);
      sym(i, j) = r2;
      sym(j, i) = r2;
      out.push_back(std::move(sym));
      ComplexMatrix anti(d);
      anti(i, j) = Complex(0.0, -r2);
      anti(j, i) = Complex(0.0, r2);
      out.push_back(std::move(anti));
    }
  }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix diag(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t i = 0; i < l; ++i) diag(i, i) = scale;
    diag(l, l) = -static_cast<double>(l) * scale;
    out.push_back(std::move(diag));
  }
  return out;
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
  std::vector<ComplexMatrix> out;
  out.push_back((1.0 / std::sqrt(static_cast<double>(d))) * ComplexMatrix::identity(d));
  for (auto& m : traceless_hermitian_basis(d)) out.push_back(std::move(m));
  return out;
}

}  // namespace refgame::quantum::detail
