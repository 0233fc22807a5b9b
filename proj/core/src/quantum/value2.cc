#include "refgame/quantum/value2.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "refgame/linops/eigen.h"

namespace refgame::quantum {
namespace {

struct Tracker {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  void offer_upper(double v) { upper = std::min(upper, v); }
  void offer_lower(double v) { lower = std::max(lower, v); }

  GameValueReport report(long iterations) const {
    GameValueReport r;
    r.lower_cert = lower;
    r.upper_cert = std::max(upper, lower);
    r.value = 0.5 * (r.lower_cert + r.upper_cert);
    r.gap = r.upper_cert - r.lower_cert;
    r.iterations = iterations;
    return r;
  }
};

void check_tol(double tol) {
  if (!(tol > 0.0 && tol <= 0.1)) throw InputError("tol must lie in (0, 0.1]");
}

GameValueReport optimistic(const ComplexMatrix& g, std::size_t da, std::size_t db, double tol,
                           const Value2Options& opts) {
  Tracker tr;
  ComplexMatrix rho = (1.0 / static_cast<double>(da)) * ComplexMatrix::identity(da);
  ComplexMatrix sigma = (1.0 / static_cast<double>(db)) * ComplexMatrix::identity(db);
  ComplexMatrix sum_a(da);
  ComplexMatrix sum_b(db);
  for (long t = 1; t <= opts.max_iterations; ++t) {
    const ComplexMatrix grad_a = contract_for_max(g, da, db, sigma);
    const ComplexMatrix grad_b = contract_for_min(g, da, db, rho);
    sum_a += grad_a;
    sum_b += grad_b;
    const double inv_t = 1.0 / static_cast<double>(t);
    tr.offer_upper(linops::max_eigenvalue(grad_a));
    tr.offer_lower(linops::min_eigenvalue(grad_b));
    tr.offer_upper(inv_t * linops::max_eigenvalue(sum_a));
    tr.offer_lower(inv_t * linops::min_eigenvalue(sum_b));
    if (tr.upper - tr.lower <= tol) return tr.report(t);

    ComplexMatrix pred_a = sum_a + grad_a;
    pred_a *= opts.step;
    ComplexMatrix pred_b = sum_b + grad_b;
    pred_b *= -opts.step;
    rho = linops::gibbs_state(pred_a);
    sigma = linops::gibbs_state(pred_b);
  }
  throw SolverConvergenceError("value2 reached the iteration cap",
                               tr.report(opts.max_iterations));
}

GameValueReport best_response_scheme(const ComplexMatrix& g, std::size_t da, std::size_t db,
                                     double tol, const Value2Options& opts) {
  Tracker tr;
  const double log_d = std::log(static_cast<double>(db));
  ComplexMatrix sum_b(db);       // accumulated E_B of maximizer responses
  ComplexMatrix sum_sigma(db);   // for the averaged minimizer state
  ComplexMatrix sum_rho(da);
  for (long t = 1; t <= opts.max_iterations; ++t) {
    const double eta = std::min(0.5, std::sqrt(log_d / static_cast<double>(t)));
    ComplexMatrix scaled = sum_b;
    scaled *= -eta;
    const ComplexMatrix sigma = linops::gibbs_state(scaled);
    sum_sigma += sigma;
    const ComplexMatrix ea = contract_for_max(g, da, db, sigma);
    const linops::EigenPair resp = linops::top_eigpair(ea);
    tr.offer_upper(resp.value);
    const ComplexMatrix rho = ComplexMatrix::outer(resp.vector);
    sum_rho += rho;
    sum_b += contract_for_min(g, da, db, rho);

    const double inv_t = 1.0 / static_cast<double>(t);
    ComplexMatrix avg_sigma = sum_sigma;
    avg_sigma *= inv_t;
    tr.offer_upper(linops::max_eigenvalue(contract_for_max(g, da, db, avg_sigma)));
    tr.offer_lower(inv_t * linops::min_eigenvalue(sum_b));
    if (tr.upper - tr.lower <= tol) return tr.report(t);
  }
  throw SolverConvergenceError("value2 reached the iteration cap",
                               tr.report(opts.max_iterations));
}

}  // namespace

std::string_view to_string(Value2Scheme s) {
  return s == Value2Scheme::kOptimistic ? "optimistic" : "best-response";
}

Value2Scheme value2_scheme_from_string(std::string_view s) {
  if (s == "optimistic") return Value2Scheme::kOptimistic;
  if (s == "best-response") return Value2Scheme::kBestResponse;
  throw InputError("unknown value2 scheme: " + std::string(s));
}

GameValueReport solve_bilinear(const ComplexMatrix& grouped, std::size_t dim_a, std::size_t dim_b,
                               double tol, const Value2Options& opts) {
  check_tol(tol);
  if (grouped.dim() != dim_a * dim_b) throw InputError("solve_bilinear: dimension mismatch");
  if (opts.max_iterations < 1) throw InputError("max_iterations must be >= 1");
  if (opts.scheme == Value2Scheme::kOptimistic) {
    if (!(opts.step > 0.0)) throw InputError("step must be positive");
    return optimistic(grouped, dim_a, dim_b, tol, opts);
  }
  return best_response_scheme(grouped, dim_a, dim_b, tol, opts);
}

GameValueReport value2(const QuantumGame& game, double tol, const Value2Options& opts) {
  if (game.turns() != 2) throw InputError("value2 needs a two-turn game");
  return solve_bilinear(game.grouped(), game.max_dim(), game.min_dim(), tol, opts);
}

}  // namespace refgame::quantum
