#include "refgame/quantum/value3.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "refgame/linops/eigen.h"

namespace refgame::quantum {
namespace {

using Bloch = std::array<double, 3>;

double radius(const Bloch& r) { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }

Bloch clip_to_ball(Bloch r) {
  const double n = radius(r);
  if (n > 1.0) {
    for (double& c : r) c /= n;
  }
  return r;
}

std::vector<Bloch> bloch_grid(int radii, int directions) {
  std::vector<Bloch> pts{{0.0, 0.0, 0.0}};
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 1; k <= radii; ++k) {
    const double rad = static_cast<double>(k) / radii;
    for (int i = 0; i < directions; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / directions;
      const double ring = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      pts.push_back({rad * ring * std::cos(phi), rad * ring * std::sin(phi), rad * z});
    }
  }
  return pts;
}

// The 26 neighbours of the origin in {-1, 0, 1}^3.
const std::vector<Bloch>& pattern_directions() {
  static const std::vector<Bloch> dirs = [] {
    std::vector<Bloch> out;
    for (int a = -1; a <= 1; ++a) {
      for (int b = -1; b <= 1; ++b) {
        for (int c = -1; c <= 1; ++c) {
          if (a != 0 || b != 0 || c != 0) out.push_back({double(a), double(b), double(c)});
        }
      }
    }
    return out;
  }();
  return dirs;
}

class Search {
 public:
  Search(const FiberGame& game, const FiberOptions& opts) : game_(game), opts_(opts) {}

  double eval(const Bloch& r, double tol) {
    const auto sol = game_.solve(bloch_density(r), FiberOrder::kMaxThenMin, tol, opts_);
    ++evaluations;
    iterations += sol.report.iterations;
    if (sol.has_dual) upper = std::min(upper, linops::max_eigenvalue(sol.dual));
    if (sol.report.value > best_value) {
      best_value = sol.report.value;
      best = r;
    }
    return sol.report.value;
  }

  Bloch best{};
  double best_value = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  long iterations = 0;

 private:
  const FiberGame& game_;
  const FiberOptions& opts_;
};

}  // namespace

ComplexMatrix bloch_density(const Bloch& r) {
  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + r[2]);
  m(1, 1) = 0.5 * (1.0 - r[2]);
  m(0, 1) = linops::Complex(0.5 * r[0], -0.5 * r[1]);
  m(1, 0) = linops::Complex(0.5 * r[0], 0.5 * r[1]);
  return m;
}

Value3Report value3(const QuantumGame& game, double tol, const Value3Options& opts) {
  if (game.turns() != 3) throw InputError("value3 needs a three-turn game");
  if (game.layout().registers().front().qubits != 1) {
    throw InputError("value3 needs a one-qubit first maximizer register");
  }
  if (!(tol > 0.0 && tol <= 0.1)) throw InputError("tol must lie in (0, 0.1]");
  if (opts.grid_radii < 1 || opts.grid_directions < 1) throw InputError("grid must be non-empty");

  const FiberGame fiber(game);
  Search search(fiber, opts.fiber);
  const double coarse = std::max(tol, opts.grid_tol);
  for (const Bloch& p : bloch_grid(opts.grid_radii, opts.grid_directions)) search.eval(p, coarse);

  if (!opts.grid_only) {
    Bloch cur = search.best;
    double cur_val = search.eval(cur, tol);
    double step = opts.refine_step;
    for (int round = 0; round < opts.refine_rounds; ++round, step *= 0.5) {
      for (int move = 0; move < opts.max_moves_per_round; ++move) {
        Bloch next = cur;
        double next_val = cur_val;
        for (const Bloch& dir : pattern_directions()) {
          Bloch cand = cur;
          for (int axis = 0; axis < 3; ++axis) cand[axis] += step * dir[axis];
          cand = clip_to_ball(cand);
          const double v = search.eval(cand, tol);
          if (v > next_val) {
            next_val = v;
            next = cand;
          }
        }
        if (next_val <= cur_val) break;
        cur = next;
        cur_val = next_val;
      }
    }
  }

  Value3Report out;
  GameValueReport& rep = out.report;
  rep.value = search.best_value;
  rep.lower_cert = search.best_value;
  rep.upper_cert = std::max(search.upper, search.best_value);
  rep.gap = rep.upper_cert - rep.lower_cert;
  rep.iterations = search.iterations;
  out.bloch = search.best;
  out.evaluations = search.evaluations;
  return out;
}

double collapse_gap(const Observable& r, const RegisterLayout& layout, double tol,
                    const Value3Options& v3, const Value2Options& v2) {
  const QuantumGame game(r, layout);
  const double three = value3(game, tol, v3).report.value;
  const double two = value2(merge_player_registers(game), tol, v2).value;
  return std::abs(three - two);
}

}  // namespace refgame::quantum
