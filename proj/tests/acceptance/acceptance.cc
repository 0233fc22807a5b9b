// One PASS/FAIL line per acceptance criterion: acceptance --criterion N
#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "cli/experiments.h"
#include "refgame/dist/bounds.h"
#include "refgame/dist/dist_game.h"
#include "refgame/dist/sparsify.h"
#include "refgame/dist/values.h"
#include "refgame/linops/states.h"
#include "refgame/protocol/protocol.h"
#include "refgame/quantum/game.h"
#include "refgame/quantum/value2.h"

using namespace refgame;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr double kTol = 1e-4;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

cli::ExperimentResult experiment(const std::string& name, int count = 0) {
  cli::ExperimentConfig cfg;
  cfg.command = name;
  cfg.seed = kSeed;
  cfg.count = count;
  cfg.tol = kTol;
  return cli::run_experiment(cfg);
}

Verdict max_gap(const std::string& name, int count) {
  const auto r = experiment(name, count);
  return {cli::exit_code(r) == cli::kExitOk && static_cast<int>(r.rows.size()) == count,
          std::to_string(r.rows.size()) + " instances, max gap " + fmt("%.3g", r.summary.value) +
              (r.converged ? "" : ", some solves hit their cap")};
}

Verdict complement_symmetry() {
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t seed = linops::mix_seed(kSeed, static_cast<std::uint64_t>(i));
    const quantum::QuantumGame g(linops::random_observable(4, seed), quantum::two_turn_layout(1, 1));
    const double v = quantum::value2(g, kTol).value;
    const double vc = quantum::value2(quantum::complement_game(g), kTol).value;
    worst = std::max(worst, std::abs(vc - (1.0 - v)));
  }
  return {worst <= 2e-4, "50 instances, max |v(I-R) - (1 - v(R))| " + fmt("%.3g", worst)};
}

Verdict half_diagonal() {
  const std::vector<double> d{0.5, 0.0, 0.0, 0.5};
  const quantum::QuantumGame g(linops::Observable(linops::ComplexMatrix::diagonal(d)),
                               quantum::two_turn_layout(1, 1));
  const double v = quantum::value2(g, kTol).value;
  // Diagonal reduction: maximizer weight p on |0>, minimizer answers with the
  // smaller of p/2 and (1-p)/2.
  double grid = 0.0;
  for (int s = 0; s <= 200; ++s) {
    const double p = s / 200.0;
    grid = std::max(grid, std::min(0.5 * p, 0.5 * (1 - p)));
  }
  return {std::abs(v - 0.25) <= 1e-3 && std::abs(grid - 0.25) <= 1e-12,
          "value " + fmt("%.6f", v) + ", grid oracle " + fmt("%.6f", grid)};
}

Verdict protocol_bounds() {
  cli::ExperimentConfig cfg;
  cfg.command = "protocol-bounds";
  cfg.seed = kSeed;
  cfg.m = {1};
  cfg.k = {1, 2, 3, 4};
  cfg.i = 2;
  cfg.count = 20;
  const auto r = cli::run_experiment(cfg);
  const auto b = protocol::simulation_bounds({2.0 / 3.0, 1.0 / 3.0}, 3);
  const bool exact = std::abs(b.completeness - 7.0 / 12.0) <= 1e-15 &&
                     std::abs(b.soundness - 5.0 / 12.0) <= 1e-15;
  return {cli::exit_code(r) == cli::kExitOk && r.rows.size() == 80 && exact,
          std::to_string(r.rows.size()) + " sweeps, " + fmt("%.0f", r.summary.value) +
              " violations, k=3 pair (" + fmt("%.12f", b.completeness) + ", " +
              fmt("%.12f", b.soundness) + ")"};
}

// Same seeds as the sparsify-k* experiments.
Verdict sparsify(int rounds, int m, int games, int trials, double threshold) {
  int passed = 0;
  int total = 0;
  bool monotone = true;
  for (int g = 0; g < games; ++g) {
    const std::uint64_t seed = linops::mix_seed(kSeed, static_cast<std::uint64_t>(g));
    const auto game = dist::random_dist_game(m, rounds, seed);
    const std::uint64_t trial_seed = linops::mix_seed(seed, 1);
    const auto st = rounds == 2 ? dist::sparsification_check_k2(game, 0.25, trials, trial_seed)
                                : dist::sparsification_check_k3(game, 0.25, trials, trial_seed);
    for (const auto& tr : st.trials) {
      passed += tr.passed ? 1 : 0;
      monotone = monotone && tr.monotone;
      ++total;
    }
  }
  const double frac = static_cast<double>(passed) / total;
  return {frac >= threshold && monotone,
          std::to_string(total) + " trials, pass fraction " + fmt("%.4f", frac) +
              (monotone ? ", restriction monotone in all" : ", restriction monotonicity violated")};
}

Verdict counting_bounds() {
  int holds = 0;
  int total = 0;
  std::string failing;
  for (int m = 5; m <= 8; ++m) {
    for (int k = 2; k <= 3; ++k) {
      const auto cb = dist::counting_bound_check(m, k, 0.25);
      ++total;
      if (cb.holds) {
        ++holds;
      } else {
        failing += " (" + std::to_string(m) + "," + std::to_string(k) + ")=" + fmt("%.2f", cb.lhs_log);
      }
    }
  }
  return {holds == total, std::to_string(holds) + "/" + std::to_string(total) + " hold" +
                              (failing.empty() ? "" : "; log lhs >= 0 at" + failing)};
}

Verdict matching() {
  const auto g = dist::matching_game(1);
  const double v = dist::value_k2(g);
  const double pure = dist::best_pure_first_move(g);
  return {v == 0.5 && pure == 0.0, "value " + fmt("%.17g", v) + ", best pure first move " + fmt("%g", pure)};
}

Verdict determinism() {
  const std::vector<std::pair<std::string, int>> runs{{"collapse", 2},        {"sion", 4},
                                                      {"protocol-bounds", 2}, {"sparsify-k2", 3},
                                                      {"sparsify-k3", 2},     {"counting-bounds", 0}};
  std::string bad;
  for (const auto& [name, count] : runs) {
    cli::ExperimentConfig cfg;
    cfg.command = name;
    cfg.seed = kSeed;
    cfg.count = count;
    cfg.trials = 5;
    const std::string a = cli::to_csv(cli::run_experiment(cfg));
    const std::string b = cli::to_csv(cli::run_experiment(cfg));
    cfg.jobs = 3;
    const std::string c = cli::to_csv(cli::run_experiment(cfg));
    if (a != b || a != c) bad += " " + name;
  }
  return {bad.empty(), bad.empty() ? std::to_string(runs.size()) + " experiments byte-identical across reruns and --jobs"
                                   : "differs:" + bad};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  int n = 0;
  app.add_option("--criterion", n, "Criterion number 1..10")->required()->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"collapse suite", [] { return max_gap("collapse", 100); }},
      {"sion suite", [] { return max_gap("sion", 50); }},
      {"complement symmetry", complement_symmetry},
      {"closed-form 0.25 game", half_diagonal},
      {"protocol bounds", protocol_bounds},
      {"sparsification k=2", [] { return sparsify(2, 2, 20, 10, 0.99); }},
      {"sparsification k=3", [] { return sparsify(3, 1, 10, 10, 0.95); }},
      {"counting inequality", counting_bounds},
      {"matching-game mixed advantage", matching},
      {"determinism", determinism},
  };
  const auto& [name, check] = criteria[static_cast<std::size_t>(n - 1)];
  Verdict v{false, ""};
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("error: ") + e.what()};
  }
  std::cout << "criterion " << n << " (" << name << "): " << (v.pass ? "PASS" : "FAIL") << ": "
            << v.detail << std::endl;
  return v.pass ? 0 : 1;
}
