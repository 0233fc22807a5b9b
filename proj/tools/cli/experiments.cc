#include "cli/experiments.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "refgame/common.h"
#include "refgame/dist/bounds.h"
#include "refgame/dist/sparsify.h"
#include "refgame/linops/states.h"
#include "refgame/protocol/protocol.h"
#include "refgame/quantum/fiber_game.h"
#include "refgame/quantum/value3.h"

namespace refgame::cli {
namespace {

struct Batch {
  std::vector<CsvRow> rows;
  bool converged = true;
};

// Runs task(0..n-1) on `jobs` threads; results are kept in index order.
std::vector<Batch> parallel_map(int n, int jobs, const std::function<Batch(int)>& task) {
  std::vector<Batch> out(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[static_cast<std::size_t>(i)] = task(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, std::max(1, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

ExperimentResult collect(std::vector<Batch> batches) {
  ExperimentResult r;
  for (auto& b : batches) {
    r.converged = r.converged && b.converged;
    for (auto& row : b.rows) r.rows.push_back(std::move(row));
  }
  return r;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string indexed(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04d", prefix, i);
  return buf;
}

void max_gap_summary(ExperimentResult& r, const char* quantity, double threshold,
                     std::uint64_t seed) {
  double worst = 0.0;
  bool ok = r.converged;
  for (const auto& row : r.rows) {
    worst = std::max(worst, row.value);
    ok = ok && row.pass;
  }
  r.summary = {"summary", seed, quantity, worst, threshold, ok && worst <= threshold};
}

void fraction_summary(ExperimentResult& r, double threshold, std::uint64_t seed) {
  std::size_t passed = 0;
  for (const auto& row : r.rows) passed += row.pass ? 1 : 0;
  const double frac =
      r.rows.empty() ? 0.0 : static_cast<double>(passed) / static_cast<double>(r.rows.size());
  r.summary = {"summary", seed, "pass_fraction", frac, threshold, r.converged && frac >= threshold};
}

int count_or(const ExperimentConfig& c, int fallback) { return c.count > 0 ? c.count : fallback; }
std::vector<int> list_or(const std::vector<int>& v, std::vector<int> fallback) {
  return v.empty() ? fallback : v;
}

constexpr double kGapThreshold = 1e-3;

ExperimentResult collapse(const ExperimentConfig& c) {
  if (c.qubits.size() != 3) throw InputError("collapse needs --qubits a,b,c");
  const auto layout = quantum::three_turn_layout(c.qubits[0], c.qubits[1], c.qubits[2]);
  auto r = collect(parallel_map(count_or(c, 100), c.jobs, [&](int i) {
    const std::uint64_t seed = linops::mix_seed(c.seed, static_cast<std::uint64_t>(i));
    Batch b;
    CsvRow row{indexed("q", i), seed, "collapse_gap", 0.0, kGapThreshold, false};
    try {
      row.value = quantum::collapse_gap(linops::random_observable(layout.total_dim(), seed), layout,
                                        c.tol);
      row.pass = row.value <= kGapThreshold;
    } catch (const ConvergenceError& e) {
      row.value = e.residual();
      b.converged = false;
    }
    b.rows.push_back(row);
    return b;
  }));
  max_gap_summary(r, "max_collapse_gap", kGapThreshold, c.seed);
  return r;
}

ExperimentResult sion(const ExperimentConfig& c) {
  if (c.qubits.size() != 3) throw InputError("sion needs --qubits a,b,c");
  const auto layout = quantum::three_turn_layout(c.qubits[0], c.qubits[1], c.qubits[2]);
  const std::size_t d1 = layout.registers().front().dim();
  auto r = collect(parallel_map(count_or(c, 50), c.jobs, [&](int i) {
    const std::uint64_t seed = linops::mix_seed(c.seed, static_cast<std::uint64_t>(i));
    Batch b;
    CsvRow row{indexed("q", i), seed, "sion_gap", 0.0, kGapThreshold, false};
    try {
      linops::Rng rng(seed);
      const auto obs = linops::random_observable(layout.total_dim(), rng);
      const auto rho1 = linops::random_density(d1, rng);
      row.value = quantum::sion_gap(obs, layout, rho1, c.tol);
      row.pass = row.value <= kGapThreshold;
    } catch (const ConvergenceError& e) {
      row.value = e.residual();
      b.converged = false;
    }
    b.rows.push_back(row);
    return b;
  }));
  max_gap_summary(r, "max_sion_gap", kGapThreshold, c.seed);
  return r;
}

ExperimentResult protocol_bounds(const ExperimentConfig& c) {
  const auto ms = list_or(c.m, {1});
  const auto ks = list_or(c.k, {1, 2, 3, 4});
  const double grid = c.grid_res > 0.0 ? c.grid_res : 1.0 / 16.0;
  const int tables = count_or(c, 20);
  struct Job {
    int m, k, table;
  };
  std::vector<Job> jobs;
  for (int m : ms) {
    for (int k : ks) {
      for (int t = 0; t < tables; ++t) jobs.push_back({m, k, t});
    }
  }
  auto r = collect(parallel_map(static_cast<int>(jobs.size()), c.jobs, [&](int idx) {
    const Job& j = jobs[static_cast<std::size_t>(idx)];
    const std::uint64_t seed = linops::mix_seed(c.seed, static_cast<std::uint64_t>(j.table));
    const Player honest = j.table % 2 == 0 ? Player::kMaximizer : Player::kMinimizer;
    const auto inst = protocol::random_instance(j.m, c.i, j.k, PromiseGap{}, honest, seed);
    const auto sweep = protocol::bound_sweep(inst, grid);
    std::string id = "m" + std::to_string(j.m) + "_k" + std::to_string(j.k) + "_" +
                     indexed("t", j.table);
    Batch b;
    b.rows.push_back({id, seed, "worst_honest_win", sweep.worst_honest_win, sweep.bound,
                      !sweep.violated});
    return b;
  }));
  double violations = 0.0;
  for (const auto& row : r.rows) violations += row.pass ? 0.0 : 1.0;
  r.summary = {"summary", c.seed, "violations", violations, 0.0, violations == 0.0};
  return r;
}

ExperimentResult sparsify(const ExperimentConfig& c, int rounds) {
  const int m = list_or(c.m, {rounds == 2 ? 2 : 1}).front();
  const int games = count_or(c, rounds == 2 ? 20 : 10);
  if (c.trials < 1) throw InputError("trials must be >= 1");
  dist::K3Options k3;
  if (c.grid_res > 0.0) k3.grid_res = c.grid_res;
  auto r = collect(parallel_map(games, c.jobs, [&](int g) {
    const std::uint64_t seed = linops::mix_seed(c.seed, static_cast<std::uint64_t>(g));
    const auto game = dist::random_dist_game(m, rounds, seed);
    const std::uint64_t trial_seed = linops::mix_seed(seed, 1);
    const auto st = rounds == 2 ? dist::sparsification_check_k2(game, c.eps, c.trials, trial_seed)
                                : dist::sparsification_check_k3(game, c.eps, c.trials, trial_seed, k3);
    Batch b;
    const double threshold = st.value - (rounds == 2 ? 1.0 : 3.0) * c.eps;
    for (std::size_t t = 0; t < st.trials.size(); ++t) {
      const auto& tr = st.trials[t];
      b.rows.push_back({indexed("g", g) + "_" + indexed("t", static_cast<int>(t)), seed,
                        "restricted_value", tr.restricted, threshold, tr.passed && tr.monotone});
    }
    return b;
  }));
  fraction_summary(r, rounds == 2 ? 0.99 : 0.95, c.seed);
  return r;
}

ExperimentResult counting_bounds(const ExperimentConfig& c) {
  ExperimentResult r;
  for (int m : list_or(c.m, {5, 6, 7, 8})) {
    for (int k : list_or(c.k, {2, 3})) {
      const auto cb = dist::counting_bound_check(m, k, c.eps);
      r.rows.push_back({"m" + std::to_string(m) + "_k" + std::to_string(k), c.seed, "lhs_log",
                        cb.lhs_log, 0.0, cb.holds});
    }
  }
  fraction_summary(r, 1.0, c.seed);
  r.summary.quantity = "holds_fraction";
  return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (!(cfg.tol > 0.0 && cfg.tol <= 0.1)) throw InputError("--tol must lie in (0, 0.1]");
  if (cfg.count < 0) throw InputError("--count must be >= 1");
  if (cfg.command == "collapse") return collapse(cfg);
  if (cfg.command == "sion") return sion(cfg);
  if (cfg.command == "protocol-bounds") return protocol_bounds(cfg);
  if (cfg.command == "sparsify-k2") return sparsify(cfg, 2);
  if (cfg.command == "sparsify-k3") return sparsify(cfg, 3);
  if (cfg.command == "counting-bounds") return counting_bounds(cfg);
  throw InputError("unknown experiment: " + cfg.command);
}

std::string to_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  auto line = [&](const CsvRow& row) {
    os << row.id << ',' << row.seed << ',' << row.quantity << ',' << fmt(row.value) << ','
       << fmt(row.threshold) << ',' << (row.pass ? "true" : "false") << '\n';
  };
  for (const auto& row : r.rows) line(row);
  line(r.summary);
  return os.str();
}

int exit_code(const ExperimentResult& r) {
  if (!r.converged) return kExitConvergence;
  return r.summary.pass ? kExitOk : kExitThreshold;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw InputError("not an integer list: " + text);
    }
    if (used != s.size()) throw InputError("not an integer list: " + text);
    return v;
  };
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    const int lo = to_int(part.substr(0, dots));
    const int hi = to_int(part.substr(dots + 2));
    if (hi < lo) throw InputError("empty range: " + part);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

}  // namespace refgame::cli
