#include "cli/cli.h"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "cli/experiments.h"
#include "refgame/common.h"
#include "refgame/dist/json.h"
#include "refgame/dist/values.h"
#include "refgame/linops/states.h"
#include "refgame/protocol/json.h"
#include "refgame/quantum/json.h"
#include "refgame/quantum/value3.h"

namespace refgame::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kCsvHelp =
    "CSV columns: id,seed,quantity,value,threshold,pass. One row per instance or\n"
    "trial, then a 'summary' row (max gap, violation count or pass fraction).\n"
    "Exit status: 0 all thresholds met, 1 threshold missed, 2 convergence failure,\n"
    "3 I/O error, 4 parse error.";

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path.string() + " failed");
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
}

struct GenArgs {
  std::string type;
  std::string qubits = "1,1";
  int m = 1;
  int k = 2;
  int i = 2;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string honest = "maximizer";
  double c = 2.0 / 3.0;
  double s = 1.0 / 3.0;
};

int cmd_gen(const GenArgs& a) {
  if (a.count < 1) throw InputError("--count must be >= 1");
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw IoError("cannot create " + a.out + ": " + ec.message());
  for (int n = 0; n < a.count; ++n) {
    const std::uint64_t seed = linops::mix_seed(a.seed, static_cast<std::uint64_t>(n));
    json doc;
    if (a.type == "qgame") {
      const auto q = parse_int_list(a.qubits);
      linops::RegisterLayout layout;
      if (q.size() == 2) {
        layout = quantum::two_turn_layout(q[0], q[1]);
      } else if (q.size() == 3) {
        layout = quantum::three_turn_layout(q[0], q[1], q[2]);
      } else {
        throw InputError("--qubits takes two or three counts");
      }
      doc = quantum::game_to_json(
          quantum::QuantumGame(linops::random_observable(layout.total_dim(), seed), layout));
    } else if (a.type == "distgame") {
      doc = dist::game_to_json(dist::random_dist_game(a.m, a.k, seed));
    } else if (a.type == "protocol") {
      doc = protocol::instance_to_json(protocol::random_instance(
          a.m, a.i, a.k, PromiseGap::make(a.c, a.s), player_from_string(a.honest), seed));
    } else {
      throw InputError("--type must be qgame, distgame or protocol");
    }
    char name[64];
    std::snprintf(name, sizeof name, "%s_%04d.json", a.type.c_str(), n);
    write_file(fs::path(a.out) / name, doc.dump(2) + "\n");
  }
  return kExitOk;
}

struct SolveArgs {
  std::string file;
  double tol = 1e-4;
  double grid_res = 0.0;
  std::string out;
};

json report_json(const quantum::GameValueReport& r) {
  json j = quantum::report_to_json(r);
  j["schema_version"] = 1;
  return j;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const std::string text = read_file(a.file);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  const auto start = std::chrono::steady_clock::now();
  json rep;
  int code = kExitOk;
  try {
    if (doc.is_object() && doc.contains("observable")) {
      const auto game = quantum::game_from_json(doc);
      if (game.turns() == 2) {
        rep = report_json(quantum::value2(game, a.tol));
        rep["kind"] = "qgame2";
      } else {
        const auto v3 = quantum::value3(game, a.tol);
        rep = report_json(v3.report);
        rep["kind"] = "qgame3";
        rep["bloch"] = v3.bloch;
      }
    } else if (doc.is_object() && doc.contains("base_game")) {
      const auto inst = protocol::instance_from_json(doc);
      const auto sweep = protocol::bound_sweep(inst, a.grid_res > 0.0 ? a.grid_res : 1.0 / 16.0);
      rep = {{"schema_version", 1},
             {"kind", "protocol"},
             {"value", sweep.worst_honest_win},
             {"bound", sweep.bound},
             {"violated", sweep.violated},
             {"iterations", sweep.strategies}};
    } else if (doc.is_object() && doc.contains("accept")) {
      const auto game = dist::game_from_json(doc);
      quantum::GameValueReport r;
      if (game.k() == 2) {
        r.value = r.lower_cert = r.upper_cert = dist::value_k2(game);
        rep = report_json(r);
        rep["kind"] = "distgame2";
      } else if (game.k() == 3) {
        dist::K3Options opts;
        if (a.grid_res > 0.0) opts.grid_res = a.grid_res;
        const auto k3 = dist::value_k3(game, opts);
        r.value = k3.value;
        r.lower_cert = game.max_first() ? k3.value : k3.value - k3.bound;
        r.upper_cert = game.max_first() ? k3.value + k3.bound : k3.value;
        r.gap = k3.bound;
        r.iterations = k3.evaluations;
        rep = report_json(r);
        rep["kind"] = "distgame3";
      } else {
        throw InputError("distribution games are solved for k = 2 or 3");
      }
    } else {
      throw InputError("unrecognized instance file");
    }
    rep["converged"] = true;
  } catch (const quantum::SolverConvergenceError& e) {
    rep = report_json(e.report());
    rep["converged"] = false;
    code = kExitConvergence;
  }
  rep["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(rep.dump(2) + "\n", a.out, out);
  return code;
}

struct ExperimentArgs {
  ExperimentConfig cfg;
  std::string m, k, qubits = "1,1,1";
  std::string out;
};

int cmd_experiment(ExperimentArgs a, std::ostream& out) {
  if (!a.m.empty()) a.cfg.m = parse_int_list(a.m);
  if (!a.k.empty()) a.cfg.k = parse_int_list(a.k);
  a.cfg.qubits = parse_int_list(a.qubits);
  const ExperimentResult r = run_experiment(a.cfg);
  emit(to_csv(r), a.out, out);
  return exit_code(r);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Refereed game values and simulation bounds"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write seeded random instances");
  g->add_option("--type", gen.type, "qgame | distgame | protocol")->required();
  g->add_option("--qubits", gen.qubits, "Register qubits, a,b or a,b,c (qgame)");
  g->add_option("--m", gen.m, "Bits per move");
  g->add_option("--k", gen.k, "Rounds (distgame) or copies (protocol)");
  g->add_option("--i", gen.i, "Base game rounds (protocol)");
  g->add_option("--count", gen.count, "Number of instances");
  g->add_option("--seed", gen.seed, "Base seed");
  g->add_option("--honest", gen.honest, "Honest side (protocol)");
  g->add_option("--c", gen.c, "Completeness (protocol)");
  g->add_option("--s", gen.s, "Soundness (protocol)");
  g->add_option("--out", gen.out, "Output directory")->required();

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance file and print a JSON report");
  s->add_option("file", solve.file, "Instance JSON")->required();
  s->add_option("--tol", solve.tol, "Solver tolerance");
  s->add_option("--grid-res", solve.grid_res, "Grid resolution (distgame k=3, protocol)");
  s->add_option("--out", solve.out, "Report path (default stdout)");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "Run a seeded batch and print CSV");
  e->add_option("name", exp.cfg.command,
                "collapse | sion | protocol-bounds | sparsify-k2 | sparsify-k3 | counting-bounds")
      ->required();
  e->add_option("--count", exp.cfg.count, "Instances (default per experiment)");
  e->add_option("--trials", exp.cfg.trials, "Trials per game (sparsify-*)");
  e->add_option("--seed", exp.cfg.seed, "Base seed");
  e->add_option("--tol", exp.cfg.tol, "Solver tolerance");
  e->add_option("--eps", exp.cfg.eps, "Sparsification epsilon");
  e->add_option("--m", exp.m, "Bits per move, e.g. 2 or 5..8");
  e->add_option("--k", exp.k, "Rounds / copies, e.g. 1..4 or 2,3");
  e->add_option("--i", exp.cfg.i, "Base game rounds (protocol-bounds)");
  e->add_option("--grid-res", exp.cfg.grid_res, "Grid resolution");
  e->add_option("--qubits", exp.qubits, "Register qubits a,b,c (collapse, sion)");
  e->add_option("--jobs", exp.cfg.jobs, "Instances solved concurrently");
  e->add_option("--out", exp.out, "CSV path (default stdout)");
  e->footer(kCsvHelp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(solve, out);
    return cmd_experiment(exp, out);
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const ConvergenceError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitParse;
  }
}

}  // namespace refgame::cli
