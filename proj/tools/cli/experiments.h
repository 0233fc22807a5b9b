#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace refgame::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitThreshold = 1,
  kExitConvergence = 2,
  kExitIo = 3,
  kExitParse = 4,
};

struct ExperimentConfig {
  std::string command;  // collapse | sion | protocol-bounds | sparsify-k2 | sparsify-k3 | counting-bounds
  std::uint64_t seed = 0;
  int count = 0;        // 0 selects the per-experiment default
  int trials = 10;      // sparsify-*: trials per game
  double tol = 1e-4;
  double eps = 0.25;
  std::vector<int> m;   // empty selects the default
  std::vector<int> k;
  int i = 2;
  double grid_res = 0.0;  // 0 selects the default
  std::vector<int> qubits{1, 1, 1};
  int jobs = 1;
};

// id, seed, quantity, value, threshold, pass
struct CsvRow {
  std::string id;
  std::uint64_t seed = 0;
  std::string quantity;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ExperimentResult {
  std::vector<CsvRow> rows;
  CsvRow summary;
  bool converged = true;  // false if some solver hit its iteration cap
};

inline constexpr const char* kCsvHeader = "id,seed,quantity,value,threshold,pass";

// Throws refgame::InputError for an unknown command or bad parameters.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string to_csv(const ExperimentResult& r);
int exit_code(const ExperimentResult& r);

// "5", "1..4" or "2,3" (mixable: "1,3..5").
std::vector<int> parse_int_list(const std::string& text);

}  // namespace refgame::cli
