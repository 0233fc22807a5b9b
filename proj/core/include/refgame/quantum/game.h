#pragma once

#include <cstddef>
#include <string>

#include "refgame/common.h"
#include "refgame/linops/layout.h"
#include "refgame/linops/matrix.h"
#include "refgame/linops/states.h"

namespace refgame::quantum {

using linops::ComplexMatrix;
using linops::DensityMatrix;
using linops::Observable;
using linops::RegisterLayout;

// Referee observable R over a register layout. Acceptance probability of the
// final states rho (maximizer registers) and sigma (minimizer registers) is
// tr(R (rho (x) sigma)) once R is brought into grouped register order.
class QuantumGame {
 public:
  QuantumGame(Observable observable, RegisterLayout layout);

  const Observable& observable() const { return observable_; }
  const RegisterLayout& layout() const { return layout_; }
  int turns() const { return static_cast<int>(layout_.size()); }

  // R with all maximizer registers first (in turn order), then minimizer ones.
  const ComplexMatrix& grouped() const { return grouped_; }
  std::size_t max_dim() const { return layout_.player_dim(Player::kMaximizer); }
  std::size_t min_dim() const { return layout_.player_dim(Player::kMinimizer); }

 private:
  Observable observable_;
  RegisterLayout layout_;
  ComplexMatrix grouped_;
};

struct GameValueReport {
  double value = 0.0;
  double lower_cert = 0.0;
  double upper_cert = 0.0;
  double gap = 0.0;
  long iterations = 0;
};

// Thrown when a solver reaches its iteration cap; carries the report so far.
class SolverConvergenceError : public ConvergenceError {
 public:
  SolverConvergenceError(const std::string& what, GameValueReport report)
      : ConvergenceError(what, report.gap), report_(report) {}
  const GameValueReport& report() const { return report_; }

 private:
  GameValueReport report_;
};

// Contractions of a grouped observable Rg on (A (x) B), dims dA and dB:
//   for_max(sigma) = tr_B(Rg (I (x) sigma)),  for_min(rho) = tr_A(Rg (rho (x) I)).
ComplexMatrix contract_for_max(const ComplexMatrix& grouped, std::size_t dim_a, std::size_t dim_b,
                               const ComplexMatrix& sigma);
ComplexMatrix contract_for_min(const ComplexMatrix& grouped, std::size_t dim_a, std::size_t dim_b,
                               const ComplexMatrix& rho);

// Operator E on the other player's registers with tr(E tau) equal to the
// payoff when `fixed_side` plays `state` and the other side plays tau.
ComplexMatrix effective_operator(const Observable& r, const RegisterLayout& layout,
                                 Player fixed_side, const DensityMatrix& state);

struct BestResponse {
  DensityMatrix state;
  double value;
};

// Pure best response: top eigenvector of the effective operator for the
// maximizer, bottom eigenvector for the minimizer.
BestResponse best_response(const Observable& r, const RegisterLayout& layout, Player responder,
                           const DensityMatrix& opponent_state);

// Two-turn game whose single maximizer register is the concatenation of all
// maximizer registers of `game` (and likewise for the minimizer).
QuantumGame merge_player_registers(const QuantumGame& game);

// I - R with the players' roles exchanged. Only two-turn games.
QuantumGame complement_game(const QuantumGame& game);

// Standard two-register (maximizer, minimizer) layout with the given qubit counts.
RegisterLayout two_turn_layout(int max_qubits, int min_qubits);
// (X1 maximizer, Y1 minimizer, X2 maximizer) layout.
RegisterLayout three_turn_layout(int first_qubits, int min_qubits, int ext_qubits);

}  // namespace refgame::quantum
