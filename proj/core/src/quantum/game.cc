#include "refgame/quantum/game.h"

#include <numeric>
#include <utility>

#include "refgame/linops/eigen.h"
#include "refgame/linops/tensor.h"

namespace refgame::quantum {
namespace {

ComplexMatrix grouped_observable(const Observable& r, const RegisterLayout& layout) {
  const auto dims = layout.dims();
  return linops::permute_factors(r.mat(), dims, layout.grouped_order());
}

void check_game_shape(const Observable& r, const RegisterLayout& layout) {
  if (r.dim() != layout.total_dim()) {
    throw InputError("observable dimension does not match register layout");
  }
  if (layout.size() < 2 || layout.size() > 3) {
    throw InputError("quantum games have 2 or 3 turns");
  }
}

std::string joined_ids(const RegisterLayout& layout, Player p) {
  std::string out;
  for (std::size_t pos : layout.owned_by(p)) {
    if (!out.empty()) out += '+';
    out += layout.registers()[pos].id;
  }
  return out;
}

int player_qubits(const RegisterLayout& layout, Player p) {
  int q = 0;
  for (std::size_t pos : layout.owned_by(p)) q += layout.registers()[pos].qubits;
  return q;
}

}  // namespace

QuantumGame::QuantumGame(Observable observable, RegisterLayout layout)
    : observable_(std::move(observable)), layout_(std::move(layout)) {
  check_game_shape(observable_, layout_);
  grouped_ = grouped_observable(observable_, layout_);
}

ComplexMatrix contract_for_max(const ComplexMatrix& grouped, std::size_t dim_a, std::size_t dim_b,
                               const ComplexMatrix& sigma) {
  if (grouped.dim() != dim_a * dim_b || sigma.dim() != dim_b) {
    throw InputError("contract_for_max: dimension mismatch");
  }
  ComplexMatrix e(dim_a);
  for (std::size_t a = 0; a < dim_a; ++a) {
    for (std::size_t a2 = 0; a2 < dim_a; ++a2) {
      linops::Complex s = 0.0;
      for (std::size_t b = 0; b < dim_b; ++b) {
        for (std::size_t b2 = 0; b2 < dim_b; ++b2) {
          s += grouped(a * dim_b + b, a2 * dim_b + b2) * sigma(b2, b);
        }
      }
      e(a, a2) = s;
    }
  }
  return e.hermitian_part();
}

ComplexMatrix contract_for_min(const ComplexMatrix& grouped, std::size_t dim_a, std::size_t dim_b,
                               const ComplexMatrix& rho) {
  if (grouped.dim() != dim_a * dim_b || rho.dim() != dim_a) {
    throw InputError("contract_for_min: dimension mismatch");
  }
  ComplexMatrix e(dim_b);
  for (std::size_t a = 0; a < dim_a; ++a) {
    for (std::size_t a2 = 0; a2 < dim_a; ++a2) {
      const linops::Complex w = rho(a2, a);
      if (w == 0.0) continue;
      for (std::size_t b = 0; b < dim_b; ++b) {
        for (std::size_t b2 = 0; b2 < dim_b; ++b2) {
          e(b, b2) += w * grouped(a * dim_b + b, a2 * dim_b + b2);
        }
      }
    }
  }
  return e.hermitian_part();
}

ComplexMatrix effective_operator(const Observable& r, const RegisterLayout& layout,
                                 Player fixed_side, const DensityMatrix& state) {
  if (r.dim() != layout.total_dim()) {
    throw InputError("observable dimension does not match register layout");
  }
  const std::size_t da = layout.player_dim(Player::kMaximizer);
  const std::size_t db = layout.player_dim(Player::kMinimizer);
  const ComplexMatrix g = grouped_observable(r, layout);
  if (fixed_side == Player::kMinimizer) {
    if (state.dim() != db) throw InputError("state dimension does not match minimizer registers");
    return contract_for_max(g, da, db, state.mat());
  }
  if (state.dim() != da) throw InputError("state dimension does not match maximizer registers");
  return contract_for_min(g, da, db, state.mat());
}

BestResponse best_response(const Observable& r, const RegisterLayout& layout, Player responder,
                           const DensityMatrix& opponent_state) {
  const ComplexMatrix e = effective_operator(r, layout, opponent(responder), opponent_state);
  const linops::EigenPair pair =
      responder == Player::kMaximizer ? linops::top_eigpair(e) : linops::bottom_eigpair(e);
  return {DensityMatrix::pure(pair.vector), pair.value};
}

RegisterLayout two_turn_layout(int max_qubits, int min_qubits) {
  return RegisterLayout({{"X1", max_qubits, Player::kMaximizer, 1},
                         {"Y1", min_qubits, Player::kMinimizer, 2}});
}

RegisterLayout three_turn_layout(int first_qubits, int min_qubits, int ext_qubits) {
  return RegisterLayout({{"X1", first_qubits, Player::kMaximizer, 1},
                         {"Y1", min_qubits, Player::kMinimizer, 2},
                         {"X2", ext_qubits, Player::kMaximizer, 3}});
}

QuantumGame merge_player_registers(const QuantumGame& game) {
  const RegisterLayout& l = game.layout();
  RegisterLayout merged({{joined_ids(l, Player::kMaximizer), player_qubits(l, Player::kMaximizer),
                          Player::kMaximizer, 1},
                         {joined_ids(l, Player::kMinimizer), player_qubits(l, Player::kMinimizer),
                          Player::kMinimizer, 2}});
  return QuantumGame(Observable(game.grouped()), std::move(merged));
}

QuantumGame complement_game(const QuantumGame& game) {
  if (game.turns() != 2) throw InputError("complement_game needs a two-turn game");
  const auto& regs = game.layout().registers();
  RegisterLayout swapped({{regs[1].id, regs[1].qubits, Player::kMaximizer, 1},
                          {regs[0].id, regs[0].qubits, Player::kMinimizer, 2}});
  const ComplexMatrix comp =
      ComplexMatrix::identity(game.observable().dim()) - game.observable().mat();
  const std::vector<std::size_t> dims{regs[0].dim(), regs[1].dim()};
  const std::vector<std::size_t> order{1, 0};
  return QuantumGame(Observable(linops::permute_factors(comp, dims, order)), std::move(swapped));
}

}  // namespace refgame::quantum
