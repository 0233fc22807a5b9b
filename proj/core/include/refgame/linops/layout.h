#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "refgame/common.h"

namespace refgame::linops {

struct Register {
  std::string id;
  int qubits = 0;  // 0 qubits is a trivial (dimension 1) register
  Player owner = Player::kMaximizer;
  int turn = 0;

  std::size_t dim() const { return std::size_t{1} << qubits; }
};

// Registers in tensor-factor order; earlier registers are more significant
// factors. Turn indices strictly increase along the list and owners alternate
// starting with the maximizer.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> registers);

  const std::vector<Register>& registers() const { return registers_; }
  std::size_t size() const { return registers_.size(); }
  std::size_t total_dim() const;
  std::vector<std::size_t> dims() const;

  // Position of `id` in the list; throws InputError for an unknown id.
  std::size_t index_of(const std::string& id) const;

  // Register positions owned by `p`, in turn order.
  std::vector<std::size_t> owned_by(Player p) const;
  std::size_t player_dim(Player p) const;

  // Permutation taking tensor order to the grouped order (all maximizer
  // registers, then all minimizer registers). grouped_order()[k] is the
  // layout position that lands in grouped slot k.
  const std::vector<std::size_t>& grouped_order() const { return grouped_; }

 private:
  std::vector<Register> registers_;
  std::vector<std::size_t> grouped_;
};

}  // namespace refgame::linops
