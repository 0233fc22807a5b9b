#include "refgame/linops/layout.h"

#include <set>

namespace refgame::linops {

RegisterLayout::RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
  if (registers_.empty()) throw InputError("layout needs at least one register");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    const Register& r = registers_[i];
    if (r.qubits < 0 || r.qubits > 9) throw InputError("register '" + r.id + "' qubit count out of range");
    if (!ids.insert(r.id).second) throw InputError("duplicate register id '" + r.id + "'");
    if (i > 0 && r.turn <= registers_[i - 1].turn) {
      throw InputError("register turn indices must strictly increase");
    }
    const Player expected = (i % 2 == 0) ? Player::kMaximizer : Player::kMinimizer;
    if (r.owner != expected) throw InputError("register owners must alternate starting with the maximizer");
  }
  if (total_dim() > (std::size_t{1} << 9)) throw InputError("layout dimension exceeds 2^9");
  grouped_ = owned_by(Player::kMaximizer);
  for (std::size_t i : owned_by(Player::kMinimizer)) grouped_.push_back(i);
}

std::size_t RegisterLayout::total_dim() const {
  std::size_t d = 1;
  for (const auto& r : registers_) d *= r.dim();
  return d;
}

std::vector<std::size_t> RegisterLayout::dims() const {
  std::vector<std::size_t> out;
  for (const auto& r : registers_) out.push_back(r.dim());
  return out;
}

std::size_t RegisterLayout::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].id == id) return i;
  }
  throw InputError("unknown register id '" + id + "'");
}

std::vector<std::size_t> RegisterLayout::owned_by(Player p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].owner == p) out.push_back(i);
  }
  return out;
}

std::size_t RegisterLayout::player_dim(Player p) const {
  std::size_t d = 1;
  for (std::size_t i : owned_by(p)) d *= registers_[i].dim();
  return d;
}

}  // namespace refgame::linops
