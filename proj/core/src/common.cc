#include "refgame/common.h"

namespace refgame {

std::string_view to_string(Player p) {
  return p == Player::kMaximizer ? "maximizer" : "minimizer";
}

Player player_from_string(std::string_view s) {
  if (s == "maximizer" || s == "max") return Player::kMaximizer;
  if (s == "minimizer" || s == "min") return Player::kMinimizer;
  throw InputError("unknown player '" + std::string(s) + "'");
}

PromiseGap PromiseGap::make(double c, double s) {
  if (!(0.0 <= s && s < c && c <= 1.0)) throw InputError("promise gap needs 0 <= s < c <= 1");
  return PromiseGap{c, s};
}

}  // namespace refgame
