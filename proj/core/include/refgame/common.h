#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace refgame {

enum class Player { kMaximizer, kMinimizer };

constexpr Player opponent(Player p) {
  return p == Player::kMaximizer ? Player::kMinimizer : Player::kMaximizer;
}

std::string_view to_string(Player p);
Player player_from_string(std::string_view s);

// Malformed arguments: bad dimensions, unknown ids, violated invariants.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested size exceeds what an exact routine supports, or integer overflow.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// An iterative routine hit its cap before reaching the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Completeness / soundness thresholds, 0 <= s < c <= 1.
struct PromiseGap {
  double c = 2.0 / 3.0;
  double s = 1.0 / 3.0;

  static PromiseGap make(double c, double s);
};

}  // namespace refgame
