#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "refgame/common.h"
#include "refgame/dist/dist_game.h"

namespace refgame::protocol {

using dist::DistGame;
using dist::Distribution;

// A classical-proof game simulated with k-copy checks on the dishonest side.
struct ProtocolInstance {
  DistGame base_game;
  int copies_k = 1;
  PromiseGap promise;
  Player honest_side = Player::kMaximizer;
};

// Enumeration limits: m <= 2, i <= 3, k <= 6. Throws RangeError/InputError.
void validate(const ProtocolInstance& inst);

// Per dishonest turn (in turn order), one distribution per copy.
using AdversaryStrategy = std::vector<std::vector<Distribution>>;

struct ChunkStats {
  double pass_prob = 0.0;
  // Distribution of the agreed string given that all copies agree; empty
  // when pass_prob is 0.
  std::optional<Distribution> conditional;
};

ChunkStats chunk_check_stats(std::span<const Distribution> dists);

// Most likely string, smallest index among ties.
std::uint32_t honest_expected_string(const Distribution& d);

// 1-based turns of the base game played by the dishonest side.
std::vector<int> dishonest_turns(const ProtocolInstance& inst);

// Exact acceptance probability. Failed checks count as a win for the honest
// side. The honest side moves by backward induction over the base table with
// each dishonest move replaced by its expected string.
double protocol_value(const ProtocolInstance& inst, const AdversaryStrategy& adversary);

// Acceptance if the honest side is the maximizer, 1 - acceptance otherwise.
double honest_win(const ProtocolInstance& inst, const AdversaryStrategy& adversary);

struct BoundPair {
  double completeness = 0.0;  // c (1 - 2^-k)
  double soundness = 0.0;     // s + 2^-k (1 - s)
};
BoundPair simulation_bounds(const PromiseGap& promise, int k);

// Guaranteed honest win: completeness for an honest maximizer, 1 - soundness
// for an honest minimizer.
double honest_win_bound(const ProtocolInstance& inst);

// Pure alternating base value is >= c (honest maximizer) or <= s (honest minimizer).
bool satisfies_promise(const ProtocolInstance& inst);

// Grid of distributions over {0,1}^m with entries in multiples of grid_res.
std::vector<Distribution> distribution_grid(int m, double grid_res);

struct SweepResult {
  double worst_honest_win = 1.0;
  double bound = 0.0;
  bool violated = false;  // worst_honest_win < bound - 1e-9
  long strategies = 0;
  AdversaryStrategy worst;
};

// Minimum honest win over all adversaries whose copies use grid distributions.
SweepResult bound_sweep(const ProtocolInstance& inst, double grid_res,
                        long max_strategies = 20'000'000);

// Random base table (first mover maximizer) redrawn until it satisfies the promise.
ProtocolInstance random_instance(int m, int i, int k, const PromiseGap& promise,
                                 Player honest_side, std::uint64_t seed);

}  // namespace refgame::protocol
