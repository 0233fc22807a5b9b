#include "refgame/protocol/protocol.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "refgame/dist/values.h"
#include "refgame/linops/states.h"

namespace refgame::protocol {
namespace {

constexpr double kBoundTol = 1e-9;

struct Plan {
  std::vector<std::uint32_t> expected;          // per dishonest turn
  std::vector<ChunkStats> chunks;                // per dishonest turn
  std::vector<int> slot;                         // turn -> dishonest index or -1
};

Plan make_plan(const ProtocolInstance& inst, const AdversaryStrategy& adv) {
  const auto turns = dishonest_turns(inst);
  if (adv.size() != turns.size()) {
    throw InputError("adversary strategy must cover every dishonest turn");
  }
  const int m = inst.base_game.m();
  Plan p;
  p.slot.assign(static_cast<std::size_t>(inst.base_game.k()) + 1, -1);
  for (std::size_t d = 0; d < turns.size(); ++d) {
    if (adv[d].size() != static_cast<std::size_t>(inst.copies_k)) {
      throw InputError("each dishonest turn needs k distributions");
    }
    for (const auto& q : adv[d]) {
      if (q.m() != m) throw InputError("adversary distribution has the wrong number of bits");
    }
    ChunkStats st = chunk_check_stats(adv[d]);
    std::uint32_t j = 0;
    if (st.conditional) {
      j = honest_expected_string(*st.conditional);
    } else {
      std::vector<double> avg(std::size_t{1} << m, 0.0);
      for (const auto& q : adv[d]) {
        for (std::size_t y = 0; y < avg.size(); ++y) avg[y] += q[y];
      }
      j = honest_expected_string(Distribution::normalized(m, std::move(avg)));
    }
    p.expected.push_back(j);
    p.chunks.push_back(std::move(st));
    p.slot[static_cast<std::size_t>(turns[d])] = static_cast<int>(d);
  }
  return p;
}

}  // namespace

void validate(const ProtocolInstance& inst) {
  if (inst.copies_k < 1) throw InputError("copies_k must be >= 1");
  if (inst.base_game.m() > 2 || inst.base_game.k() > 3 || inst.copies_k > 6) {
    throw RangeError("exact protocol enumeration supports m <= 2, i <= 3, k <= 6");
  }
}

ChunkStats chunk_check_stats(std::span<const Distribution> dists) {
  if (dists.empty()) throw InputError("chunk check needs at least one distribution");
  const int m = dists.front().m();
  std::vector<double> joint(dists.front().size(), 1.0);
  for (const auto& q : dists) {
    if (q.m() != m) throw InputError("chunk distributions must share m");
    for (std::size_t y = 0; y < joint.size(); ++y) joint[y] *= q[y];
  }
  ChunkStats st;
  for (double v : joint) st.pass_prob += v;
  if (st.pass_prob > 0.0) st.conditional = Distribution::normalized(m, std::move(joint));
  return st;
}

std::uint32_t honest_expected_string(const Distribution& d) {
  std::uint32_t best = 0;
  for (std::size_t y = 1; y < d.size(); ++y) {
    if (d[y] > d[best]) best = static_cast<std::uint32_t>(y);
  }
  return best;
}

std::vector<int> dishonest_turns(const ProtocolInstance& inst) {
  std::vector<int> out;
  for (int t = 1; t <= inst.base_game.k(); ++t) {
    if (inst.base_game.mover(t) != inst.honest_side) out.push_back(t);
  }
  return out;
}

double protocol_value(const ProtocolInstance& inst, const AdversaryStrategy& adversary) {
  validate(inst);
  const Plan plan = make_plan(inst, adversary);
  const DistGame& g = inst.base_game;
  const std::size_t n = g.strings();
  const int rounds = g.k();
  const bool honest_max = inst.honest_side == Player::kMaximizer;
  const double honest_wins = honest_max ? 1.0 : 0.0;
  const auto& table = g.accept();

  // Continuation value when every remaining dishonest move is its expected string.
  std::function<double(std::size_t, int)> planned = [&](std::size_t prefix, int turn) -> double {
    if (turn > rounds) return table[prefix];
    const int d = plan.slot[static_cast<std::size_t>(turn)];
    if (d >= 0) return planned(prefix * n + plan.expected[static_cast<std::size_t>(d)], turn + 1);
    double best = honest_max ? -1.0 : 2.0;
    for (std::size_t y = 0; y < n; ++y) {
      const double v = planned(prefix * n + y, turn + 1);
      best = honest_max ? std::max(best, v) : std::min(best, v);
    }
    return best;
  };

  std::function<double(std::size_t, int)> actual = [&](std::size_t prefix, int turn) -> double {
    if (turn > rounds) return table[prefix];
    const int d = plan.slot[static_cast<std::size_t>(turn)];
    if (d < 0) {
      std::size_t pick = 0;
      double best = planned(prefix * n, turn + 1);
      for (std::size_t y = 1; y < n; ++y) {
        const double v = planned(prefix * n + y, turn + 1);
        if (honest_max ? v > best : v < best) {
          best = v;
          pick = y;
        }
      }
      return actual(prefix * n + pick, turn + 1);
    }
    const ChunkStats& st = plan.chunks[static_cast<std::size_t>(d)];
    double acc = (1.0 - st.pass_prob) * honest_wins;
    if (st.conditional) {
      double cont = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        const double w = (*st.conditional)[y];
        if (w > 0.0) cont += w * actual(prefix * n + y, turn + 1);
      }
      acc += st.pass_prob * cont;
    }
    return acc;
  };
  return actual(0, 1);
}

double honest_win(const ProtocolInstance& inst, const AdversaryStrategy& adversary) {
  const double acc = protocol_value(inst, adversary);
  return inst.honest_side == Player::kMaximizer ? acc : 1.0 - acc;
}

BoundPair simulation_bounds(const PromiseGap& promise, int k) {
  if (k < 1) throw InputError("k must be >= 1");
  const double tail = std::ldexp(1.0, -k);
  return {promise.c * (1.0 - tail), promise.s + tail * (1.0 - promise.s)};
}

double honest_win_bound(const ProtocolInstance& inst) {
  const BoundPair b = simulation_bounds(inst.promise, inst.copies_k);
  return inst.honest_side == Player::kMaximizer ? b.completeness : 1.0 - b.soundness;
}

bool satisfies_promise(const ProtocolInstance& inst) {
  const double v = dist::pure_value(inst.base_game);
  return inst.honest_side == Player::kMaximizer ? v >= inst.promise.c : v <= inst.promise.s;
}

std::vector<Distribution> distribution_grid(int m, double grid_res) {
  if (!(grid_res >= 1.0 / 64.0 - 1e-15 && grid_res <= 1.0)) {
    throw InputError("grid_res must lie in [1/64, 1]");
  }
  const int steps = static_cast<int>(std::lround(1.0 / grid_res));
  const std::size_t d = std::size_t{1} << m;
  std::vector<Distribution> out;
  std::vector<int> c(d, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == d) {
      c[pos] = left;
      std::vector<double> p(d);
      for (std::size_t i = 0; i < d; ++i) p[i] = static_cast<double>(c[i]) / steps;
      out.push_back(Distribution::normalized(m, std::move(p)));
      return;
    }
    for (int v = left; v >= 0; --v) {
      c[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, steps);
  return out;
}

SweepResult bound_sweep(const ProtocolInstance& inst, double grid_res, long max_strategies) {
  validate(inst);
  const auto grid = distribution_grid(inst.base_game.m(), grid_res);
  const auto turns = dishonest_turns(inst);
  const int k = inst.copies_k;
  // Copies are exchangeable, so multisets (non-decreasing index tuples) suffice.
  std::vector<std::vector<std::size_t>> chunks;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == idx.size()) {
      chunks.push_back(idx);
      if (static_cast<long>(chunks.size()) > max_strategies) {
        throw RangeError("adversary grid is too large");
      }
      return;
    }
    for (std::size_t g = from; g < grid.size(); ++g) {
      idx[pos] = g;
      rec(pos + 1, g);
    }
  };
  rec(0, 0);
  long total = 1;
  for (std::size_t t = 0; t < turns.size(); ++t) {
    if (total > max_strategies / static_cast<long>(chunks.size())) {
      throw RangeError("adversary grid is too large");
    }
    total *= static_cast<long>(chunks.size());
  }

  SweepResult res;
  res.bound = honest_win_bound(inst);
  AdversaryStrategy adv(turns.size());
  for (long s = 0; s < total; ++s) {
    long rest = s;
    for (std::size_t t = 0; t < turns.size(); ++t) {
      const auto& c = chunks[static_cast<std::size_t>(rest % static_cast<long>(chunks.size()))];
      rest /= static_cast<long>(chunks.size());
      adv[t].clear();
      for (std::size_t g : c) adv[t].push_back(grid[g]);
    }
    const double w = honest_win(inst, adv);
    if (s == 0 || w < res.worst_honest_win) {
      res.worst_honest_win = w;
      res.worst = adv;
    }
  }
  res.strategies = total;
  res.violated = res.worst_honest_win < res.bound - kBoundTol;
  return res;
}

ProtocolInstance random_instance(int m, int i, int k, const PromiseGap& promise,
                                 Player honest_side, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 100000; ++attempt) {
    ProtocolInstance inst{dist::random_dist_game(m, i, linops::mix_seed(seed, attempt)), k, promise,
                          honest_side};
    validate(inst);
    if (satisfies_promise(inst)) return inst;
  }
  throw RangeError("no table satisfying the promise found");
}

}  // namespace refgame::protocol
