#include "fog/belief_oracle.hpp"

#include <unordered_map>

namespace fog {

namespace {

struct Bounds {
  std::int16_t winWithin = INT16_MAX;  // proven: White wins within this many plies
  std::int16_t safeUpTo = -1;          // proven: no win within this many plies
};

struct BGKey {
  BGState s;
  bool operator==(const BGKey&) const = default;
};
struct BGKeyHash {
  std::size_t operator()(const BGKey& k) const { return std::size_t(bg_hash(k.s)); }
};

struct Solver {
  BGEngine eng;
  std::unordered_map<BGKey, Bounds, BGKeyHash> memo;
  std::uint64_t expanded = 0;
  std::uint64_t budget;
  bool exceeded = false;

  bool win_within(const BGState& raw, int k) {
    BGValue t = eng.terminal(raw);
    if (t == BGValue::WhiteWin) return true;
    if (t == BGValue::BlackSafe) return false;
    if (k <= 0) return false;
    if (exceeded) return false;
    BGKey key{bg_canonical(raw, eng.n)};
    Bounds& b = memo[key];
    if (b.winWithin <= k) return true;
    if (b.safeUpTo >= k) return false;
    if (memo.size() > budget) {
      exceeded = true;
      return false;
    }
    ++expanded;
    bool win = false;
    if (key.s.toMove == Color::White) {
      std::vector<BGEngine::MoveBranches> ws;
      eng.white_successors(key.s, ws);
      for (const auto& mb : ws) {
        bool allWin = true;
        for (const BGState& succ : mb.succs)
          if (!win_within(succ, k - 1)) {
            allWin = false;
            break;
          }
        if (allWin) {
          win = true;
          break;
        }
      }
    } else {
      BGEngine::BlackResult bs;
      eng.black_successors(key.s, bs);
      if (!bs.blackWinBranch) {
        win = true;
        for (const BGState& succ : bs.succs)
          if (!win_within(succ, k - 1)) {
            win = false;
            break;
          }
      }
    }
    Bounds& b2 = memo[key];  // recursion may rehash
    if (win) b2.winWithin = std::min<std::int16_t>(b2.winWithin, std::int16_t(k));
    else b2.safeUpTo = std::max<std::int16_t>(b2.safeUpTo, std::int16_t(k));
    return win;
  }
};

}  // namespace

OracleResult solve_generic(int n, const BGState& initial, int maxDepthPlies,
                           std::uint64_t stateBudget) {
  Solver solver{BGEngine{n}};
  solver.budget = stateBudget;
  OracleResult out;
  for (int k = 1; k <= maxDepthPlies; ++k) {
    if (solver.win_within(initial, k)) {
      out.value = BGValue::WhiteWin;
      out.optimalDepth = k;
      break;
    }
    if (solver.exceeded) break;
  }
  if (out.value != BGValue::WhiteWin) out.value = BGValue::BlackSafe;
  out.statesExpanded = solver.expanded;
  out.budgetExceeded = solver.exceeded;
  return out;
}

}  // namespace fog
