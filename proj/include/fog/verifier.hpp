#pragma once

#include <atomic>
#include <chrono>
#include <cstring>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fog/belief.hpp"
#include "fog/board.hpp"

// Exhaustive adversarial verification of a deterministic White strategy:
// every observation branch after every White move, every candidate-consistent
// Black reply. A configuration verifies iff all branches reach WhiteWon
// within the ply bound with no unrecaptured material loss and no cycles.

namespace fog {

struct StrategyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyOutcome {
  bool won = false;
  int maxPlies = 0;
  std::uint64_t nodes = 0;
  std::string failureReason;
  std::vector<std::string> trace;  // filled on failure, root-first
};

struct VerificationReport {
  std::string scenario;
  std::uint64_t configsTested = 0;
  std::uint64_t configsWon = 0;
  int maxPlies = 0;
  int maxWhiteMoves = 0;
  std::uint64_t nodes = 0;
  double wallSeconds = 0;
  std::vector<std::pair<std::string, std::string>> failures;  // position text, trace
  std::vector<std::uint32_t> whiteMoveHistogram;              // index = white moves to win
};

enum class Scenario { KQvK, KRRvK };

std::vector<Position> enumerate_initial_configs(Scenario sc, bool symmetryReduce, int n = 8);

template <class Strategy>
class Verifier {
 public:
  explicit Verifier(const Strategy& strategy, int plyBound = 600)
      : strategy_(strategy), plyBound_(plyBound) {}

  VerifyOutcome verify(const Position& initial) {
    onPath_.clear();
    VerifyOutcome out;
    nodes_ = 0;
    Position whites = initial;
    whites.blackKing = -1;
    typename Strategy::State st = strategy_.initial(initial);
    int plies = 0;
    out.won = explore(st, whites, bit(initial.blackKing), 0, plies, out);
    out.maxPlies = plies;
    out.nodes = nodes_;
    return out;
  }

 private:
  struct Key {
    typename Strategy::State st;
    std::int8_t wk, wq, wr0, wr1;
    Mask belief;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.belief;
      h ^= std::uint64_t(std::uint8_t(k.wk)) | std::uint64_t(std::uint8_t(k.wq)) << 8 |
           std::uint64_t(std::uint8_t(k.wr0)) << 16 | std::uint64_t(std::uint8_t(k.wr1)) << 24;
      h ^= std::uint64_t(strategy_state_hash(k.st)) << 32;
      h += 0x9e3779b97f4a7c15ull;
      h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
      h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
      return std::size_t(h ^ (h >> 31));
    }
  };

  static Key make_key(const typename Strategy::State& st, const Position& whites, Mask belief) {
    return Key{st, whites.whiteKing, whites.whiteQueen, whites.whiteRook[0], whites.whiteRook[1],
               belief};
  }

  static Position with_black(const Position& whites, Mask belief) {
    Position p = whites;
    BeliefState b{belief};
    p.blackKing = b.singleton() ? std::int8_t(lowest_square(belief)) : std::int8_t(-1);
    return p;
  }

  // Returns true when every branch below wins; plies = worst-case half-moves.
  bool explore(typename Strategy::State st, const Position& whites, Mask belief, int depth,
               int& plies, VerifyOutcome& out) {
    ++nodes_;
    Key key = make_key(st, whites, belief);
    if (auto it = cache_.find(key); it != cache_.end() && depth + it->second <= plyBound_) {
      plies = it->second;
      return true;
    }
    if (onPath_.count(key)) {
      out.failureReason = "cycle: repeated (strategy state, position, belief)";
      return false;
    }
    if (depth >= plyBound_) {
      out.failureReason = "ply bound exceeded";
      return false;
    }
    onPath_.insert(key);
    bool ok = step(st, whites, belief, depth, plies, out);
    onPath_.erase(key);
    if (ok) cache_[key] = std::uint16_t(plies);
    return ok;
  }

  bool step(typename Strategy::State st, const Position& whites, Mask belief, int depth,
            int& plies, VerifyOutcome& out) {
    Position pos = with_black(whites, belief);
    pos.sideToMove = Color::White;
    Move mv;
    typename Strategy::State st2 = st;
    try {
      mv = strategy_.next(st2, pos, BeliefState{belief});
    } catch (const StrategyError& e) {
      out.failureReason = std::string("strategy error: ") + e.what();
      return false;
    }
    if (!is_legal_move(pos, Color::White, mv)) {
      out.failureReason = "strategy returned illegal move " + move_name(mv, pos.n());
      return false;
    }
    auto traceWhite = [&](const char* note) {
      std::ostringstream line;
      line << depth + 1 << " W " << move_name(mv, pos.n()) << " phase=" << strategy_.phase_name(st)
           << " belief=" << popcount(belief) << note;
      out.trace.insert(out.trace.begin(), line.str());
    };
    // capture of the known black king ends the game
    if (BeliefState{belief}.singleton() && bit(mv.to) == belief) {
      plies = 1;
      return true;
    }
    std::vector<BranchOutcome> whiteBranches;
    try {
      whiteBranches = white_move_outcomes(BeliefState{belief}, pos, mv);
    } catch (const std::logic_error& e) {
      out.failureReason = std::string("belief contract: ") + e.what();
      traceWhite("");
      return false;
    }
    Position afterW = whites;
    {
      auto relocate = [&](std::int8_t& piece) {
        if (piece == mv.from) piece = mv.to;
      };
      relocate(afterW.whiteKing);
      relocate(afterW.whiteQueen);
      for (auto& r : afterW.whiteRook) relocate(r);
      afterW.normalizeRooks();
      afterW.sideToMove = Color::Black;
    }
    int worst = 1;
    for (const BranchOutcome& wb : whiteBranches) {
      if (wb.status == GameStatus::WhiteWon) continue;  // candidate captured
      std::vector<BranchOutcome> blackBranches = black_move_outcomes(wb.belief, afterW);
      for (const BranchOutcome& bb : blackBranches) {
        int sub = 0;
        if (!black_branch(st2, afterW, wb, bb, depth, sub, out)) {
          std::ostringstream line;
          line << depth + 2 << " B " << black_branch_name(bb, afterW.n())
               << " phase=" << strategy_.phase_name(st2) << " belief=" << bb.belief.count();
          out.trace.insert(out.trace.begin(), line.str());
          traceWhite(wb.obs == ObsClass::SeenAt
                         ? (" obs=seen@" + square_name(wb.square, afterW.n())).c_str()
                         : "");
          return false;
        }
        worst = std::max(worst, 2 + sub);
      }
    }
    plies = worst;
    return true;
  }

  static std::string black_branch_name(const BranchOutcome& bb, int n) {
    if (bb.status == GameStatus::BlackWon) return "kxK" + square_name(bb.square, n);
    if (bb.whitePieceCaptured)
      return std::string("kx") + (bb.capturedKind == PieceKind::Queen ? "Q" : "R") +
             square_name(bb.square, n);
    if (bb.obs == ObsClass::SeenAt) return "k.seen@" + square_name(bb.square, n);
    return "k.unseen";
  }

  bool black_branch(const typename Strategy::State& st, const Position& afterW,
                    const BranchOutcome& wb, const BranchOutcome& bb, int depth, int& sub,
                    VerifyOutcome& out) {
    if (bb.status == GameStatus::BlackWon) {
      out.failureReason = "white king capturable";
      return false;
    }
    Position nextWhites = afterW;
    if (bb.whitePieceCaptured) {
      if (nextWhites.whiteQueen == bb.square) nextWhites.whiteQueen = -1;
      for (auto& r : nextWhites.whiteRook)
        if (r == bb.square) r = -1;
      nextWhites.normalizeRooks();
      Position check = with_black(nextWhites, bb.belief.candidates);
      if (!(attacked_squares(check, Color::White) & bb.belief.candidates)) {
        out.failureReason = "material lost without winning recapture";
        return false;
      }
    }
    nextWhites.sideToMove = Color::White;
    return explore(st, nextWhites, bb.belief.candidates, depth + 2, sub, out);
  }

  const Strategy& strategy_;
  int plyBound_;
  std::uint64_t nodes_ = 0;
  std::unordered_map<Key, std::uint16_t, KeyHash> cache_;
  std::unordered_set<Key, KeyHash> onPath_;
};

// Parallel driver over a set of initial configurations. Each worker owns a
// Verifier (and so its own transposition cache); reports merge at the end.
template <class Strategy>
VerificationReport verify_all(const Strategy& strategy, Scenario sc,
                              const std::vector<Position>& configs, int plyBound, int workers,
                              std::size_t maxFailures = 8) {
  VerificationReport report;
  report.scenario = sc == Scenario::KQvK ? "kqk" : "krrk";
  report.configsTested = configs.size();
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto start = std::chrono::steady_clock::now();
  auto work = [&]() {
    Verifier<Strategy> v(strategy, plyBound);
    VerificationReport local;
    local.whiteMoveHistogram.assign(plyBound / 2 + 2, 0);
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) break;
      VerifyOutcome o = v.verify(configs[i]);
      local.nodes += o.nodes;
      if (o.won) {
        ++local.configsWon;
        local.maxPlies = std::max(local.maxPlies, o.maxPlies);
        int wm = (o.maxPlies + 1) / 2;
        local.maxWhiteMoves = std::max(local.maxWhiteMoves, wm);
        ++local.whiteMoveHistogram[std::size_t(wm)];
      } else if (local.failures.size() < maxFailures) {
        std::string trace = o.failureReason;
        for (const auto& line : o.trace) trace += "\n" + line;
        local.failures.emplace_back(format_position(configs[i]), trace);
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    report.configsWon += local.configsWon;
    report.maxPlies = std::max(report.maxPlies, local.maxPlies);
    report.maxWhiteMoves = std::max(report.maxWhiteMoves, local.maxWhiteMoves);
    report.nodes += local.nodes;
    if (report.whiteMoveHistogram.size() < local.whiteMoveHistogram.size())
      report.whiteMoveHistogram.resize(local.whiteMoveHistogram.size(), 0);
    for (std::size_t i = 0; i < local.whiteMoveHistogram.size(); ++i)
      report.whiteMoveHistogram[i] += local.whiteMoveHistogram[i];
    for (auto& f : local.failures)
      if (report.failures.size() < maxFailures) report.failures.push_back(std::move(f));
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  report.wallSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace fog
