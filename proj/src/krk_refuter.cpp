#include "fog/krk_refuter.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <thread>

namespace fog {

namespace {

struct Interner {
  std::vector<BGState>& states;
  std::vector<std::uint32_t> table;
  std::uint64_t mask;

  explicit Interner(std::vector<BGState>& s) : states(s) {
    table.assign(1 << 16, UINT32_MAX);
    mask = table.size() - 1;
  }
  void grow() {
    std::vector<std::uint32_t> fresh(table.size() * 2, UINT32_MAX);
    std::uint64_t m = fresh.size() - 1;
    for (std::uint32_t id : table) {
      if (id == UINT32_MAX) continue;
      std::uint64_t h = bg_hash(states[id]) & m;
      while (fresh[h] != UINT32_MAX) h = (h + 1) & m;
      fresh[h] = id;
    }
    table = std::move(fresh);
    mask = m;
  }
  std::uint32_t intern(const BGState& canonical, bool& added) {
    if (states.size() * 2 >= table.size()) grow();
    std::uint64_t h = bg_hash(canonical) & mask;
    while (table[h] != UINT32_MAX) {
      if (states[table[h]] == canonical) {
        added = false;
        return table[h];
      }
      h = (h + 1) & mask;
    }
    std::uint32_t id = std::uint32_t(states.size());
    states.push_back(canonical);
    table[h] = id;
    added = true;
    return id;
  }
};

}  // namespace

void AttractorSolution::rebuild_table() {
  std::size_t cap = 1;
  while (cap < states.size() * 2) cap <<= 1;
  table_.assign(cap, UINT32_MAX);
  tableMask_ = cap - 1;
  for (std::uint32_t id = 0; id < states.size(); ++id) {
    std::uint64_t h = bg_hash(states[id]) & tableMask_;
    while (table_[h] != UINT32_MAX) h = (h + 1) & tableMask_;
    table_[h] = id;
  }
}

std::optional<std::uint32_t> AttractorSolution::lookup(const BGState& canonical) const {
  if (table_.empty()) return std::nullopt;
  std::uint64_t h = bg_hash(canonical) & tableMask_;
  while (table_[h] != UINT32_MAX) {
    if (states[table_[h]] == canonical) return table_[h];
    h = (h + 1) & tableMask_;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> AttractorSolution::find(const BGState& s) const {
  return lookup(bg_canonical(s, n));
}

BGValue AttractorSolution::classify(const BGState& s) const {
  auto id = find(s);
  if (!id) throw ResourceError("state not in the solved graph: " + bg_format(s, n));
  return value[*id];
}

AttractorSolution solve_belief_game(int n, const std::vector<BGState>& roots,
                                    const AttractorOptions& opts) {
  AttractorSolution sol;
  sol.n = n;
  BGEngine eng{n};
  Interner interner(sol.states);

  // Forward closure.
  std::deque<std::uint32_t> frontier;
  auto add = [&](const BGState& raw) {
    bool added = false;
    std::uint32_t id = interner.intern(bg_canonical(raw, n), added);
    if (added) frontier.push_back(id);
    return id;
  };
  for (const BGState& r : roots) add(r);
  std::vector<BGEngine::MoveBranches> wsucc;
  BGEngine::BlackResult bsucc;
  while (!frontier.empty()) {
    if (sol.states.size() > opts.stateBudget)
      throw ResourceError("state budget exceeded; frontier=" + std::to_string(frontier.size()) +
                          " states=" + std::to_string(sol.states.size()));
    std::uint32_t id = frontier.front();
    frontier.pop_front();
    BGState s = sol.states[id];
    ++sol.expansions;
    if (eng.terminal(s) != BGValue::Unknown) continue;
    if (s.toMove == Color::White) {
      eng.white_successors(s, wsucc);
      for (const auto& mb : wsucc)
        for (const BGState& t : mb.succs) add(t);
    } else {
      eng.black_successors(s, bsucc);
      for (const BGState& t : bsucc.succs) add(t);
    }
  }

  // Fixpoint passes: add states to the attractor until stable.
  const std::size_t count = sol.states.size();
  sol.value.assign(count, BGValue::Unknown);
  sol.rank.assign(count, 0);
  sol.winMove.assign(count, Move{});
  std::vector<std::uint32_t> unresolved;
  unresolved.reserve(count);
  for (std::uint32_t id = 0; id < count; ++id) {
    BGValue t = eng.terminal(sol.states[id]);
    if (t != BGValue::Unknown) sol.value[id] = t;
    if (sol.value[id] == BGValue::Unknown) unresolved.push_back(id);
  }

  const int workers = std::max(1, opts.workers);
  // Read-only lookup into the interner during the passes.
  auto lookup_id = [&](const BGState& raw) -> std::uint32_t {
    BGState c = bg_canonical(raw, n);
    std::uint64_t h = bg_hash(c) & interner.mask;
    while (interner.table[h] != UINT32_MAX && !(sol.states[interner.table[h]] == c))
      h = (h + 1) & interner.mask;
    return interner.table[h];
  };
  auto succ_is_win = [&](const BGState& t) {
    BGValue v = eng.terminal(t);
    if (v != BGValue::Unknown) return v == BGValue::WhiteWin;
    std::uint32_t id = lookup_id(t);
    return id != UINT32_MAX && sol.value[id] == BGValue::WhiteWin;
  };
  bool changed = true;
  int pass = 0;
  while (changed) {
    changed = false;
    ++pass;
    std::atomic<std::size_t> cursor{0};
    std::vector<std::vector<std::pair<std::uint32_t, Move>>> wonPerThread(workers);
    auto evaluate = [&](int tid) {
      std::vector<BGEngine::MoveBranches> ws;
      BGEngine::BlackResult bs;
      while (true) {
        std::size_t i = cursor.fetch_add(256);
        if (i >= unresolved.size()) break;
        std::size_t end = std::min(unresolved.size(), i + 256);
        for (; i < end; ++i) {
          std::uint32_t id = unresolved[i];
          const BGState& s = sol.states[id];
          if (s.toMove == Color::White) {
            eng.white_successors(s, ws);
            for (const auto& mb : ws) {
              bool allWin = true;
              for (const BGState& t : mb.succs)
                if (!succ_is_win(t)) {
                  allWin = false;
                  break;
                }
              if (allWin) {
                wonPerThread[tid].push_back({id, mb.move});
                break;
              }
            }
          } else {
            eng.black_successors(s, bs);
            if (bs.blackWinBranch) continue;
            bool allWin = true;
            for (const BGState& t : bs.succs)
              if (!succ_is_win(t)) {
                allWin = false;
                break;
              }
            if (allWin) wonPerThread[tid].push_back({id, Move{}});
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(evaluate, t);
    evaluate(0);
    for (auto& t : pool) t.join();
    for (auto& won : wonPerThread)
      for (auto& [id, mv] : won) {
        if (sol.value[id] != BGValue::Unknown) continue;
        sol.value[id] = BGValue::WhiteWin;
        sol.rank[id] = std::uint16_t(pass);
        sol.winMove[id] = mv;
        changed = true;
      }
    if (changed) {
      unresolved.erase(std::remove_if(unresolved.begin(), unresolved.end(),
                                      [&](std::uint32_t id) {
                                        return sol.value[id] != BGValue::Unknown;
                                      }),
                       unresolved.end());
    }
  }
  sol.passes = pass;
  for (auto& v : sol.value)
    if (v == BGValue::Unknown) v = BGValue::BlackSafe;
  sol.rebuild_table();
  return sol;
}

namespace {

// Value of a successor inside a solved graph; terminals evaluated directly.
BGValue successor_value(const AttractorSolution& sol, const BGEngine& eng, const BGState& t) {
  BGValue v = eng.terminal(t);
  if (v != BGValue::Unknown) return v;
  auto id = sol.find(t);
  return id ? sol.value[*id] : BGValue::Unknown;
}

std::uint16_t successor_rank(const AttractorSolution& sol, const BGEngine& eng, const BGState& t) {
  if (eng.terminal(t) == BGValue::WhiteWin) return 0;
  auto id = sol.find(t);
  return id ? sol.rank[*id] : std::uint16_t(0xFFFF);
}

}  // namespace

WitnessCheckReport check_witnesses(const AttractorSolution& sol) {
  WitnessCheckReport rep;
  BGEngine eng{sol.n};
  std::vector<BGEngine::MoveBranches> ws;
  BGEngine::BlackResult bs;
  for (std::uint32_t id = 0; id < sol.states.size(); ++id) {
    const BGState& s = sol.states[id];
    if (eng.terminal(s) != BGValue::Unknown) continue;
    if (sol.value[id] == BGValue::WhiteWin) {
      ++rep.checkedWin;
      bool ok;
      if (s.toMove == Color::White) {
        // the stored move wins: all branches WhiteWin with smaller rank
        eng.white_successors(s, ws);
        ok = false;
        for (const auto& mb : ws) {
          if (!(mb.move == sol.winMove[id])) continue;
          ok = true;
          for (const BGState& t : mb.succs)
            ok = ok && successor_value(sol, eng, t) == BGValue::WhiteWin &&
                 successor_rank(sol, eng, t) < sol.rank[id];
        }
      } else {
        eng.black_successors(s, bs);
        ok = !bs.blackWinBranch;
        for (const BGState& t : bs.succs)
          ok = ok && successor_value(sol, eng, t) == BGValue::WhiteWin &&
               successor_rank(sol, eng, t) < sol.rank[id];
      }
      if (!ok) {
        rep.ok = false;
        if (rep.firstFailure.empty())
          rep.firstFailure = "win witness fails: " + bg_format(s, sol.n);
      }
    } else {
      ++rep.checkedSafe;
      bool ok;
      if (s.toMove == Color::White) {
        // every move leaves some branch outside the attractor
        eng.white_successors(s, ws);
        ok = true;
        for (const auto& mb : ws) {
          bool escape = false;
          for (const BGState& t : mb.succs)
            if (successor_value(sol, eng, t) != BGValue::WhiteWin) escape = true;
          if (mb.succs.empty()) escape = false;  // outright capture: the move wins
          if (!escape) ok = false;
        }
      } else {
        eng.black_successors(s, bs);
        ok = bs.blackWinBranch;
        for (const BGState& t : bs.succs)
          if (successor_value(sol, eng, t) != BGValue::WhiteWin) ok = true;
      }
      if (!ok) {
        rep.ok = false;
        if (rep.firstFailure.empty())
          rep.firstFailure = "safe witness fails: " + bg_format(s, sol.n);
      }
    }
  }
  return rep;
}

std::vector<BGState> krk_hypothesis_states(int n) {
  std::vector<BGState> out;
  const int nn = n * n;
  // safe space c3-f6 on 8x8; scaled inset for smaller boards
  int lo = 2, hiF = n - 3, hiR = n - 3;
  for (int wk = 0; wk < nn; ++wk)
    for (int wr = 0; wr < nn; ++wr) {
      if (wr == wk) continue;
      for (int f = lo; f <= hiF; ++f)
        for (int r = lo; r <= hiR; ++r) {
          int bk = f + n * r;
          if (bk == wk || bk == wr) continue;
          Position p;
          p.boardSide = std::int8_t(n);
          p.whiteKing = std::int8_t(wk);
          p.whiteRook = {std::int8_t(wr), -1};
          p.blackKing = std::int8_t(bk);
          if (attacked_squares(p, Color::White) & bit(bk)) continue;
          BGState s;
          s.wk = std::int8_t(wk);
          s.wr0 = std::int8_t(wr);
          s.toMove = Color::White;
          s.belief = bit(bk);
          out.push_back(s);
        }
    }
  return out;
}

namespace {

constexpr int sq8(int f, int r) { return f + 8 * r; }

Mask rect8(int f0, int f1, int r0, int r1) {
  Mask m = 0;
  for (int f = f0; f <= f1; ++f)
    for (int r = r0; r <= r1; ++r) m |= bit(sq8(f, r));
  return m;
}

BGState krk_state(int wk, int wr, Mask belief) {
  BGState s;
  s.wk = std::int8_t(wk);
  s.wr0 = std::int8_t(wr);
  s.toMove = Color::White;
  s.belief = belief;
  return s;
}

Mask white_kr_view(int wk, int wr) {
  Position p;
  p.whiteKing = std::int8_t(wk);
  p.whiteRook = {std::int8_t(wr), -1};
  p.blackKing = -1;
  return white_view(p);
}

}  // namespace

std::vector<LemmaFamily> krk_lemma_families() {
  std::vector<LemmaFamily> out;
  {
    // White king on d4, rook on the D file above or the 4th rank to the right;
    // the Black king hides on a1-b4 / c1-d2.
    LemmaFamily fam{"lemma_star", {}};
    const Mask region = rect8(0, 1, 0, 3) | rect8(2, 3, 0, 1);
    const int wk = sq8(3, 3);
    for (int wr : {sq8(3, 4), sq8(3, 5), sq8(3, 6), sq8(3, 7), sq8(4, 3), sq8(5, 3), sq8(6, 3),
                   sq8(7, 3)}) {
      Mask belief = region & ~white_kr_view(wk, wr) & ~bit(wk) & ~bit(wr);
      if (belief) fam.states.push_back(krk_state(wk, wr, belief));
    }
    out.push_back(std::move(fam));
  }
  {
    // Rook on e3-h8, White king anywhere outside a1-e3 and out of touch;
    // Black king somewhere on a1-d2.
    LemmaFamily fam{"lemma_star2", {}};
    const Mask region = rect8(0, 3, 0, 1);
    const Mask kingExcl = rect8(0, 4, 0, 2);
    for (int wk = 0; wk < 64; ++wk) {
      if (kingExcl & bit(wk)) continue;
      if (king_attacks(8, wk) & region) continue;
      for (int f = 4; f <= 7; ++f)
        for (int r = 2; r <= 7; ++r) {
          int wr = sq8(f, r);
          if (wr == wk) continue;
          Mask belief = region & ~white_kr_view(wk, wr);
          if (belief) fam.states.push_back(krk_state(wk, wr, belief));
        }
    }
    out.push_back(std::move(fam));
  }
  {
    // The three clusters the Black king shuttles between.
    LemmaFamily fam{"lemma_star3", {}};
    const Mask clusters[3] = {
        bit(sq8(2, 0)) | bit(sq8(2, 1)) | bit(sq8(4, 0)) | bit(sq8(4, 1)),
        bit(sq8(3, 0)) | bit(sq8(3, 1)) | bit(sq8(5, 0)) | bit(sq8(5, 1)),
        bit(sq8(3, 0)) | bit(sq8(3, 1)) | bit(sq8(4, 0)) | bit(sq8(4, 1))};
    for (Mask cluster : clusters)
      for (int wk = 0; wk < 64; ++wk) {
        if (cluster & bit(wk)) continue;
        for (int wr = 0; wr < 64; ++wr) {
          if (wr == wk || (cluster & bit(wr))) continue;
          Position p;
          p.whiteKing = std::int8_t(wk);
          p.whiteRook = {std::int8_t(wr), -1};
          p.blackKing = -1;
          if (attacked_squares(p, Color::White) & cluster) continue;
          fam.states.push_back(krk_state(wk, wr, cluster));
        }
      }
    out.push_back(std::move(fam));
  }
  {
    LemmaFamily fam{"situation_x1", {}};
    Mask belief = bit(sq8(0, 0)) | bit(sq8(1, 0)) | bit(sq8(2, 0)) | bit(sq8(3, 0)) |
                  bit(sq8(0, 2)) | bit(sq8(1, 2)) | bit(sq8(0, 3)) | bit(sq8(1, 3));
    fam.states.push_back(krk_state(sq8(3, 2), sq8(5, 1), belief));
    out.push_back(std::move(fam));
  }
  {
    LemmaFamily fam{"situation_x2", {}};
    Mask belief = rect8(0, 1, 2, 3);
    for (int f = 4; f <= 7; ++f)
      fam.states.push_back(krk_state(sq8(3, 3), sq8(f, 1), belief));
    out.push_back(std::move(fam));
  }
  {
    LemmaFamily fam{"situation_x3", {}};
    Mask belief = rect8(0, 1, 1, 3);
    for (int f = 4; f <= 7; ++f)
      fam.states.push_back(krk_state(sq8(3, 3), sq8(f, 0), belief));
    out.push_back(std::move(fam));
  }
  return out;
}

OneMoveReport no_immediate_win_check() {
  OneMoveReport rep;
  const int n = 8;
  for (int wk = 0; wk < 64; ++wk)
    for (int wr = 0; wr < 64; ++wr) {
      if (wr == wk) continue;
      for (int f = 1; f <= 6; ++f)
        for (int r = 1; r <= 6; ++r) {
          int bk = sq8(f, r);
          if (bk == wk || bk == wr) continue;
          ++rep.positionsChecked;
          Position p;
          p.whiteKing = std::int8_t(wk);
          p.whiteRook = {std::int8_t(wr), -1};
          p.blackKing = std::int8_t(bk);
          p.sideToMove = Color::Black;
          bool safeReply = false;
          for (Move m : legal_moves(p, Color::Black)) {
            if (m.to == wk) { safeReply = true; break; }  // capturing the king wins outright
            auto [q, st] = apply_move(p, m);
            if (st == GameStatus::WhiteWon) continue;     // cannot happen for Black moves
            if (q.whiteRook[0] < 0) {
              // rook captured; safe unless the White king recaptures
              if (!(king_attacks(n, q.whiteKing) & bit(m.to))) { safeReply = true; break; }
              continue;
            }
            if (!(attacked_squares(q, Color::White) & bit(m.to))) { safeReply = true; break; }
          }
          if (!safeReply) {
            ++rep.counterexamples;
            if (rep.firstCounterexample.empty()) rep.firstCounterexample = format_position(p);
          }
        }
    }
  return rep;
}

std::string solver_line(const BGState& s, BGValue v, int n) {
  std::string line = "WK" + square_name(s.wk, n) + " WR" +
                     (s.wr0 >= 0 ? square_name(s.wr0, n) : "-") + ' ';
  line += s.toMove == Color::White ? 'w' : 'b';
  line += " B=";
  std::string b = "{";
  bool first = true;
  for_each_square(s.belief, [&](int sqr) {
    if (!first) b += ',';
    b += square_name(sqr, n);
    first = false;
  });
  line += b + "}";
  line += v == BGValue::WhiteWin ? " -> WIN" : " -> SAFE";
  return line;
}

}  // namespace fog
