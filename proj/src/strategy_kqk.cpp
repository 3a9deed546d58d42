#include "fog/strategy_kqk.hpp"

#include <optional>

namespace fog {

namespace {

constexpr int N = 8;
constexpr int sq(int f, int r) { return f + N * r; }
constexpr int F(int s) { return s % N; }
constexpr int R(int s) { return s / N; }

Mask rect(int f0, int f1, int r0, int r1) {
  Mask m = 0;
  for (int f = f0; f <= f1; ++f)
    for (int r = r0; r <= r1; ++r) m |= bit(sq(f, r));
  return m;
}

Mask files_mask(int f0, int f1) { return rect(f0, f1, 0, N - 1); }
Mask ranks_mask(int r0, int r1) { return rect(0, N - 1, r0, r1); }

bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

const Mask kCenter = bit(sq(3, 3)) | bit(sq(3, 4)) | bit(sq(4, 3)) | bit(sq(4, 4));
const Mask kRegionDH15 = rect(3, 7, 0, 4);
const Mask kRegionDH48 = rect(3, 7, 3, 7);
const Mask kRegionEH68 = rect(4, 7, 5, 7);
const Mask kRegionAD58 = rect(0, 3, 4, 7);
const Mask kLemma4Case1 =
    bit(sq(0, 0)) | bit(sq(1, 0)) | bit(sq(1, 1)) | bit(sq(5, 0)) | bit(sq(5, 1)) | bit(sq(6, 0));

void require(bool cond, const char* msg) {
  if (!cond) throw StrategyError(msg);
}

// Oriented working view of the position.
struct Frame {
  Transform t;
  Position pos;  // oriented; blackKing kept when the belief is a singleton
  Mask belief = 0;
  int wk = -1, wq = -1;
};

Frame make_frame(const Position& realPos, Mask realBelief, Transform t) {
  Frame f;
  f.t = t;
  f.pos = transformed(realPos, t);
  f.belief = t.apply_mask(realBelief, N);
  f.wk = f.pos.whiteKing;
  f.wq = f.pos.whiteQueen;
  return f;
}

Move emit(const Frame& f, int from, int to) {
  Transform inv = f.t.inverse();
  return Move{std::int8_t(inv.apply(from, N)), std::int8_t(inv.apply(to, N))};
}

[[noreturn]] void reject(const Frame& f, int from, int to, const char* msg) {
  throw StrategyError(std::string(msg) + " [" + move_name(Move{std::int8_t(from), std::int8_t(to)}, N) +
                      " oriented, view=" + std::to_string(f.t.id) + "]");
}

Move play_king(const Frame& f, int to) {
  if (!is_legal_move(f.pos, Color::White, Move{std::int8_t(f.wk), std::int8_t(to)}))
    reject(f, f.wk, to, "scripted king move illegal");
  if (f.belief & bit(to)) reject(f, f.wk, to, "king step onto candidate square");
  if (king_attacks(N, to) & f.belief) reject(f, f.wk, to, "king step next to candidate");
  return emit(f, f.wk, to);
}

Move play_queen(const Frame& f, int to, bool skipSafety = false) {
  if (!is_legal_move(f.pos, Color::White, Move{std::int8_t(f.wq), std::int8_t(to)}))
    reject(f, f.wq, to, "scripted queen move illegal");
  if (f.belief & bit(to)) reject(f, f.wq, to, "queen move onto candidate square");
  if (!skipSafety) {
    bool defended = (king_attacks(N, f.wk) & bit(to)) != 0;
    if (!defended && (king_attacks(N, to) & f.belief))
      reject(f, f.wq, to, "queen lands undefended next to candidate");
  }
  return emit(f, f.wq, to);
}

std::optional<Move> capture_if_known(const Position& pos, const BeliefState& belief) {
  if (!belief.singleton()) return std::nullopt;
  int s = lowest_square(belief.candidates);
  Position p = pos;
  p.blackKing = std::int8_t(s);
  const int n = p.n();
  const Mask occ = p.occupied();
  if (king_attacks(n, p.whiteKing) & bit(s)) return Move{p.whiteKing, std::int8_t(s)};
  if (p.whiteQueen >= 0 && (queen_attacks(n, p.whiteQueen, occ) & bit(s)))
    return Move{p.whiteQueen, std::int8_t(s)};
  for (auto r : p.whiteRook)
    if (r >= 0 && (rook_attacks(n, r, occ) & bit(s))) return Move{r, std::int8_t(s)};
  return std::nullopt;
}

// Lowest transform mapping the king to `target` and satisfying `pred`.
template <class Pred>
std::optional<Transform> find_view(const Position& pos, Mask belief, int target, Pred pred) {
  for (std::uint8_t id = 0; id < Transform::Count; ++id) {
    Transform t{id};
    if (t.apply(pos.whiteKing, N) != target) continue;
    Frame f = make_frame(pos, belief, t);
    if (pred(f)) return t;
  }
  return std::nullopt;
}

}  // namespace

KqkState KqkStrategy::initial(const Position&) const { return KqkState{}; }

std::string KqkStrategy::phase_name(const State& st) const {
  if (st.mode == KqkMode::Opening) return "opening";
  static const char* names[] = {"pairQ",  "pairK",  "intK",   "intQ",   "transK", "transQ",
                                "rotK1",  "rotK2",  "chaseQ", "chaseK", "sabQ",   "sabK"};
  return std::string("sweep") + std::to_string(st.seal) + "." + names[std::size_t(st.step)];
}

Move KqkStrategy::next(State& st, const Position& pos, const BeliefState& belief) const {
  require(pos.n() == N, "kqk strategy needs an 8x8 board");
  require(belief.candidates != 0, "empty belief");
  if (auto cap = capture_if_known(pos, belief)) return *cap;
  if (st.mode == KqkMode::Opening) return opening_move(st, pos, belief);
  return sweep_move(st, pos, belief);
}

Move KqkStrategy::opening_move(State& st, const Position& pos, const BeliefState& belief) const {
  const int wk = pos.whiteKing, wq = pos.whiteQueen;
  require(wq >= 0, "queen required");
  const Mask beliefMask = belief.candidates;

  // Corner configuration: enter the sweep (normalizing a diagonal queen).
  {
    auto corner = find_view(pos, beliefMask, sq(0, 0), [&](const Frame& f) {
      return f.wq == sq(0, 1);
    });
    if (!corner)
      corner = find_view(pos, beliefMask, sq(0, 0), [&](const Frame& f) {
        return f.wq == sq(1, 1);
      });
    if (corner) {
      Frame f = make_frame(pos, beliefMask, *corner);
      if (f.wq == sq(1, 1)) return play_queen(f, sq(0, 1));  // defended slide along rank 2
      st.view = *corner;
      st.mode = KqkMode::Sweep;
      st.seal = 1;
      st.step = KqkStep::PairQueen;
      return sweep_move(st, pos, belief);
    }
  }

  // King on a central square: leave the center per the region of the belief.
  if (kCenter & bit(wk)) {
    const int d5 = sq(3, 4);
    if (auto t = find_view(pos, beliefMask, d5,
                           [&](const Frame& f) { return subset(f.belief, kRegionDH15); })) {
      Frame f = make_frame(pos, beliefMask, *t);
      if (kLemma4Case1 & bit(f.wq)) return play_king(f, sq(2, 4));          // toward the queen
      if (f.wq == sq(3, 5) || f.wq == sq(3, 6)) return play_king(f, sq(2, 5));
      return play_king(f, sq(3, 5));
    }
    if (auto t = find_view(pos, beliefMask, d5, [&](const Frame& f) {
          return f.wq == sq(3, 3) && subset(f.belief, kRegionDH48);
        })) {
      Frame f = make_frame(pos, beliefMask, *t);
      return play_king(f, sq(2, 3));
    }
    if (auto t = find_view(pos, beliefMask, d5,
                           [&](const Frame& f) { return subset(f.belief, kRegionEH68); })) {
      Frame f = make_frame(pos, beliefMask, *t);
      if (f.wq == sq(3, 3)) return play_king(f, sq(2, 3));
      return play_king(f, sq(3, 3));
    }
    if (auto t = find_view(pos, beliefMask, d5,
                           [&](const Frame& f) { return subset(f.belief, kRegionAD58); })) {
      Frame f = make_frame(pos, beliefMask, *t);
      if (f.wq == sq(4, 3)) return play_king(f, sq(4, 4));
      return play_king(f, sq(4, 3));
    }
    throw StrategyError("center exit: no region case applies");
  }

  const bool queenAdjacent = (king_attacks(N, wk) & bit(wq)) != 0;

  // Corner march (king off-center; queen alongside, or the case-1 interim
  // where the queen already sits on the edge file two squares away).
  {
    auto march = find_view(pos, beliefMask, wk, [&](const Frame&) { return true; });
    std::optional<Transform> best;
    for (std::uint8_t id = 0; id < Transform::Count; ++id) {
      Transform t{id};
      int k = t.apply(wk, N);
      if (F(k) <= R(k) && R(k) <= 3) {
        best = t;
        break;
      }
    }
    (void)march;
    require(best.has_value(), "corner march: no orientation");
    Frame f = make_frame(pos, beliefMask, *best);
    const int kf = F(f.wk), kr = R(f.wk);
    const bool case1Interim = kf == 2 && f.wq == sq(0, kr);
    if (queenAdjacent || case1Interim) {
      if (kf == 2) {
        if (f.wq == sq(0, kr)) return play_king(f, sq(1, kr));
        if (f.wq == sq(1, kr)) return play_queen(f, sq(0, kr));
        // bring the queen to (1, kr) while staying defended
        goto reposition;
      }
      if (kf == 1) {
        if (f.wq == sq(0, kr)) return play_queen(f, sq(1, kr - 1));
        return play_king(f, sq(0, kr));
      }
      // kf == 0, kr >= 1 (a corner was handled above)
      if (f.wq == sq(1, kr - 1)) return play_king(f, sq(0, kr - 1));
      goto reposition;
    reposition: {
      int target = kf == 2 ? sq(1, kr) : sq(1, kr - 1);
      if (!(f.pos.occupied() & bit(target)) &&
          is_legal_move(f.pos, Color::White, Move{std::int8_t(f.wq), std::int8_t(target)}))
        return play_queen(f, target);
      // one defended stop in between (exists by the queen-mobility lemma)
      Mask around = king_attacks(N, f.wk) & ~f.pos.occupied();
      std::optional<Move> via;
      for_each_square(around, [&](int m) {
        if (via) return;
        if (!is_legal_move(f.pos, Color::White, Move{std::int8_t(f.wq), std::int8_t(m)})) return;
        Position probe = f.pos;
        probe.whiteQueen = std::int8_t(m);
        if (is_legal_move(probe, Color::White, Move{std::int8_t(m), std::int8_t(target)}))
          via = Move{std::int8_t(f.wq), std::int8_t(m)};
      });
      require(via.has_value(), "queen reposition stuck");
      return play_queen(f, via->to);
    }
    }
  }

  // Queen not yet adjacent: join the king in one move when possible.
  {
    Frame f = make_frame(pos, beliefMask, Transform{0});
    Mask targets = king_attacks(N, wk) & ~pos.occupied();
    std::optional<Move> oneMove;
    for_each_square(targets, [&](int tsq) {
      if (oneMove) return;
      if (is_legal_move(f.pos, Color::White, Move{std::int8_t(wq), std::int8_t(tsq)}))
        oneMove = Move{std::int8_t(wq), std::int8_t(tsq)};
    });
    if (oneMove) return play_queen(f, oneMove->to);
  }

  // Two-leg route: orient the queen up-right of the king, pick the waypoint
  // whose neighborhood is candidate-free.
  for (std::uint8_t id = 0; id < Transform::Count; ++id) {
    Frame f = make_frame(pos, beliefMask, Transform{id});
    int kf = F(f.wk), kr = R(f.wk), qf = F(f.wq), qr = R(f.wq);
    if (qf - kf < 2 || qr - kr < 2) continue;
    for (int w : {sq(kf + 1, qr), sq(qf, kr + 1)}) {
      if (king_attacks(N, w) & f.belief) continue;
      if (f.belief & bit(w)) continue;
      if (!is_legal_move(f.pos, Color::White, Move{std::int8_t(f.wq), std::int8_t(w)})) continue;
      return play_queen(f, w);
    }
    throw StrategyError("queen route: both waypoints threatened");
  }
  throw StrategyError("opening: no rule applies");
}

Move KqkStrategy::sweep_move(State& st, const Position& pos, const BeliefState& belief) const {
  Frame f = make_frame(pos, belief.candidates, st.view);
  for (int guard = 0; guard < 6; ++guard) {
    const int p = st.seal;
    const int qf = F(f.wq), qr = R(f.wq);
    const int kf = F(f.wk), kr = R(f.wk);
    switch (st.step) {
      case KqkStep::PairQueen: {
        require(qr == p, "pairQ: queen off seal rank");
        if (p <= 3 && qf == 4 && subset(f.belief, files_mask(5, 7))) {
          st.view = st.view.then(Transform{3});  // (f,r) -> (7-r, f)
          st.seal = 4;
          f = make_frame(pos, belief.candidates, st.view);
          st.step = R(f.wk) == 5 ? KqkStep::RotKing1 : KqkStep::RotKing2;
          continue;
        }
        if (qf == 7) {
          st.step = KqkStep::TransKing;
          continue;
        }
        Move m = play_queen(f, sq(qf + 1, p));
        st.step = KqkStep::PairKing;
        return m;
      }
      case KqkStep::PairKing: {
        require(qr == p, "pairK: queen off seal rank");
        if (f.belief & files_mask(0, qf)) {
          if (p == 6) {
            st.step = KqkStep::ChaseQueenL;
          } else if (sabotage && p == 5) {
            st.step = KqkStep::SabQueen;
          } else {
            st.step = KqkStep::IntKing;
          }
          continue;
        }
        if (qf == 7) {
          st.step = KqkStep::TransKing;
          continue;
        }
        Move m = p == 1 ? play_king(f, sq(qf, 0)) : play_king(f, sq(qf + 1, p - 1));
        st.step = KqkStep::PairQueen;
        return m;
      }
      case KqkStep::IntKing: {
        Move m;
        if (p == 1) m = play_king(f, sq(qf - 1, 1));
        else if (qf <= 6) m = play_king(f, sq(qf + 1, p));
        else m = play_king(f, sq(qf - 1, p));  // right edge: mirrored cover
        st.step = KqkStep::IntQueen;
        return m;
      }
      case KqkStep::IntQueen: {
        if (!subset(f.belief, ranks_mask(p + 2, 7))) {
          // someone reached the would-be seal rank: abort the raise, drop the
          // king back and re-sweep at the current seal
          Move m = play_king(f, sq(kf, p - 1));
          st.step = KqkStep::TransKing;
          return m;
        }
        Move m = play_queen(f, sq(qf, p + 1));
        st.seal = std::int8_t(p + 1);
        st.step = kf == qf - 1 ? KqkStep::TransQueen : KqkStep::TransKing;
        return m;
      }
      case KqkStep::SabQueen: {  // broken order: queen up with no cover
        Move m = play_queen(f, sq(qf, p + 1), /*skipSafety=*/true);
        st.step = KqkStep::SabKing;
        return m;
      }
      case KqkStep::SabKing: {
        Move m = play_king(f, sq(qf + 1, p));
        st.seal = std::int8_t(p + 1);
        st.step = KqkStep::TransKing;
        return m;
      }
      case KqkStep::TransKing: {
        require(kr == p - 1, "transK: king off rank");
        if (qf == 0 && kf == 0) {
          st.step = p == 1 ? KqkStep::PairQueen : KqkStep::PairKing;
          continue;
        }
        if (kf == qf - 1) {
          st.step = KqkStep::TransQueen;
          continue;
        }
        require(kf >= qf, "transK: king left of queen");
        Move m = play_king(f, sq(kf - 1, p - 1));
        st.step = kf - 1 == qf - 1 ? KqkStep::TransQueen : KqkStep::TransKing;
        return m;
      }
      case KqkStep::TransQueen: {
        require(kf == qf - 1 && kr == p - 1, "transQ: king not posted");
        Move m = play_queen(f, sq(qf - 1, p));
        st.step = qf - 1 == 0 ? (p == 1 ? KqkStep::PairQueen : KqkStep::PairKing)
                              : KqkStep::TransKing;
        return m;
      }
      case KqkStep::RotKing1: {
        require(kr == 5 && kf == qf + 1, "rotK1 geometry");
        Move m = play_king(f, sq(kf, 4));
        st.step = KqkStep::RotKing2;
        return m;
      }
      case KqkStep::RotKing2: {
        require(kr == 4 && kf == qf + 1, "rotK2 geometry");
        Move m = play_king(f, sq(qf, 3));
        st.step = KqkStep::TransKing;
        return m;
      }
      case KqkStep::ChaseQueenL: {
        require(p == 6 && qr == 6, "chaseQ geometry");
        Move m = play_queen(f, sq(qf - 1, 6));
        st.step = KqkStep::ChaseKingL;
        return m;
      }
      case KqkStep::ChaseKingL: {
        require(kr == 5, "chaseK geometry");
        Move m = play_king(f, sq(kf - 1, 5));
        st.step = KqkStep::PairKing;
        return m;
      }
    }
  }
  throw StrategyError("sweep: no progress");
}

}  // namespace fog
