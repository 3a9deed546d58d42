#include "fog/strategy_krrk.hpp"

#include <algorithm>
#include <cstdlib>
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

void require(bool cond, const char* msg) {
  if (!cond) throw StrategyError(msg);
}

struct Frame {
  Transform t;
  Position pos;
  Mask belief = 0;
  int wk = -1, r0 = -1, r1 = -1;
};

Frame make_frame(const Position& realPos, Mask realBelief, Transform t) {
  Frame f;
  f.t = t;
  f.pos = transformed(realPos, t);
  f.belief = t.apply_mask(realBelief, N);
  f.wk = f.pos.whiteKing;
  f.r0 = f.pos.whiteRook[0];
  f.r1 = f.pos.whiteRook[1];
  return f;
}

Move emit(const Frame& f, int from, int to) {
  Transform inv = f.t.inverse();
  return Move{std::int8_t(inv.apply(from, N)), std::int8_t(inv.apply(to, N))};
}

Move play_king(const Frame& f, int to) {
  require(is_legal_move(f.pos, Color::White, Move{std::int8_t(f.wk), std::int8_t(to)}),
          "scripted king move illegal");
  require(!(f.belief & bit(to)), "king step onto candidate square");
  require((king_attacks(N, to) & f.belief) == 0, "king step next to candidate");
  return emit(f, f.wk, to);
}

Move play_rook(const Frame& f, int from, int to) {
  require(is_legal_move(f.pos, Color::White, Move{std::int8_t(from), std::int8_t(to)}),
          "scripted rook move illegal");
  require(!(f.belief & bit(to)), "rook move onto candidate square");
  bool defended = (king_attacks(N, f.wk) & bit(to)) != 0;
  if (!defended) {
    int other = from == f.r0 ? f.r1 : f.r0;
    if (other >= 0) {
      Mask occ = f.pos.occupied() & ~bit(from);
      defended = (rook_attacks(N, other, occ | bit(to)) & bit(to)) != 0;
    }
  }
  require(defended || (king_attacks(N, to) & f.belief) == 0,
          "rook lands unprotected next to candidate");
  return emit(f, from, to);
}

std::optional<Move> capture_if_known(const Position& pos, const BeliefState& belief) {
  if (!belief.singleton()) return std::nullopt;
  int s = lowest_square(belief.candidates);
  Position p = pos;
  p.blackKing = std::int8_t(s);
  const Mask occ = p.occupied();
  if (king_attacks(N, p.whiteKing) & bit(s)) return Move{p.whiteKing, std::int8_t(s)};
  for (auto r : p.whiteRook)
    if (r >= 0 && (rook_attacks(N, r, occ) & bit(s))) return Move{r, std::int8_t(s)};
  if (p.whiteQueen >= 0 && (queen_attacks(N, p.whiteQueen, occ) & bit(s)))
    return Move{p.whiteQueen, std::int8_t(s)};
  return std::nullopt;
}

int chebyshev(int a, int b) {
  return std::max(std::abs(F(a) - F(b)), std::abs(R(a) - R(b)));
}

int dist_to_belief(int sqr, Mask belief) {
  int best = 99;
  for_each_square(belief, [&](int c) { best = std::min(best, chebyshev(sqr, c)); });
  return best;
}

bool rook_defended(const Position& pos, int rookSq) {
  if (king_attacks(N, pos.whiteKing) & bit(rookSq)) return true;
  for (auto r : pos.whiteRook)
    if (r >= 0 && r != rookSq && (rook_attacks(N, r, pos.occupied()) & bit(rookSq))) return true;
  return false;
}

}  // namespace

KrrkState KrrkStrategy::initial(const Position&) const { return KrrkState{}; }

std::string KrrkStrategy::phase_name(const State& st) const {
  static const char* names[] = {"align", "walk", "descend", "stairR1", "stairR2", "stairK",
                                "finR2", "finR1"};
  return names[std::size_t(st.step)];
}

Move KrrkStrategy::next(State& st, const Position& pos, const BeliefState& belief) const {
  require(pos.n() == N, "krrk strategy needs an 8x8 board");
  require(belief.candidates != 0, "empty belief");
  if (auto cap = capture_if_known(pos, belief)) return *cap;

  // An unprotected rook in king-reach of a candidate must not stand still.
  {
    for (auto r : pos.whiteRook) {
      if (r < 0) continue;
      if (!(king_attacks(N, r) & belief.candidates)) continue;
      if (rook_defended(pos, r)) continue;
      std::optional<Move> best;
      int bestDist = -1;
      Mask dests = rook_attacks(N, r, pos.occupied()) & ~pos.occupied();
      for_each_square(dests, [&](int d) {
        if (belief.candidates & bit(d)) return;
        bool safe = (king_attacks(N, d) & belief.candidates) == 0 ||
                    (king_attacks(N, pos.whiteKing) & bit(d));
        if (!safe) return;
        int dist = dist_to_belief(d, belief.candidates);
        if (dist > bestDist) {
          bestDist = dist;
          best = Move{std::int8_t(r), std::int8_t(d)};
        }
      });
      require(best.has_value(), "threatened rook has no refuge");
      return *best;
    }
  }

  for (int guard = 0; guard < 4; ++guard) {
    switch (st.step) {
      case KrrkStep::Align: {
        // Already fenced: rooks share a rank, king below, candidates above.
        std::optional<Transform> ready;
        for (std::uint8_t id = 0; id < Transform::Count && !ready; ++id) {
          Frame f = make_frame(pos, belief.candidates, Transform{id});
          if (f.r0 < 0 || f.r1 < 0) throw StrategyError("krrk needs two rooks");
          int rr = R(f.r0);
          if (R(f.r1) != rr) continue;
          if (R(f.wk) >= rr) continue;
          Mask below = rr > 0 ? rect(0, N - 1, 0, rr - 1) : 0;
          Mask onLine = rect(0, N - 1, rr, rr);
          if (f.belief & (below | onLine)) continue;
          if (F(f.wk) > 3) continue;  // prefer the near corner
          ready = Transform{id};
        }
        if (!ready) {
          for (std::uint8_t id = 0; id < Transform::Count && !ready; ++id) {
            Frame f = make_frame(pos, belief.candidates, Transform{id});
            int rr = R(f.r0);
            if (R(f.r1) != rr || R(f.wk) >= rr) continue;
            Mask below = rr > 0 ? rect(0, N - 1, 0, rr - 1) : 0;
            if (f.belief & (below | rect(0, N - 1, rr, rr))) continue;
            ready = Transform{id};
          }
        }
        if (ready) {
          st.view = *ready;
          st.step = KrrkStep::Walk;
          continue;
        }
        return align_move(pos, belief);
      }
      case KrrkStep::Walk: {
        Frame f = make_frame(pos, belief.candidates, st.view);
        if (f.wk == sq(0, 0)) {
          st.step = KrrkStep::Descend;
          continue;
        }
        int kf = F(f.wk), kr = R(f.wk);
        int steps[3];
        int nsteps = 0;
        if (kf > 0 && kr > 0) steps[nsteps++] = sq(kf - 1, kr - 1);
        if (kf > 0) steps[nsteps++] = sq(kf - 1, kr);
        if (kr > 0) steps[nsteps++] = sq(kf, kr - 1);
        for (int i = 0; i < nsteps; ++i) {
          int d = steps[i];
          if (f.pos.occupied() & bit(d)) continue;
          if (f.belief & bit(d)) continue;
          if (king_attacks(N, d) & f.belief) continue;
          return play_king(f, d);
        }
        throw StrategyError("king walk blocked");
      }
      case KrrkStep::Descend: {
        Frame f = make_frame(pos, belief.candidates, st.view);
        int a = f.r0, b = f.r1;
        if (F(b) == 0 || a == sq(1, 0)) std::swap(a, b);  // a aims for a2, b for b1
        if (a == sq(0, 1) && b == sq(1, 0)) {
          st.step = KrrkStep::StairR1;
          continue;
        }
        struct Leg {
          int from, to;
        };
        Leg legs[4];
        int nlegs = 0;
        if (a != sq(0, 1)) {
          if (F(a) != 0 && R(a) != 1) legs[nlegs++] = {a, sq(F(a), 1)};
          else legs[nlegs++] = {a, sq(0, 1)};
        }
        if (b != sq(1, 0)) {
          if (R(b) != 0 && F(b) != 1) legs[nlegs++] = {b, sq(F(b), 0)};
          else legs[nlegs++] = {b, sq(1, 0)};
        }
        for (int i = 0; i < nlegs; ++i) {
          Move m{std::int8_t(legs[i].from), std::int8_t(legs[i].to)};
          if (!is_legal_move(f.pos, Color::White, m)) continue;
          return play_rook(f, legs[i].from, legs[i].to);
        }
        throw StrategyError("descend blocked");
      }
      case KrrkStep::StairR1: {
        Frame f = make_frame(pos, belief.candidates, st.view);
        int k = R(f.wk);
        require(F(f.wk) == 0, "stairs: king off the a-file");
        int r1 = sq(0, k + 1), r2 = sq(1, k);
        require((f.r0 == r1 || f.r1 == r1) && (f.r0 == r2 || f.r1 == r2), "stairs shape");
        Move m = play_rook(f, r1, sq(0, k + 2));
        st.step = KrrkStep::StairR2;
        return m;
      }
      case KrrkStep::StairR2: {
        Frame f = make_frame(pos, belief.candidates, st.view);
        int k = R(f.wk);
        Move m = play_rook(f, sq(1, k), sq(1, k + 1));
        st.step = KrrkStep::StairK;
        return m;
      }
      case KrrkStep::StairK: {
        Frame f = make_frame(pos, belief.candidates, st.view);
        int k = R(f.wk);
        Move m = play_king(f, sq(0, k + 1));
        st.step = k + 1 >= 5 ? KrrkStep::FinR2 : KrrkStep::StairR1;
        return m;
      }
      case KrrkStep::FinR2: {
        Frame f = make_frame(pos, belief.candidates, st.view);
        require(f.wk == sq(0, 5), "finish shape");
        Move m = play_rook(f, sq(1, 5), sq(1, 6));
        st.step = KrrkStep::FinR1;
        return m;
      }
      case KrrkStep::FinR1: {
        Frame f = make_frame(pos, belief.candidates, st.view);
        Move m = play_rook(f, sq(0, 6), sq(0, 7));
        st.step = KrrkStep::FinR1;  // afterwards every reply is visible
        return m;
      }
    }
  }
  throw StrategyError("krrk: no progress");
}

Move KrrkStrategy::align_move(const Position& pos, const BeliefState& belief) const {
  // Choose a sealing line: king strictly on one side, every candidate
  // strictly on the other, at comfortable distance from the candidates.
  struct Line {
    bool isRank;
    int index;
    int dist;
  };
  std::optional<Line> best;
  auto consider = [&](bool isRank, int idx) {
    auto coord = [&](int s) { return isRank ? R(s) : F(s); };
    int kc = coord(pos.whiteKing);
    if (kc == idx) return;
    bool kingBelow = kc < idx;
    int dist = 99;
    bool split = true;
    for_each_square(belief.candidates, [&](int c) {
      int cc = coord(c);
      if (cc == idx || (cc < idx) == kingBelow) split = false;
      dist = std::min(dist, std::abs(cc - idx));
    });
    if (!split || dist < 3) return;
    if (!best || dist > best->dist) best = Line{isRank, idx, dist};
  };
  for (int i = 0; i < N; ++i) consider(true, i);
  for (int i = 0; i < N; ++i) consider(false, i);

  Frame f = make_frame(pos, belief.candidates, Transform{0});
  if (best) {
    auto onLine = [&](int s) { return (best->isRank ? R(s) : F(s)) == best->index; };
    int rooks[2] = {pos.whiteRook[0], pos.whiteRook[1]};
    int targets[2];
    for (int i = 0; i < 2; ++i)
      targets[i] = best->isRank ? sq(F(rooks[i]), best->index) : sq(best->index, R(rooks[i]));
    if (targets[0] == targets[1]) {
      // rooks share the perpendicular coordinate; shift the second one over
      int fidx = best->isRank ? F(rooks[1]) : R(rooks[1]);
      int alt = fidx + 1 < N ? fidx + 1 : fidx - 1;
      targets[1] = best->isRank ? sq(alt, best->index) : sq(best->index, alt);
    }
    for (int i = 0; i < 2; ++i) {
      if (onLine(rooks[i]) && rooks[i] == targets[i]) continue;
      Move m{std::int8_t(rooks[i]), std::int8_t(targets[i])};
      if (!is_legal_move(pos, Color::White, m)) continue;
      return play_rook(f, rooks[i], targets[i]);
    }
    // fall through to a king step when both rook paths are blocked
  }
  // No usable line yet: walk the king away from the candidates.
  std::optional<Move> flee;
  int bestDist = -1;
  for_each_square(king_attacks(N, pos.whiteKing) & ~pos.occupied(), [&](int d) {
    if (belief.candidates & bit(d)) return;
    if (king_attacks(N, d) & belief.candidates) return;
    int dist = dist_to_belief(d, belief.candidates);
    if (dist > bestDist) {
      bestDist = dist;
      flee = Move{pos.whiteKing, std::int8_t(d)};
    }
  });
  require(flee.has_value(), "align: no line and no king refuge");
  return *flee;
}

}  // namespace fog
