#include "fog/belief_game.hpp"

#include <algorithm>
#include <sstream>

namespace fog {

std::uint64_t bg_hash(const BGState& s) {
  std::uint64_t h = s.belief;
  h ^= std::uint64_t(std::uint8_t(s.wk)) << 0;
  h ^= std::uint64_t(std::uint8_t(s.wq)) << 8;
  h ^= std::uint64_t(std::uint8_t(s.wr0)) << 16;
  h ^= std::uint64_t(std::uint8_t(s.wr1)) << 24;
  h ^= std::uint64_t(s.toMove == Color::White ? 0x55 : 0xAA) << 32;
  // splitmix64 finalizer
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

BGState bg_canonical(const BGState& s, int n) {
  BGState best = s;
  bool first = true;
  for (std::uint8_t id = 0; id < Transform::Count; ++id) {
    Transform t{id};
    BGState c = s;
    c.wk = std::int8_t(t.apply(s.wk, n));
    if (s.wq >= 0) c.wq = std::int8_t(t.apply(s.wq, n));
    if (s.wr0 >= 0) c.wr0 = std::int8_t(t.apply(s.wr0, n));
    if (s.wr1 >= 0) c.wr1 = std::int8_t(t.apply(s.wr1, n));
    if (c.wr0 >= 0 && c.wr1 >= 0 && c.wr0 > c.wr1) std::swap(c.wr0, c.wr1);
    c.belief = t.apply_mask(s.belief, n);
    auto key = [](const BGState& x) {
      return std::tuple(x.wk, x.wq, x.wr0, x.wr1, x.toMove, x.belief);
    };
    if (first || key(c) < key(best)) {
      best = c;
      first = false;
    }
  }
  return best;
}

std::string bg_format(const BGState& s, int n) {
  std::ostringstream out;
  out << "WK" << square_name(s.wk, n);
  if (s.wq >= 0) out << " WQ" << square_name(s.wq, n);
  out << " WR" << (s.wr0 >= 0 ? square_name(s.wr0, n) : "-");
  if (s.wr1 >= 0) out << " WR" << square_name(s.wr1, n);
  out << ' ' << (s.toMove == Color::White ? 'w' : 'b') << " B={";
  bool firstSq = true;
  for_each_square(s.belief, [&](int sq) {
    if (!firstSq) out << ',';
    out << square_name(sq, n);
    firstSq = false;
  });
  out << '}';
  return out.str();
}

Position BGEngine::whites_position(const BGState& s) const {
  Position p;
  p.boardSide = std::int8_t(n);
  p.sideToMove = s.toMove;
  p.whiteKing = s.wk;
  p.whiteQueen = s.wq;
  p.whiteRook = {s.wr0, s.wr1};
  p.normalizeRooks();
  BeliefState b{s.belief};
  p.blackKing = b.singleton() ? std::int8_t(lowest_square(s.belief)) : std::int8_t(-1);
  return p;
}

BGValue BGEngine::terminal(const BGState& s) const {
  if (s.toMove == Color::White) {
    BeliefState b{s.belief};
    if (b.singleton()) {
      Position p = whites_position(s);
      if (attacked_squares(p, Color::White) & s.belief) return BGValue::WhiteWin;
    }
    if (s.wq < 0 && s.wr0 < 0 && s.wr1 < 0) return BGValue::BlackSafe;
  }
  return BGValue::Unknown;
}

void BGEngine::white_successors(const BGState& s, std::vector<MoveBranches>& out) const {
  out.clear();
  Position p = whites_position(s);
  BeliefState belief{s.belief};
  for (Move m : legal_moves(p, Color::White)) {
    MoveBranches mb;
    mb.move = m;
    for (const BranchOutcome& o : white_move_outcomes(belief, p, m)) {
      if (o.status == GameStatus::WhiteWon) continue;  // capture branch wins outright
      BGState t = s;
      t.toMove = Color::Black;
      t.belief = o.belief.candidates;
      auto relocate = [&](std::int8_t& piece) {
        if (piece == m.from) piece = m.to;
      };
      relocate(t.wk);
      relocate(t.wq);
      relocate(t.wr0);
      relocate(t.wr1);
      if (t.wr0 >= 0 && t.wr1 >= 0 && t.wr0 > t.wr1) std::swap(t.wr0, t.wr1);
      mb.succs.push_back(t);
    }
    out.push_back(std::move(mb));
  }
}

void BGEngine::black_successors(const BGState& s, BlackResult& out) const {
  out.blackWinBranch = false;
  out.succs.clear();
  Position p = whites_position(s);
  p.blackKing = -1;  // candidates tracked by the belief
  p.sideToMove = Color::Black;
  for (const BranchOutcome& o : black_move_outcomes(BeliefState{s.belief}, p)) {
    if (o.status == GameStatus::BlackWon) {
      out.blackWinBranch = true;
      continue;
    }
    BGState t = s;
    t.toMove = Color::White;
    t.belief = o.belief.candidates;
    if (o.whitePieceCaptured) {
      if (t.wq == o.square) t.wq = -1;
      if (t.wr0 == o.square) t.wr0 = -1;
      if (t.wr1 == o.square) t.wr1 = -1;
      if (t.wr0 < 0 && t.wr1 >= 0) std::swap(t.wr0, t.wr1);
    }
    out.succs.push_back(t);
  }
}

}  // namespace fog
