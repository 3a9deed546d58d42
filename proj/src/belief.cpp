#include "fog/belief.hpp"

#include <cassert>
#include <stdexcept>

namespace fog {

BeliefState initial_belief(int blackKingSquare) { return BeliefState{bit(blackKingSquare)}; }

Mask white_view(const Position& whites) {
  Position p = whites;
  p.blackKing = -1;
  p.blackQueen = -1;
  p.blackRook = {-1, -1};
  const int n = p.n();
  const Mask occ = p.whiteOcc();
  Mask out = occ;
  if (p.whiteKing >= 0) out |= king_attacks(n, p.whiteKing);
  if (p.whiteQueen >= 0) out |= queen_attacks(n, p.whiteQueen, occ);
  for (auto r : p.whiteRook)
    if (r >= 0) out |= rook_attacks(n, r, occ);
  return out;
}

namespace {

Position apply_to_whites(const Position& before, Move move) {
  Position q = before;
  auto move_from = [&](std::int8_t& piece) {
    if (piece == move.from) piece = move.to;
  };
  move_from(q.whiteKing);
  move_from(q.whiteQueen);
  for (auto& r : q.whiteRook) move_from(r);
  q.normalizeRooks();
  q.sideToMove = Color::Black;
  return q;
}

// Squares strictly between from and to on a straight line, empty set for
// king steps.
Mask between(int from, int to, int n) {
  int ff = file_of(from, n), fr = rank_of(from, n);
  int tf = file_of(to, n), tr = rank_of(to, n);
  int df = (tf > ff) - (tf < ff);
  int dr = (tr > fr) - (tr < fr);
  Mask out = 0;
  int f = ff + df, r = fr + dr;
  while (f != tf || r != tr) {
    out |= bit(square_at(f, r, n));
    f += df;
    r += dr;
  }
  return out;
}

}  // namespace

std::vector<BranchOutcome> white_move_outcomes(const BeliefState& belief, const Position& before,
                                               Move move) {
  if (!belief.candidates) throw std::logic_error("white_move_outcomes: empty belief");
  const int n = before.n();
  std::vector<BranchOutcome> out;
  Mask rest = belief.candidates;
  if (belief.contains(move.to)) {
    BranchOutcome b;
    b.obs = ObsClass::CandidateCaptured;
    b.square = move.to;
    b.belief = BeliefState{bit(move.to)};
    b.status = GameStatus::WhiteWon;
    out.push_back(b);
    rest &= ~bit(move.to);
  }
  if (between(move.from, move.to, n) & rest)
    throw std::logic_error("white_move_outcomes: slide through candidate square");
  if (rest) {
    Position after = apply_to_whites(before, move);
    Mask view = white_view(after);
    for_each_square(rest & view, [&](int sq) {
      BranchOutcome b;
      b.obs = ObsClass::SeenAt;
      b.square = std::int8_t(sq);
      b.belief = BeliefState{bit(sq)};
      out.push_back(b);
    });
    if (Mask unseen = rest & ~view) {
      BranchOutcome b;
      b.obs = ObsClass::Unseen;
      b.belief = BeliefState{unseen};
      out.push_back(b);
    }
  }
  return out;
}

std::vector<BranchOutcome> black_move_outcomes(const BeliefState& belief, const Position& after) {
  if (!belief.candidates) throw std::logic_error("black_move_outcomes: empty belief");
  assert(after.sideToMove == Color::Black);
  const int n = after.n();
  const Mask view = white_view(after);
  const Mask queenBit = after.whiteQueen >= 0 ? bit(after.whiteQueen) : 0;
  Mask rookBits = 0;
  for (auto r : after.whiteRook)
    if (r >= 0) rookBits |= bit(r);
  const Mask kingBit = bit(after.whiteKing);

  Mask quietSeen = 0, unseen = 0, queenCaptures = 0, rookCaptures = 0;
  bool kingCapture = false;
  for_each_square(belief.candidates, [&](int c) {
    Mask dests = king_attacks(n, c);
    if (dests & kingBit) kingCapture = true;
    queenCaptures |= dests & queenBit;
    rookCaptures |= dests & rookBits;
    Mask quiet = dests & ~(kingBit | queenBit | rookBits);
    quietSeen |= quiet & view;
    unseen |= quiet & ~view;
  });

  std::vector<BranchOutcome> out;
  for_each_square(quietSeen, [&](int sq) {
    BranchOutcome b;
    b.obs = ObsClass::SeenAt;
    b.square = std::int8_t(sq);
    b.belief = BeliefState{bit(sq)};
    out.push_back(b);
  });
  if (unseen) {
    BranchOutcome b;
    b.obs = ObsClass::Unseen;
    b.belief = BeliefState{unseen};
    out.push_back(b);
  }
  auto captures = [&](Mask squares, PieceKind kind) {
    for_each_square(squares, [&](int sq) {
      BranchOutcome b;
      b.obs = ObsClass::SeenAt;  // the vanished piece pins the king's square
      b.square = std::int8_t(sq);
      b.belief = BeliefState{bit(sq)};
      b.whitePieceCaptured = true;
      b.capturedKind = kind;
      out.push_back(b);
    });
  };
  captures(queenCaptures, PieceKind::Queen);
  captures(rookCaptures, PieceKind::Rook);
  if (kingCapture) {
    BranchOutcome b;
    b.obs = ObsClass::SeenAt;
    b.square = after.whiteKing;
    b.belief = BeliefState{kingBit};
    b.status = GameStatus::BlackWon;
    out.push_back(b);
  }
  return out;
}

}  // namespace fog
