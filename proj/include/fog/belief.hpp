#pragma once

#include <vector>

#include "fog/board.hpp"

// White's knowledge of the Black king as a candidate-square set, with
// observation branching after each half-move. Positions passed here carry
// the White material; the blackKing field is ignored (the true square is
// exactly what the belief tracks).

namespace fog {

struct BeliefState {
  Mask candidates = 0;
  int count() const { return popcount(candidates); }
  bool contains(int sq) const { return (candidates & bit(sq)) != 0; }
  bool singleton() const { return candidates && !(candidates & (candidates - 1)); }
  bool operator==(const BeliefState&) const = default;
};

enum class ObsClass : std::uint8_t { SeenAt, Unseen, CandidateCaptured };

struct BranchOutcome {
  ObsClass obs = ObsClass::Unseen;
  std::int8_t square = -1;  // SeenAt/CandidateCaptured square, or captured White piece square
  BeliefState belief;
  GameStatus status = GameStatus::Ongoing;
  bool whitePieceCaptured = false;
  PieceKind capturedKind = PieceKind::Queen;
};

BeliefState initial_belief(int blackKingSquare);

// Visibility of the White pieces with the Black king absent. Candidate
// squares never truncate these rays: a candidate on a ray would itself be
// the first blocker, hence visible, hence already split off as Seen.
Mask white_view(const Position& whites);

// White plays `move` from `before` (sideToMove == White). The move must be
// legal under every candidate placement; a slide strictly through a
// candidate square violates the contract (such candidates would have been
// visible). Destination on a candidate yields a CandidateCaptured branch.
std::vector<BranchOutcome> white_move_outcomes(const BeliefState& belief, const Position& before,
                                               Move move);

// Black moves in `after` (sideToMove == Black). Candidates expand to all
// king destinations, including captures of White pieces (flagged) and of
// the White king (BlackWon). Quiet destinations split into Seen singletons
// and one Unseen remainder.
std::vector<BranchOutcome> black_move_outcomes(const BeliefState& belief, const Position& after);

}  // namespace fog
