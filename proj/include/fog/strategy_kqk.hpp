#pragma once

#include <string>

#include "fog/belief.hpp"
#include "fog/board.hpp"
#include "fog/verifier.hpp"

// Deterministic White strategy for KQ vs K. Stage 1 walks the king out of
// the center, brings the queen alongside and reaches a corner configuration.
// Stage 2 seals a rank with the queen and sweeps it sideways, raising the
// seal each time the Black king is spotted on the queen's file, until the
// candidate set is pinned against the top edge and captured.

namespace fog {

enum class KqkMode : std::uint8_t { Opening, Sweep };

enum class KqkStep : std::uint8_t {
  PairQueen,   // queen advances one file along the seal rank
  PairKing,    // king follows (ahead below the queen)
  IntKing,     // interrupt after a file sighting: king steps up beside the queen
  IntQueen,    // interrupt: queen steps onto the next rank, raising the seal
  TransKing,   // walk back to the left edge, king leg
  TransQueen,  // walk back, queen leg
  RotKing1,    // after a 90-degree re-rooting: king drops to the seal rank
  RotKing2,    // and tucks under the queen
  ChaseQueenL, // top band (seal 6): chase a left-side candidate leftward
  ChaseKingL,
  SabQueen,    // sabotage hook: queen raised before the king covers her
  SabKing,
};

struct KqkState {
  Transform view{};  // real -> oriented
  KqkMode mode = KqkMode::Opening;
  KqkStep step = KqkStep::PairQueen;
  std::int8_t seal = 1;
  bool operator==(const KqkState&) const = default;
};

inline std::uint32_t strategy_state_hash(const KqkState& s) {
  return std::uint32_t(s.view.id) | (std::uint32_t(s.mode) << 8) |
         (std::uint32_t(s.step) << 16) | (std::uint32_t(std::uint8_t(s.seal)) << 24);
}

class KqkStrategy {
 public:
  using State = KqkState;

  // Criterion hook: drop the guarded move order of the top-band interrupt
  // (the queen goes up before the king protects her).
  bool sabotage = false;

  State initial(const Position& start) const;
  Move next(State& st, const Position& pos, const BeliefState& belief) const;
  std::string phase_name(const State& st) const;

 private:
  Move opening_move(State& st, const Position& pos, const BeliefState& belief) const;
  Move sweep_move(State& st, const Position& pos, const BeliefState& belief) const;
};

}  // namespace fog
