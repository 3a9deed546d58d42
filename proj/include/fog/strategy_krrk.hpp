#pragma once

#include <string>

#include "fog/belief.hpp"
#include "fog/board.hpp"
#include "fog/verifier.hpp"

// Deterministic White strategy for KRR vs K: the rooks take a mutual-cover
// line that fences the Black king away from the White king, the king walks
// to the corner behind the fence, the rooks drop next to him, and the
// staircase pushes the fence up rank by rank until the top edge.

namespace fog {

enum class KrrkStep : std::uint8_t {
  Align,    // rooks to a safe sealing line
  Walk,     // king to the corner behind the seal
  Descend,  // rooks to the staircase start (a2/b1 pattern)
  StairR1,
  StairR2,
  StairK,
  FinR2,    // top: back rook up under cover
  FinR1,    // lead rook takes the last rank
};

struct KrrkState {
  Transform view{};
  KrrkStep step = KrrkStep::Align;
  bool operator==(const KrrkState&) const = default;
};

inline std::uint32_t strategy_state_hash(const KrrkState& s) {
  return std::uint32_t(s.view.id) | (std::uint32_t(s.step) << 8);
}

class KrrkStrategy {
 public:
  using State = KrrkState;
  State initial(const Position& start) const;
  Move next(State& st, const Position& pos, const BeliefState& belief) const;
  std::string phase_name(const State& st) const;

 private:
  Move align_move(const Position& pos, const BeliefState& belief) const;
};

}  // namespace fog
