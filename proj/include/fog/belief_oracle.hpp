#pragma once

#include <cstdint>

#include "fog/belief_game.hpp"

// Exact bounded AND-OR solver over belief-game states for small boards.
// Independent of the attractor path: top-down "win within k plies" with
// iterative deepening, so cycles resolve in Black's favor by exhaustion.

namespace fog {

struct OracleResult {
  BGValue value = BGValue::BlackSafe;
  int optimalDepth = -1;  // plies, set when WhiteWin
  std::uint64_t statesExpanded = 0;
  bool budgetExceeded = false;
};

OracleResult solve_generic(int n, const BGState& initial, int maxDepthPlies = 128,
                           std::uint64_t stateBudget = 50'000'000);

}  // namespace fog
