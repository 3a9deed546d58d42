#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fog/belief_game.hpp"

// Machine check of the KR vs K negative result: compute the least fixpoint
// of belief-game states from which White forces the capture of the Black
// king; every state outside it is BlackSafe (infinite play favors Black).

namespace fog {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AttractorOptions {
  std::size_t stateBudget = 100'000'000;
  int workers = 1;
};

class AttractorSolution {
 public:
  int n = 8;
  std::vector<BGState> states;       // canonical, index = id
  std::vector<BGValue> value;        // WhiteWin or BlackSafe after the fixpoint
  std::vector<std::uint16_t> rank;   // pass at which a state entered the attractor
  std::vector<Move> winMove;         // witness move for WhiteWin White nodes
  std::uint64_t expansions = 0;
  int passes = 0;

  std::optional<std::uint32_t> find(const BGState& s) const;  // s need not be canonical
  BGValue classify(const BGState& s) const;                   // throws ResourceError if absent

 private:
  friend AttractorSolution solve_belief_game(int, const std::vector<BGState>&,
                                             const AttractorOptions&);
  std::vector<std::uint32_t> table_;  // open addressing into `states`
  std::uint64_t tableMask_ = 0;
  void rebuild_table();
  std::optional<std::uint32_t> lookup(const BGState& canonical) const;
};

AttractorSolution solve_belief_game(int n, const std::vector<BGState>& roots,
                                    const AttractorOptions& opts = {});

struct WitnessCheckReport {
  bool ok = true;
  std::uint64_t checkedWin = 0, checkedSafe = 0;
  std::string firstFailure;
};
WitnessCheckReport check_witnesses(const AttractorSolution& sol);

// All KR vs K hypothesis states: belief = {bk} with bk in the safe space
// c3-f6, bk unattacked, all legal wk/wr placements, White to move.
std::vector<BGState> krk_hypothesis_states(int n = 8);

struct LemmaFamily {
  std::string name;
  std::vector<BGState> states;
};
std::vector<LemmaFamily> krk_lemma_families();

struct OneMoveReport {
  std::uint64_t positionsChecked = 0;
  std::uint64_t counterexamples = 0;
  std::string firstCounterexample;
};
// Lemma: with the Black king anywhere on b2-g7 and Black to move, White
// cannot capture on his next move.
OneMoveReport no_immediate_win_check();

std::string solver_line(const BGState& s, BGValue v, int n);

}  // namespace fog
