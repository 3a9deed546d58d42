#pragma once

#include <cstdint>
#include <vector>

#include "fog/belief.hpp"
#include "fog/board.hpp"

// Belief-game states: White pieces are placed, the Black king is a candidate
// set. White optimizes against an informed adversary who may steer every
// observation branch and sit on any consistent candidate.

namespace fog {

enum class BGValue : std::uint8_t { Unknown, WhiteWin, BlackSafe };

struct BGState {
  std::int8_t wk = -1, wq = -1, wr0 = -1, wr1 = -1;
  Color toMove = Color::White;
  Mask belief = 0;
  bool operator==(const BGState&) const = default;
};

std::uint64_t bg_hash(const BGState& s);
BGState bg_canonical(const BGState& s, int n);
std::string bg_format(const BGState& s, int n);  // WK<sq> WR<sq|-> <w|b> B={...}

struct BGEngine {
  int n = 8;

  Position whites_position(const BGState& s) const;  // blackKing set when belief is singleton
  // Terminal adjudication:
  //  - White to move, singleton candidate attackable -> WhiteWin
  //  - White holds king only -> BlackSafe (a lone king never forces capture)
  BGValue terminal(const BGState& s) const;

  struct MoveBranches {
    Move move;
    std::vector<BGState> succs;  // all must be WhiteWin for the move to win
  };
  void white_successors(const BGState& s, std::vector<MoveBranches>& out) const;

  struct BlackResult {
    bool blackWinBranch = false;  // adversary can capture the White king outright
    std::vector<BGState> succs;   // includes piece-capture continuations
  };
  void black_successors(const BGState& s, BlackResult& out) const;
};

}  // namespace fog
