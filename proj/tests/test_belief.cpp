#include <doctest.h>

#include <random>

#include "fog/belief.hpp"

using namespace fog;

namespace {

int sq8(const char* name) { return parse_square(name, 8); }

Position whites(const char* text) {
  auto r = parse_position(text);
  REQUIRE(r.position.has_value());
  Position p = *r.position;
  p.blackKing = -1;
  return p;
}

const BranchOutcome* find_unseen(const std::vector<BranchOutcome>& v) {
  for (const auto& b : v)
    if (b.obs == ObsClass::Unseen) return &b;
  return nullptr;
}

}  // namespace

TEST_CASE("initial belief is the known square") {
  CHECK(initial_belief(sq8("e5")).candidates == bit(sq8("e5")));
  CHECK(initial_belief(sq8("h8")).candidates == bit(sq8("h8")));
  for (int s = 0; s < 64; ++s) CHECK(initial_belief(s).count() == 1);
}

TEST_CASE("white move outcomes: queen sighting splits into singletons") {
  Position p = whites("Kc4 Qb4 kh8 w");
  BeliefState belief{bit(sq8("b6")) | bit(sq8("b7")) | bit(sq8("b8"))};
  auto out = white_move_outcomes(belief, p, Move{std::int8_t(sq8("b4")), std::int8_t(sq8("b5"))});
  int seen = 0;
  for (const auto& b : out) {
    CHECK(b.obs == ObsClass::SeenAt);
    CHECK(b.belief.count() == 1);
    ++seen;
  }
  CHECK(seen == 3);
}

TEST_CASE("white move outcomes: distant king step leaves belief alone") {
  Position p = whites("Ka1 Qh1 ke5 w");
  p.whiteQueen = -1;  // lone king for a clean non-interaction
  BeliefState belief{bit(sq8("e5"))};
  auto out = white_move_outcomes(belief, p, Move{std::int8_t(sq8("a1")), std::int8_t(sq8("a2"))});
  REQUIRE(out.size() == 1);
  CHECK(out[0].obs == ObsClass::Unseen);
  CHECK(out[0].belief.candidates == bit(sq8("e5")));
}

TEST_CASE("white move outcomes: landing on a candidate branches on the ground truth") {
  Position p = whites("Kh8 Rd8 kh1 w");
  BeliefState belief{bit(sq8("c2")) | bit(sq8("d2"))};
  auto out = white_move_outcomes(belief, p, Move{std::int8_t(sq8("d8")), std::int8_t(sq8("d2"))});
  REQUIRE(out.size() == 2);
  CHECK(out[0].obs == ObsClass::CandidateCaptured);
  CHECK(out[0].status == GameStatus::WhiteWon);
  CHECK(out[0].square == sq8("d2"));
  // the surviving world: the rook now stares at c2 along the rank
  CHECK(out[1].obs == ObsClass::SeenAt);
  CHECK(out[1].belief.candidates == bit(sq8("c2")));
}

TEST_CASE("black move outcomes: pure expansion far from everything") {
  Position p = whites("Ka1 ke5 b");
  p.sideToMove = Color::Black;
  BeliefState belief{bit(sq8("e5"))};
  auto out = black_move_outcomes(belief, p);
  REQUIRE(out.size() == 1);
  CHECK(out[0].obs == ObsClass::Unseen);
  CHECK(out[0].belief.candidates == king_attacks(8, sq8("e5")));
}

TEST_CASE("black move outcomes: forcing off the third rank leaves d2/e2 open") {
  Position p = whites("Kd5 Rh3 kd3 b");
  p.sideToMove = Color::Black;
  BeliefState belief{bit(sq8("d3"))};
  auto out = black_move_outcomes(belief, p);
  const BranchOutcome* unseen = find_unseen(out);
  REQUIRE(unseen != nullptr);
  CHECK((unseen->belief.candidates & bit(sq8("d2"))) != 0);
  CHECK((unseen->belief.candidates & bit(sq8("e2"))) != 0);
  CHECK((unseen->belief.candidates & bit(sq8("d4"))) == 0);  // visible to the king
}

TEST_CASE("black move outcomes: cluster spill after a file sighting") {
  Position p = whites("Kg5 Rd4 kh1 b");
  p.sideToMove = Color::Black;
  BeliefState fromD1{bit(sq8("d1"))};
  auto out = black_move_outcomes(fromD1, p);
  const BranchOutcome* unseen = find_unseen(out);
  REQUIRE(unseen != nullptr);
  Mask cluster = bit(sq8("c1")) | bit(sq8("c2")) | bit(sq8("e1")) | bit(sq8("e2"));
  CHECK(unseen->belief.candidates == cluster);
}

TEST_CASE("black move outcomes: captures and king capture branches") {
  Position p = whites("Kd4 Qe4 kh8 b");
  p.sideToMove = Color::Black;
  BeliefState belief{bit(sq8("f5"))};
  auto out = black_move_outcomes(belief, p);
  bool queenCapture = false, kingCapture = false;
  for (const auto& b : out) {
    if (b.whitePieceCaptured) {
      queenCapture = true;
      CHECK(b.square == sq8("e4"));
      CHECK(b.capturedKind == PieceKind::Queen);
      CHECK(b.belief.candidates == bit(sq8("e4")));
    }
    if (b.status == GameStatus::BlackWon) kingCapture = true;
  }
  CHECK(queenCapture);
  CHECK(!kingCapture);

  BeliefState nextToKing{bit(sq8("c5"))};
  bool kc = false;
  for (const auto& b : black_move_outcomes(nextToKing, p))
    if (b.status == GameStatus::BlackWon) kc = true;
  CHECK(kc);
}

TEST_CASE("partition: every destination lands in exactly one branch") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 2000; ++iter) {
    Position p;
    std::uniform_int_distribution<int> d(0, 63);
    p.whiteKing = std::int8_t(d(rng));
    do p.whiteQueen = std::int8_t(d(rng));
    while (p.whiteQueen == p.whiteKing);
    p.blackKing = -1;
    p.sideToMove = Color::Black;
    Mask belief = 0;
    for (int k = 0; k < 3; ++k) {
      int c = d(rng);
      if (c != p.whiteKing && c != p.whiteQueen) belief |= bit(c);
    }
    if (!belief) continue;
    belief &= ~white_view(p);
    if (!belief) continue;
    Mask allDests = 0;
    for_each_square(belief, [&](int c) { allDests |= king_attacks(8, c); });
    auto out = black_move_outcomes(BeliefState{belief}, p);
    Mask covered = 0;
    for (const auto& b : out) {
      CHECK((covered & b.belief.candidates) == 0);  // disjoint
      covered |= b.belief.candidates;
      if (b.obs == ObsClass::SeenAt) CHECK(b.belief.count() == 1);
    }
    CHECK(covered == allDests);
  }
}

TEST_CASE("soundness by simulation: the true king stays inside the belief") {
  std::mt19937_64 rng(777);
  int playouts = 2000;
  for (int g = 0; g < playouts; ++g) {
    Position p;
    std::uniform_int_distribution<int> d(0, 63);
    p.whiteKing = std::int8_t(d(rng));
    do p.whiteQueen = std::int8_t(d(rng));
    while (p.whiteQueen == p.whiteKing);
    do p.blackKing = std::int8_t(d(rng));
    while (p.blackKing == p.whiteKing || p.blackKing == p.whiteQueen);
    p.sideToMove = Color::White;
    BeliefState belief = initial_belief(p.blackKing);
    for (int ply = 0; ply < 60; ++ply) {
      if (p.sideToMove == Color::White) {
        auto moves = legal_moves(p, Color::White);
        // keep the game alive: never capture the black king in this sim
        std::vector<Move> quiet;
        for (Move m : moves)
          if (m.to != p.blackKing) quiet.push_back(m);
        if (quiet.empty()) break;
        Move m = quiet[rng() % quiet.size()];
        // the belief update contract needs candidate-consistent moves;
        // skip moves that slide across or onto a candidate square
        Position noBk = p;
        noBk.blackKing = -1;
        auto out = white_move_outcomes(belief, noBk, m);
        auto [q, st] = apply_move(p, m);
        p = q;
        bool found = false;
        for (const auto& b : out) {
          if (b.status != GameStatus::Ongoing) continue;
          if (b.belief.contains(p.blackKing)) {
            belief = b.belief;
            found = true;
            break;
          }
        }
        REQUIRE(found);
      } else {
        auto moves = legal_moves(p, Color::Black);
        std::vector<Move> quiet;
        for (Move m : moves)
          if (m.to != p.whiteKing && m.to != p.whiteQueen) quiet.push_back(m);
        if (quiet.empty()) break;
        Move m = quiet[rng() % quiet.size()];
        Position noBk = p;
        noBk.blackKing = -1;
        auto out = black_move_outcomes(belief, noBk);
        auto [q, st] = apply_move(p, m);
        p = q;
        bool found = false;
        for (const auto& b : out) {
          if (b.status != GameStatus::Ongoing || b.whitePieceCaptured) continue;
          if (b.belief.contains(p.blackKing)) {
            belief = b.belief;
            found = true;
            break;
          }
        }
        REQUIRE(found);
      }
      CHECK(belief.contains(p.blackKing));
    }
  }
}

TEST_CASE("symmetry equivariance of belief updates") {
  std::mt19937_64 rng(31415);
  for (int iter = 0; iter < 300; ++iter) {
    Position p;
    std::uniform_int_distribution<int> d(0, 63);
    p.whiteKing = std::int8_t(d(rng));
    do p.whiteQueen = std::int8_t(d(rng));
    while (p.whiteQueen == p.whiteKing);
    p.blackKing = -1;
    p.sideToMove = Color::Black;
    Mask belief = ~white_view(p) & ~p.whiteOcc();
    auto base = black_move_outcomes(BeliefState{belief}, p);
    for (std::uint8_t id = 1; id < Transform::Count; ++id) {
      Transform t{id};
      Position tp = transformed(p, t);
      auto mapped = black_move_outcomes(BeliefState{t.apply_mask(belief, 8)}, tp);
      REQUIRE(mapped.size() == base.size());
      // compare unseen branches (the deterministic aggregate)
      const BranchOutcome* u0 = find_unseen(base);
      const BranchOutcome* u1 = find_unseen(mapped);
      if (u0 && u1) CHECK(t.apply_mask(u0->belief.candidates, 8) == u1->belief.candidates);
    }
  }
}
