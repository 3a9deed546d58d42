#include <doctest.h>

#include <random>

#include "fog/strategy_kqk.hpp"
#include "fog/strategy_krrk.hpp"
#include "fog/verifier.hpp"

using namespace fog;

namespace {
int sq8(const char* name) { return parse_square(name, 8); }

Position kq_position(int wk, int wq, int bk) {
  Position p;
  p.whiteKing = std::int8_t(wk);
  p.whiteQueen = std::int8_t(wq);
  p.blackKing = std::int8_t(bk);
  p.sideToMove = Color::White;
  return p;
}
}  // namespace

TEST_CASE("queen mobility around her king: any adjacent square in two protected moves") {
  for (int wk = 0; wk < 64; ++wk) {
    Mask ring = king_attacks(8, wk);
    for_each_square(ring, [&](int from) {
      for_each_square(ring, [&](int to) {
        if (from == to) return;
        Position p;
        p.whiteKing = std::int8_t(wk);
        p.whiteQueen = std::int8_t(from);
        p.blackKing = std::int8_t(wk == 0 ? 63 : 0);
        if (p.blackKing == from || p.blackKing == to) p.blackKing = std::int8_t(wk == 7 ? 56 : 7);
        if (is_legal_move(p, Color::White, Move{std::int8_t(from), std::int8_t(to)})) return;
        bool twoStep = false;
        for_each_square(ring & ~bit(from) & ~bit(to) & ~p.occupied(), [&](int mid) {
          if (twoStep) return;
          if (!is_legal_move(p, Color::White, Move{std::int8_t(from), std::int8_t(mid)})) return;
          Position q = p;
          q.whiteQueen = std::int8_t(mid);
          if (is_legal_move(q, Color::White, Move{std::int8_t(mid), std::int8_t(to)}))
            twoStep = true;
        });
        CHECK(twoStep);
      });
    });
  }
}

TEST_CASE("kqk strategy is deterministic") {
  KqkStrategy strat;
  Position p = kq_position(sq8("d4"), sq8("h8"), sq8("h1"));
  KqkState a = strat.initial(p), b = strat.initial(p);
  BeliefState belief = initial_belief(p.blackKing);
  Position whites = p;
  whites.blackKing = std::int8_t(p.blackKing);
  Move m1 = strat.next(a, whites, belief);
  Move m2 = strat.next(b, whites, belief);
  CHECK(m1 == m2);
  CHECK(a == b);
}

TEST_CASE("kqk verification from hand-picked starts") {
  KqkStrategy strat;
  Verifier<KqkStrategy> v(strat, 600);
  const char* starts[] = {
      "Ka1 Qa2 kh8 w",  // corner configuration already
      "Ka1 Qa2 kc1 w",  // candidate lurking on the first rank
      "Kd4 Qh8 kh1 w",  // central king
      "Ke5 Qe4 ka8 w",  // central king, queen blocking the exit square
      "Kd5 Qd4 kg2 w",  // queen on the diagonal block square
      "Kh8 Qa1 ka8 w",
      "Kb2 Qg7 kg3 w",
      "Ka1 Qb1 kh8 w",
      "Kc5 Qb5 kh1 w",  // paper's distance-two example
      "Ka4 Qb4 kh8 w",  // paper's edge descent example
      "Kd4 Qe4 kd6 w",  // black king capturable in one
  };
  for (const char* s : starts) {
    auto p = parse_position(s);
    REQUIRE(p.position.has_value());
    VerifyOutcome out = v.verify(*p.position);
    if (!out.won) {
      MESSAGE(s, " -> ", out.failureReason);
      for (auto& line : out.trace) MESSAGE(line);
    }
    CHECK(out.won);
    CHECK(out.maxPlies <= 600);
  }
}

TEST_CASE("krrk verification from hand-picked starts") {
  KrrkStrategy strat;
  Verifier<KrrkStrategy> v(strat, 600);
  const char* starts[] = {
      "Ka1 Ra2 Rb1 kh8 w",  // staircase start
      "Kh8 Ra1 Rb1 ke5 w",
      "Kd4 Rh7 Rh8 ke6 w",  // entangled king
      "Ka1 Rh7 Rg8 kb3 w",
      "Ke4 Ra1 Rh1 ke6 w",
  };
  for (const char* s : starts) {
    auto p = parse_position(s);
    REQUIRE(p.position.has_value());
    VerifyOutcome out = v.verify(*p.position);
    if (!out.won) {
      MESSAGE(s, " -> ", out.failureReason);
      for (auto& line : out.trace) MESSAGE(line);
    }
    CHECK(out.won);
  }
}

TEST_CASE("sabotaged kqk strategy is refuted by the verifier") {
  KqkStrategy bad;
  bad.sabotage = true;
  Verifier<KqkStrategy> v(bad, 600);
  // verify a spread of starts; at least one must expose the broken rule
  auto configs = enumerate_initial_configs(Scenario::KQvK, true);
  std::mt19937_64 rng(99);
  bool failed = false;
  for (int i = 0; i < 400 && !failed; ++i) {
    VerifyOutcome out = v.verify(configs[rng() % configs.size()]);
    failed = !out.won;
  }
  CHECK(failed);
}
