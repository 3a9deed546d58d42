#include <doctest.h>

#include <random>

#include "fog/belief_oracle.hpp"
#include "fog/krk_refuter.hpp"

using namespace fog;

TEST_CASE("no immediate win for White against an interior king") {
  OneMoveReport rep = no_immediate_win_check();
  CHECK(rep.positionsChecked > 100000);
  CHECK(rep.counterexamples == 0);
}

namespace {

std::vector<BGState> kq_singleton_roots(int n) {
  std::vector<BGState> roots;
  const int nn = n * n;
  for (int wk = 0; wk < nn; ++wk)
    for (int wq = 0; wq < nn; ++wq) {
      if (wq == wk) continue;
      for (int bk = 0; bk < nn; ++bk) {
        if (bk == wk || bk == wq) continue;
        BGState s;
        s.wk = std::int8_t(wk);
        s.wq = std::int8_t(wq);
        s.toMove = Color::White;
        s.belief = bit(bk);
        roots.push_back(s);
      }
    }
  return roots;
}

}  // namespace

TEST_CASE("4x4 KQ vs K: attractor and oracle agree; all starts are won") {
  const int n = 4;
  auto roots = kq_singleton_roots(n);
  AttractorOptions opts;
  opts.workers = 4;
  AttractorSolution sol = solve_belief_game(n, roots, opts);
  std::uint64_t winRoots = 0;
  for (const BGState& r : roots)
    if (sol.classify(r) == BGValue::WhiteWin) ++winRoots;
  CHECK(winRoots == roots.size());

  auto witness = check_witnesses(sol);
  CHECK(witness.ok);
  if (!witness.ok) MESSAGE(witness.firstFailure);

  std::mt19937_64 rng(5150);
  int maxRank = sol.passes;
  for (int i = 0; i < 120; ++i) {
    const BGState& r = roots[rng() % roots.size()];
    OracleResult o = solve_generic(n, r, 2 * maxRank + 8);
    CHECK(o.value == sol.classify(r));
  }
}

TEST_CASE("lone king never wins") {
  const int n = 4;
  BGState s;
  s.wk = 0;
  s.toMove = Color::White;
  s.belief = bit(10);
  AttractorSolution sol = solve_belief_game(n, {s});
  CHECK(sol.classify(s) == BGValue::BlackSafe);
  OracleResult o = solve_generic(n, s, 64);
  CHECK(o.value == BGValue::BlackSafe);
}

TEST_CASE("5x5 KR vs K interior: the two solvers agree") {
  const int n = 5;
  std::vector<BGState> roots;
  for (int wk = 0; wk < 25; ++wk)
    for (int wr = 0; wr < 25; ++wr) {
      if (wr == wk) continue;
      int bk = square_at(2, 2, n);
      if (bk == wk || bk == wr) continue;
      Position p;
      p.boardSide = n;
      p.whiteKing = std::int8_t(wk);
      p.whiteRook = {std::int8_t(wr), -1};
      p.blackKing = std::int8_t(bk);
      if (attacked_squares(p, Color::White) & bit(bk)) continue;
      BGState s;
      s.wk = std::int8_t(wk);
      s.wr0 = std::int8_t(wr);
      s.toMove = Color::White;
      s.belief = bit(bk);
      roots.push_back(s);
    }
  REQUIRE(!roots.empty());
  AttractorOptions opts;
  opts.workers = 4;
  AttractorSolution sol = solve_belief_game(n, roots, opts);
  std::mt19937_64 rng(864);
  for (int i = 0; i < 60; ++i) {
    const BGState& r = roots[rng() % roots.size()];
    OracleResult o = solve_generic(n, r, 2 * sol.passes + 8);
    CHECK(o.value == sol.classify(r));
  }
}

TEST_CASE("oracle depth is monotone") {
  const int n = 4;
  BGState s;
  s.wk = square_at(0, 0, n);
  s.wq = square_at(1, 1, n);
  s.toMove = Color::White;
  s.belief = bit(square_at(3, 3, n));
  OracleResult first = solve_generic(n, s, 64);
  REQUIRE(first.value == BGValue::WhiteWin);
  OracleResult second = solve_generic(n, s, 128);
  CHECK(second.value == BGValue::WhiteWin);
  CHECK(second.optimalDepth == first.optimalDepth);
}
