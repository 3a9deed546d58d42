#include "fog/verifier.hpp"

namespace fog {

std::vector<Position> enumerate_initial_configs(Scenario sc, bool symmetryReduce, int n) {
  std::vector<Position> out;
  const int nn = n * n;
  Position p;
  p.boardSide = std::int8_t(n);
  p.sideToMove = Color::White;
  auto push = [&](Position q) {
    if (symmetryReduce) {
      auto [canon, t] = canonicalize(q);
      if (!(canon == q)) return;
    }
    out.push_back(q);
  };
  if (sc == Scenario::KQvK) {
    for (int wk = 0; wk < nn; ++wk)
      for (int wq = 0; wq < nn; ++wq) {
        if (wq == wk) continue;
        for (int bk = 0; bk < nn; ++bk) {
          if (bk == wk || bk == wq) continue;
          Position q = p;
          q.whiteKing = std::int8_t(wk);
          q.whiteQueen = std::int8_t(wq);
          q.blackKing = std::int8_t(bk);
          push(q);
        }
      }
  } else {
    for (int wk = 0; wk < nn; ++wk)
      for (int r0 = 0; r0 < nn; ++r0) {
        if (r0 == wk) continue;
        for (int r1 = r0 + 1; r1 < nn; ++r1) {
          if (r1 == wk) continue;
          for (int bk = 0; bk < nn; ++bk) {
            if (bk == wk || bk == r0 || bk == r1) continue;
            Position q = p;
            q.whiteKing = std::int8_t(wk);
            q.whiteRook = {std::int8_t(r0), std::int8_t(r1)};
            q.blackKing = std::int8_t(bk);
            push(q);
          }
        }
      }
  }
  return out;
}

}  // namespace fog
