#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fog/board.hpp"

using namespace fog;

namespace {

// Independent square-by-square generator used as the movegen oracle.
std::vector<Move> naive_moves(const Position& p, Color mover) {
  const int n = p.n();
  std::vector<Move> out;
  auto occAt = [&](int f, int r) -> int {  // 0 empty, 1 white, 2 black
    int s = square_at(f, r, n);
    if (p.whiteOcc() & bit(s)) return 1;
    if (p.blackOcc() & bit(s)) return 2;
    return 0;
  };
  auto gen = [&](int from, bool king, bool ortho, bool diag) {
    static const int dirs[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                   {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    int own = mover == Color::White ? 1 : 2;
    for (int d = 0; d < 8; ++d) {
      bool isDiag = d >= 4;
      if (!king && (isDiag ? !diag : !ortho)) continue;
      int f = file_of(from, n), r = rank_of(from, n);
      int steps = king ? 1 : n;
      for (int i = 0; i < steps; ++i) {
        f += dirs[d][0];
        r += dirs[d][1];
        if (f < 0 || f >= n || r < 0 || r >= n) break;
        int occ = occAt(f, r);
        if (occ == own) break;
        out.push_back(Move{std::int8_t(from), std::int8_t(square_at(f, r, n))});
        if (occ != 0) break;
      }
    }
  };
  if (mover == Color::White) {
    if (p.whiteKing >= 0) gen(p.whiteKing, true, true, true);
    if (p.whiteQueen >= 0) gen(p.whiteQueen, false, true, true);
    for (auto r : p.whiteRook)
      if (r >= 0) gen(r, false, true, false);
  } else {
    if (p.blackKing >= 0) gen(p.blackKing, true, true, true);
    if (p.blackQueen >= 0) gen(p.blackQueen, false, true, true);
    for (auto r : p.blackRook)
      if (r >= 0) gen(r, false, true, false);
  }
  return out;
}

std::vector<Move> sorted(std::vector<Move> v) {
  std::sort(v.begin(), v.end(), [](Move a, Move b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  return v;
}

Position random_position(std::mt19937_64& rng, int n, int scenario /*0 KQ,1 KR,2 KRR,3 K*/) {
  std::uniform_int_distribution<int> d(0, n * n - 1);
  while (true) {
    Position p;
    p.boardSide = std::int8_t(n);
    p.whiteKing = std::int8_t(d(rng));
    p.blackKing = std::int8_t(d(rng));
    if (scenario == 0) p.whiteQueen = std::int8_t(d(rng));
    if (scenario == 1 || scenario == 2) p.whiteRook[0] = std::int8_t(d(rng));
    if (scenario == 2) p.whiteRook[1] = std::int8_t(d(rng));
    p.normalizeRooks();
    if (validate_position(p)) continue;
    p.sideToMove = (rng() & 1) ? Color::White : Color::Black;
    return p;
  }
}

int sq8(const char* name) { return parse_square(name, 8); }

}  // namespace

TEST_CASE("king and rook move counts on open boards") {
  Position p;
  p.whiteKing = std::int8_t(sq8("h8"));
  p.blackKing = std::int8_t(sq8("e5"));
  auto bk = legal_moves(p, Color::Black);
  CHECK(bk.size() == 8);

  Position r;
  r.whiteKing = std::int8_t(sq8("h8"));
  r.whiteRook[0] = std::int8_t(sq8("a1"));
  r.blackKing = std::int8_t(sq8("e5"));
  int rookMoves = 0;
  for (Move m : legal_moves(r, Color::White))
    if (m.from == sq8("a1")) ++rookMoves;
  CHECK(rookMoves == 14);
}

TEST_CASE("black may capture an unprotected rook") {
  auto parsed = parse_position("Kh8 Ra1 kb2 b");
  REQUIRE(parsed.position.has_value());
  Position p = *parsed.position;
  bool found = false;
  for (Move m : legal_moves(p, Color::Black))
    if (m.from == sq8("b2") && m.to == sq8("a1")) found = true;
  CHECK(found);
  auto [q, status] = apply_move(p, Move{std::int8_t(sq8("b2")), std::int8_t(sq8("a1"))});
  CHECK(status == GameStatus::Ongoing);
  CHECK(q.whiteRook[0] == -1);
}

TEST_CASE("movegen matches the naive generator") {
  std::mt19937_64 rng(12345);
  for (int n : {4, 8})
    for (int scenario : {0, 1, 2, 3})
      for (int i = 0; i < 1000; ++i) {
        Position p = random_position(rng, n, scenario);
        for (Color c : {Color::White, Color::Black})
          CHECK(sorted(legal_moves(p, c)) == sorted(naive_moves(p, c)));
      }
}

TEST_CASE("visibility equals destinations plus own squares") {
  Position p;
  p.whiteKing = std::int8_t(sq8("a1"));
  p.blackKing = std::int8_t(sq8("h8"));
  Mask vis = visible_squares(p, Color::White);
  Mask expect = bit(sq8("a1")) | bit(sq8("a2")) | bit(sq8("b1")) | bit(sq8("b2"));
  CHECK(vis == expect);

  // Fig-1 material: the defining property decides what the queen sees
  auto parsed = parse_position("Qa1 Kh1 kh8 re4 w");
  REQUIRE(parsed.position.has_value());
  {
    Mask dests = 0;
    for (Move m : legal_moves(*parsed.position, Color::White)) dests |= bit(m.to);
    CHECK(visible_squares(*parsed.position, Color::White) ==
          (dests | parsed.position->whiteOcc()));
    CHECK((visible_squares(*parsed.position, Color::White) & bit(sq8("d4"))) != 0);
  }

  auto fig10 = parse_position("Kd5 Rh3 kd3 w");
  REQUIRE(fig10.position.has_value());
  CHECK((visible_squares(*fig10.position, Color::White) & bit(sq8("d3"))) != 0);

  std::mt19937_64 rng(999);
  for (int i = 0; i < 1000; ++i) {
    Position q = random_position(rng, 8, i % 3);
    for (Color c : {Color::White, Color::Black}) {
      Mask dests = 0;
      for (Move m : legal_moves(q, c)) dests |= bit(m.to);
      Mask own = c == Color::White ? q.whiteOcc() : q.blackOcc();
      CHECK(visible_squares(q, c) == (dests | own));
    }
  }
}

TEST_CASE("attack sets") {
  auto fig9 = parse_position("Kh8 Ra1 kb2 b");
  REQUIRE(fig9.position.has_value());
  Mask att = attacked_squares(*fig9.position, Color::White);
  Mask nbrs = king_attacks(8, sq8("b2"));
  Mask expect = bit(sq8("a2")) | bit(sq8("a3")) | bit(sq8("b1")) | bit(sq8("c1"));
  CHECK((att & nbrs) == expect);

  Position lone;
  lone.whiteKing = std::int8_t(sq8("d4"));
  lone.blackKing = std::int8_t(sq8("h8"));
  CHECK((attacked_squares(lone, Color::White) & ~bit(sq8("h8"))) == king_attacks(8, sq8("d4")));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Position q = random_position(rng, 8, 0);
    Mask vis = visible_squares(q, Color::White);
    Mask own = q.whiteOcc();
    CHECK((attacked_squares(q, Color::White) & (vis & ~own)) == (vis & ~own));
  }
}

TEST_CASE("rook covers at most four neighbours of an interior king") {
  for (int rook = 0; rook < 64; ++rook)
    for (int f = 1; f <= 6; ++f)
      for (int r = 1; r <= 6; ++r) {
        int bk = square_at(f, r, 8);
        if (bk == rook) continue;
        Position p;
        p.whiteKing = std::int8_t(rook == 0 || bk == 0 ? (rook == 63 || bk == 63 ? 62 : 63) : 0);
        p.whiteRook[0] = std::int8_t(rook);
        p.blackKing = std::int8_t(bk);
        Mask rookAtt = rook_attacks(8, rook, p.occupied());
        CHECK(popcount(rookAtt & king_attacks(8, bk)) <= 4);
      }
}

TEST_CASE("apply_move handles captures and winners") {
  auto p1 = parse_position("Kh8 Qa2 ka5 w");
  REQUIRE(p1.position.has_value());
  auto [q1, s1] = apply_move(*p1.position, Move{std::int8_t(sq8("a2")), std::int8_t(sq8("a5"))});
  CHECK(s1 == GameStatus::WhiteWon);
  (void)q1;

  auto p2 = parse_position("Kh8 Qa2 ka5 b");
  REQUIRE(p2.position.has_value());
  auto [q2, s2] = apply_move(*p2.position, Move{std::int8_t(sq8("a5")), std::int8_t(sq8("a4"))});
  CHECK(s2 == GameStatus::Ongoing);
  CHECK(q2.sideToMove == Color::White);
}

TEST_CASE("no stalemate: a lone black king always has a move") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 2000; ++i) {
    Position p = random_position(rng, 8, i % 3);
    CHECK(!legal_moves(p, Color::Black).empty());
  }
}

TEST_CASE("symmetry equivariance of movegen") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 200; ++i) {
    Position p = random_position(rng, 8, i % 3);
    for (std::uint8_t id = 0; id < Transform::Count; ++id) {
      Transform t{id};
      Position tp = transformed(p, t);
      auto base = legal_moves(p, Color::White);
      for (Move& m : base) {
        m.from = std::int8_t(t.apply(m.from, 8));
        m.to = std::int8_t(t.apply(m.to, 8));
      }
      CHECK(sorted(base) == sorted(legal_moves(tp, Color::White)));
    }
  }
}

TEST_CASE("transform group laws") {
  for (std::uint8_t a = 0; a < 8; ++a) {
    Transform ta{a};
    CHECK(ta.then(ta.inverse()).id == 0);
    for (std::uint8_t b = 0; b < 8; ++b)
      for (int s = 0; s < 64; ++s)
        CHECK(Transform{b}.apply(ta.apply(s, 8), 8) == ta.then(Transform{b}).apply(s, 8));
  }
}

TEST_CASE("canonicalization") {
  std::mt19937_64 rng(90125);
  for (int i = 0; i < 500; ++i) {
    Position p = random_position(rng, 8, i % 3);
    auto [canon, t] = canonicalize(p);
    CHECK(transformed(p, t) == canon);
    auto [canon2, t2] = canonicalize(canon);
    CHECK(canon2 == canon);  // idempotent
    (void)t2;
    std::vector<Position> orbit;
    for (std::uint8_t id = 0; id < 8; ++id) {
      Position img = transformed(p, Transform{id});
      bool seen = false;
      for (auto& o : orbit) seen = seen || o == img;
      if (!seen) orbit.push_back(img);
    }
    CHECK(8 % orbit.size() == 0);
    Position rot = transformed(p, Transform{6});  // 180 degrees
    CHECK(canonicalize(rot).first == canon);
  }
}

TEST_CASE("position text format") {
  auto p = parse_position("Ka1 Qa2 kh8 w");
  REQUIRE(p.position.has_value());
  CHECK(p.position->whiteKing == sq8("a1"));
  CHECK(p.position->whiteQueen == sq8("a2"));
  CHECK(format_position(*p.position) == "Ka1 Qa2 kh8 w");

  CHECK(parse_position("Qa1 Kh1 kh8 re4 w").position.has_value());
  CHECK(!parse_position("Qa1 kh8 re4 w").position.has_value());  // the grammar requires a K

  CHECK(!parse_position("Ka1 Ka2 kh8 w").position.has_value());
  CHECK(!parse_position("Ka1 Qa1 kh8 w").position.has_value());
  auto syntax = parse_position("Ka1 Xb2 kh8 w");
  CHECK(!syntax.position.has_value());
  CHECK(syntax.offset >= 0);
  CHECK(!parse_position("Ka1 kh8").position.has_value());

  std::mt19937_64 rng(55);
  for (int i = 0; i < 500; ++i) {
    Position q = random_position(rng, 8, i % 4);
    auto r = parse_position(format_position(q));
    REQUIRE(r.position.has_value());
    CHECK(*r.position == q);
  }
}
