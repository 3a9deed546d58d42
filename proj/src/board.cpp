#include "fog/board.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <sstream>

namespace fog {

int popcount(Mask m) { return __builtin_popcountll(m); }
int lowest_square(Mask m) { return m ? __builtin_ctzll(m) : -1; }

std::string square_name(int sq, int n) {
  if (sq < 0 || sq >= n * n) return "??";
  std::string s;
  s += char('a' + file_of(sq, n));
  s += char('1' + rank_of(sq, n));
  return s;
}

int parse_square(std::string_view text, int n) {
  if (text.size() < 2) return -1;
  int f = text[0] - 'a';
  int r = text[1] - '1';
  if (f < 0 || f >= n || r < 0 || r >= n) return -1;
  return square_at(f, r, n);
}

std::string move_name(Move m, int n) { return square_name(m.from, n) + square_name(m.to, n); }

// ---------------------------------------------------------------------------
// Symmetry transforms

int Transform::apply(int sq, int n) const {
  int f = file_of(sq, n), r = rank_of(sq, n);
  if (id & 1) std::swap(f, r);
  if (id & 2) f = n - 1 - f;
  if (id & 4) r = n - 1 - r;
  return square_at(f, r, n);
}

Mask Transform::apply_mask(Mask m, int n) const {
  Mask out = 0;
  for_each_square(m, [&](int sq) { out |= bit(apply(sq, n)); });
  return out;
}

namespace {

struct TransformTables {
  std::array<std::array<std::uint8_t, 8>, 8> compose{};  // compose[a][b] = apply a then b
  std::array<std::uint8_t, 8> inverse{};
  TransformTables() {
    const int n = 8;
    for (int a = 0; a < 8; ++a) {
      for (int b = 0; b < 8; ++b) {
        int found = -1;
        for (int c = 0; c < 8 && found < 0; ++c) {
          bool same = true;
          for (int sq = 0; sq < n * n && same; ++sq) {
            Transform ta{std::uint8_t(a)}, tb{std::uint8_t(b)}, tc{std::uint8_t(c)};
            same = tb.apply(ta.apply(sq, n), n) == tc.apply(sq, n);
          }
          if (same) found = c;
        }
        compose[a][b] = std::uint8_t(found);
      }
    }
    for (int a = 0; a < 8; ++a)
      for (int c = 0; c < 8; ++c)
        if (compose[a][c] == 0) inverse[a] = std::uint8_t(c);
  }
};

const TransformTables& transform_tables() {
  static const TransformTables t;
  return t;
}

}  // namespace

Transform Transform::then(Transform t) const {
  return Transform{transform_tables().compose[id][t.id]};
}

Transform Transform::inverse() const { return Transform{transform_tables().inverse[id]}; }

// ---------------------------------------------------------------------------
// Attack tables

namespace {

constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                             {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

struct BoardTables {
  int n = 0;
  std::array<Mask, 64> king{};
  // ray[dir][sq]: squares outward from sq, -1 terminated.
  std::int8_t ray[8][64][8];

  explicit BoardTables(int side) : n(side) {
    for (int sq = 0; sq < n * n; ++sq) {
      int f = file_of(sq, n), r = rank_of(sq, n);
      Mask k = 0;
      for (int df = -1; df <= 1; ++df)
        for (int dr = -1; dr <= 1; ++dr) {
          if (df == 0 && dr == 0) continue;
          int nf = f + df, nr = r + dr;
          if (nf >= 0 && nf < n && nr >= 0 && nr < n) k |= bit(square_at(nf, nr, n));
        }
      king[sq] = k;
      for (int d = 0; d < 8; ++d) {
        int len = 0;
        int nf = f + kDirs[d][0], nr = r + kDirs[d][1];
        while (nf >= 0 && nf < n && nr >= 0 && nr < n) {
          ray[d][sq][len++] = std::int8_t(square_at(nf, nr, n));
          nf += kDirs[d][0];
          nr += kDirs[d][1];
        }
        if (len < 8) ray[d][sq][len] = -1;
      }
    }
  }
};

const BoardTables& tables(int n) {
  static const BoardTables t4(4), t5(5), t6(6), t7(7), t8(8);
  switch (n) {
    case 4: return t4;
    case 5: return t5;
    case 6: return t6;
    case 7: return t7;
    default: return t8;
  }
}

Mask slide(const BoardTables& t, int sq, Mask occ, int dirBegin, int dirEnd) {
  Mask out = 0;
  for (int d = dirBegin; d < dirEnd; ++d) {
    const std::int8_t* r = t.ray[d][sq];
    for (int i = 0; i < 8 && r[i] >= 0; ++i) {
      out |= bit(r[i]);
      if (occ & bit(r[i])) break;
    }
  }
  return out;
}

}  // namespace

Mask king_attacks(int n, int sq) { return tables(n).king[sq]; }
Mask rook_attacks(int n, int sq, Mask occ) { return slide(tables(n), sq, occ, 0, 4); }
Mask bishop_attacks(int n, int sq, Mask occ) { return slide(tables(n), sq, occ, 4, 8); }
Mask queen_attacks(int n, int sq, Mask occ) { return slide(tables(n), sq, occ, 0, 8); }

// ---------------------------------------------------------------------------
// Position basics

Mask Position::whiteOcc() const {
  Mask m = 0;
  if (whiteKing >= 0) m |= bit(whiteKing);
  if (whiteQueen >= 0) m |= bit(whiteQueen);
  for (auto r : whiteRook)
    if (r >= 0) m |= bit(r);
  return m;
}

Mask Position::blackOcc() const {
  Mask m = 0;
  if (blackKing >= 0) m |= bit(blackKing);
  if (blackQueen >= 0) m |= bit(blackQueen);
  for (auto r : blackRook)
    if (r >= 0) m |= bit(r);
  return m;
}

void Position::normalizeRooks() {
  auto norm = [](std::array<std::int8_t, 2>& rk) {
    if (rk[0] < 0) std::swap(rk[0], rk[1]);
    if (rk[0] >= 0 && rk[1] >= 0 && rk[0] > rk[1]) std::swap(rk[0], rk[1]);
  };
  norm(whiteRook);
  norm(blackRook);
}

std::optional<std::string> validate_position(const Position& p) {
  const int n = p.n();
  if (n < 4 || n > 8) return "board side out of range";
  int count = 0;
  Mask seen = 0;
  auto check = [&](int sq) -> std::optional<std::string> {
    if (sq < 0) return std::nullopt;
    if (sq >= n * n) return "square off board";
    if (seen & bit(sq)) return "two pieces on " + square_name(sq, n);
    seen |= bit(sq);
    ++count;
    return std::nullopt;
  };
  if (p.whiteKing < 0) return "missing white king";
  if (p.blackKing < 0) return "missing black king";
  for (int sq : {int(p.whiteKing), int(p.whiteQueen), int(p.whiteRook[0]), int(p.whiteRook[1]),
                 int(p.blackKing), int(p.blackQueen), int(p.blackRook[0]), int(p.blackRook[1])})
    if (auto err = check(sq)) return err;
  (void)count;
  return std::nullopt;
}

bool scenario_material(const Position& p) {
  if (p.blackQueen >= 0 || p.blackRook[0] >= 0 || p.blackRook[1] >= 0) return false;
  bool q = p.whiteQueen >= 0;
  int rooks = (p.whiteRook[0] >= 0) + (p.whiteRook[1] >= 0);
  if (q && rooks > 0) return false;
  return true;  // K, KQ, KR, KRR vs k
}

// ---------------------------------------------------------------------------
// Moves and visibility

Mask attacked_squares(const Position& p, Color attacker) {
  const int n = p.n();
  const Mask occ = p.occupied();
  Mask out = 0;
  if (attacker == Color::White) {
    if (p.whiteKing >= 0) out |= king_attacks(n, p.whiteKing);
    if (p.whiteQueen >= 0) out |= queen_attacks(n, p.whiteQueen, occ);
    for (auto r : p.whiteRook)
      if (r >= 0) out |= rook_attacks(n, r, occ);
  } else {
    if (p.blackKing >= 0) out |= king_attacks(n, p.blackKing);
    if (p.blackQueen >= 0) out |= queen_attacks(n, p.blackQueen, occ);
    for (auto r : p.blackRook)
      if (r >= 0) out |= rook_attacks(n, r, occ);
  }
  return out;
}

Mask move_destinations(const Position& p, Color mover) {
  Mask own = mover == Color::White ? p.whiteOcc() : p.blackOcc();
  return attacked_squares(p, mover) & ~own;
}

Mask visible_squares(const Position& p, Color observer) {
  Mask own = observer == Color::White ? p.whiteOcc() : p.blackOcc();
  return move_destinations(p, observer) | own;
}

std::vector<Move> legal_moves(const Position& p, Color mover) {
  const int n = p.n();
  const Mask occ = p.occupied();
  const Mask own = mover == Color::White ? p.whiteOcc() : p.blackOcc();
  std::vector<Move> out;
  out.reserve(32);
  auto gen = [&](int from, Mask att) {
    for_each_square(att & ~own, [&](int to) {
      out.push_back(Move{std::int8_t(from), std::int8_t(to)});
    });
  };
  if (mover == Color::White) {
    if (p.whiteKing >= 0) gen(p.whiteKing, king_attacks(n, p.whiteKing));
    if (p.whiteQueen >= 0) gen(p.whiteQueen, queen_attacks(n, p.whiteQueen, occ));
    for (auto r : p.whiteRook)
      if (r >= 0) gen(r, rook_attacks(n, r, occ));
  } else {
    if (p.blackKing >= 0) gen(p.blackKing, king_attacks(n, p.blackKing));
    if (p.blackQueen >= 0) gen(p.blackQueen, queen_attacks(n, p.blackQueen, occ));
    for (auto r : p.blackRook)
      if (r >= 0) gen(r, rook_attacks(n, r, occ));
  }
  return out;
}

bool is_legal_move(const Position& p, Color mover, Move m) {
  if (m.from < 0 || m.to < 0 || m.from == m.to) return false;
  const int n = p.n();
  const Mask occ = p.occupied();
  const Mask own = mover == Color::White ? p.whiteOcc() : p.blackOcc();
  if (!(own & bit(m.from)) || (own & bit(m.to))) return false;
  Mask att = 0;
  if (m.from == p.whiteKing || m.from == p.blackKing) att = king_attacks(n, m.from);
  else if (m.from == p.whiteQueen || m.from == p.blackQueen) att = queen_attacks(n, m.from, occ);
  else att = rook_attacks(n, m.from, occ);
  return (att & bit(m.to)) != 0;
}

std::pair<Position, GameStatus> apply_move(const Position& p, Move m) {
  assert(is_legal_move(p, p.sideToMove, m));
  Position q = p;
  GameStatus status = GameStatus::Ongoing;
  // remove any captured piece
  auto clear_at = [&](int to) {
    if (q.whiteKing == to) { q.whiteKing = -1; status = GameStatus::BlackWon; }
    if (q.blackKing == to) { q.blackKing = -1; status = GameStatus::WhiteWon; }
    if (q.whiteQueen == to) q.whiteQueen = -1;
    if (q.blackQueen == to) q.blackQueen = -1;
    for (auto& r : q.whiteRook)
      if (r == to) r = -1;
    for (auto& r : q.blackRook)
      if (r == to) r = -1;
  };
  clear_at(m.to);
  auto move_from = [&](std::int8_t& piece) {
    if (piece == m.from) piece = m.to;
  };
  move_from(q.whiteKing);
  move_from(q.whiteQueen);
  move_from(q.blackKing);
  move_from(q.blackQueen);
  for (auto& r : q.whiteRook) move_from(r);
  for (auto& r : q.blackRook) move_from(r);
  q.normalizeRooks();
  q.sideToMove = other(p.sideToMove);
  return {q, status};
}

// ---------------------------------------------------------------------------
// Canonicalization

Position transformed(const Position& p, Transform t) {
  const int n = p.n();
  Position q = p;
  auto map = [&](std::int8_t sq) { return sq < 0 ? sq : std::int8_t(t.apply(sq, n)); };
  q.whiteKing = map(p.whiteKing);
  q.whiteQueen = map(p.whiteQueen);
  q.blackKing = map(p.blackKing);
  q.blackQueen = map(p.blackQueen);
  for (int i = 0; i < 2; ++i) {
    q.whiteRook[i] = map(p.whiteRook[i]);
    q.blackRook[i] = map(p.blackRook[i]);
  }
  q.normalizeRooks();
  return q;
}

namespace {
// Lexicographic key over the piece layout; smaller is more canonical.
std::array<std::int8_t, 9> position_key(const Position& p) {
  return {p.whiteKing, p.whiteQueen, p.whiteRook[0], p.whiteRook[1], p.blackKing,
          p.blackQueen, p.blackRook[0], p.blackRook[1],
          std::int8_t(p.sideToMove == Color::White ? 0 : 1)};
}
}  // namespace

std::pair<Position, Transform> canonicalize(const Position& p) {
  Position best = transformed(p, Transform{0});
  Transform bestT{0};
  auto bestKey = position_key(best);
  for (std::uint8_t id = 1; id < Transform::Count; ++id) {
    Position cand = transformed(p, Transform{id});
    auto key = position_key(cand);
    if (key < bestKey) {
      best = cand;
      bestT = Transform{id};
      bestKey = key;
    }
  }
  return {best, bestT};
}

// ---------------------------------------------------------------------------
// Text format: `<piece>+ <side>`, piece = [KQRkqr][a-h][1-8], side = w|b.

ParseResult parse_position(std::string_view text, int boardSide) {
  Position p;
  p.boardSide = std::int8_t(boardSide);
  p.whiteKing = p.blackKing = -1;
  bool haveSide = false;
  std::size_t i = 0;
  auto fail = [&](std::string msg, std::size_t at) {
    ParseResult r;
    r.error = std::move(msg);
    r.offset = int(at);
    return r;
  };
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    std::size_t tokStart = i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    if (tok == "w" || tok == "b") {
      if (haveSide) return fail("duplicate side to move", tokStart);
      p.sideToMove = tok == "w" ? Color::White : Color::Black;
      haveSide = true;
      continue;
    }
    if (haveSide) return fail("tokens after side to move", tokStart);
    if (tok.size() != 3) return fail("bad piece token", tokStart);
    int sq = parse_square(tok.substr(1), boardSide);
    if (sq < 0) return fail("bad square", tokStart + 1);
    auto place = [&](std::int8_t& slot, const char* name) -> std::optional<ParseResult> {
      if (slot >= 0) return fail(std::string("duplicate ") + name, tokStart);
      slot = std::int8_t(sq);
      return std::nullopt;
    };
    auto placeRook = [&](std::array<std::int8_t, 2>& rooks) -> std::optional<ParseResult> {
      if (rooks[0] < 0) rooks[0] = std::int8_t(sq);
      else if (rooks[1] < 0) rooks[1] = std::int8_t(sq);
      else return fail("more than two rooks", tokStart);
      return std::nullopt;
    };
    std::optional<ParseResult> err;
    switch (tok[0]) {
      case 'K': err = place(p.whiteKing, "white king"); break;
      case 'Q': err = place(p.whiteQueen, "white queen"); break;
      case 'R': err = placeRook(p.whiteRook); break;
      case 'k': err = place(p.blackKing, "black king"); break;
      case 'q': err = place(p.blackQueen, "black queen"); break;
      case 'r': err = placeRook(p.blackRook); break;
      default: return fail("unknown piece letter", tokStart);
    }
    if (err) return *err;
  }
  if (!haveSide) return {std::nullopt, "missing side to move", int(text.size())};
  p.normalizeRooks();
  if (auto err = validate_position(p)) return {std::nullopt, *err, 0};
  ParseResult r;
  r.position = p;
  return r;
}

std::string format_position(const Position& p) {
  const int n = p.n();
  std::ostringstream out;
  auto emit = [&](char letter, int sq) {
    if (sq >= 0) out << letter << square_name(sq, n) << ' ';
  };
  emit('K', p.whiteKing);
  emit('Q', p.whiteQueen);
  emit('R', p.whiteRook[0]);
  emit('R', p.whiteRook[1]);
  emit('k', p.blackKing);
  emit('q', p.blackQueen);
  emit('r', p.blackRook[0]);
  emit('r', p.blackRook[1]);
  out << (p.sideToMove == Color::White ? 'w' : 'b');
  return out.str();
}

}  // namespace fog
