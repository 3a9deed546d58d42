#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Pawnless Fog of War chess rules on an n x n board (4 <= n <= 8).
// Squares are flat indices file + n*rank; masks are one bit per square.

namespace fog {

using Mask = std::uint64_t;

enum class Color : std::uint8_t { White, Black };
enum class PieceKind : std::uint8_t { King, Queen, Rook };
enum class GameStatus : std::uint8_t { Ongoing, WhiteWon, BlackWon, MaterialLost };

constexpr Color other(Color c) { return c == Color::White ? Color::Black : Color::White; }
constexpr Mask bit(int sq) { return Mask{1} << sq; }

constexpr int square_at(int file, int rank, int n) { return file + n * rank; }
constexpr int file_of(int sq, int n) { return sq % n; }
constexpr int rank_of(int sq, int n) { return sq / n; }

std::string square_name(int sq, int n);
int parse_square(std::string_view text, int n);  // -1 on failure

int popcount(Mask m);
int lowest_square(Mask m);  // -1 when empty
// Iterate set bits low to high.
template <class F>
inline void for_each_square(Mask m, F&& f) {
  while (m) {
    int sq = __builtin_ctzll(m);
    m &= m - 1;
    f(sq);
  }
}

struct Move {
  std::int8_t from = -1;
  std::int8_t to = -1;
  bool operator==(const Move&) const = default;
};
std::string move_name(Move m, int n);

// One of the 8 dihedral board symmetries. Application order: transpose,
// then file flip, then rank flip.
struct Transform {
  std::uint8_t id = 0;  // bit0 transpose, bit1 flip file, bit2 flip rank
  int apply(int sq, int n) const;
  Mask apply_mask(Mask m, int n) const;
  Transform then(Transform t) const;  // apply *this first, then t
  Transform inverse() const;
  bool operator==(const Transform&) const = default;
  static constexpr int Count = 8;
};

struct Position {
  std::int8_t boardSide = 8;
  Color sideToMove = Color::White;
  std::int8_t whiteKing = -1;
  std::int8_t whiteQueen = -1;
  std::array<std::int8_t, 2> whiteRook{-1, -1};
  std::int8_t blackKing = -1;
  std::int8_t blackQueen = -1;  // parsing completeness only; engine scenarios exclude these
  std::array<std::int8_t, 2> blackRook{-1, -1};

  int n() const { return boardSide; }
  Mask whiteOcc() const;
  Mask blackOcc() const;
  Mask occupied() const { return whiteOcc() | blackOcc(); }
  void normalizeRooks();
  bool operator==(const Position&) const = default;
};

// nullopt when fine, otherwise a diagnostic.
std::optional<std::string> validate_position(const Position& p);
// True for the engine scenarios: White = K{,Q|R|RR}, Black = lone king.
bool scenario_material(const Position& p);

Mask king_attacks(int n, int sq);
Mask rook_attacks(int n, int sq, Mask occ);
Mask bishop_attacks(int n, int sq, Mask occ);
Mask queen_attacks(int n, int sq, Mask occ);

// Squares the attacker could capture on next move (own-occupied squares
// included: a defended square counts as attacked).
Mask attacked_squares(const Position& p, Color attacker);
// Destination squares of all legal moves for the mover.
Mask move_destinations(const Position& p, Color mover);
// Destinations plus the observer's own occupied squares.
Mask visible_squares(const Position& p, Color observer);

std::vector<Move> legal_moves(const Position& p, Color mover);
bool is_legal_move(const Position& p, Color mover, Move m);

std::pair<Position, GameStatus> apply_move(const Position& p, Move m);

std::pair<Position, Transform> canonicalize(const Position& p);
Position transformed(const Position& p, Transform t);

struct ParseResult {
  std::optional<Position> position;
  std::string error;
  int offset = -1;
};
ParseResult parse_position(std::string_view text, int boardSide = 8);
std::string format_position(const Position& p);

}  // namespace fog
