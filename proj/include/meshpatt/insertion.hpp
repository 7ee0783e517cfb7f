#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/occurrence.hpp"

namespace meshpatt {

// Which extreme point of a square region is placed: highest, lowest,
// leftmost or rightmost.
enum class Direction { Up, Down, Left, Right };

inline constexpr std::array<Direction, 4> kDirections = {Direction::Up, Direction::Down, Direction::Left,
                                                         Direction::Right};

char direction_letter(Direction d);  // U, D, L, R
std::optional<Direction> direction_from_letter(char c);

// Adds a point inside the unshaded square `sq`: the new point sits at position
// sq.col+1 with value sq.row+1, shaded squares are carried over (a square in
// the split column or row shades both halves) and the four squares touching
// the new point are left unshaded. Throws std::invalid_argument if `sq` is
// shaded or out of range.
MeshPattern insert_point(const MeshPattern& p, Square sq);

// insert_point plus the pair of squares on the `dir` side of the new point.
MeshPattern insert_directed(const MeshPattern& p, Square sq, Direction dir);

// The four directed insertions, duplicates removed, in U,D,L,R order.
std::vector<MeshPattern> star_set(const MeshPattern& p, Square sq);

// Position of `p`'s points inside any insertion into `sq`: every index past
// sq.col moves one to the right.
Occurrence trivial_occurrence(int pattern_size, Square sq);

// Re-targets an occurrence into the pattern obtained by inserting into `sq`.
Occurrence shift_occurrence(const Occurrence& occ, Square sq);

}  // namespace meshpatt
