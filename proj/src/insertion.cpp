#include "meshpatt/insertion.hpp"

#include <algorithm>
#include <stdexcept>

namespace meshpatt {

char direction_letter(Direction d) {
  switch (d) {
    case Direction::Up: return 'U';
    case Direction::Down: return 'D';
    case Direction::Left: return 'L';
    case Direction::Right: return 'R';
  }
  return '?';
}

std::optional<Direction> direction_from_letter(char c) {
  switch (c) {
    case 'U': case 'u': return Direction::Up;
    case 'D': case 'd': return Direction::Down;
    case 'L': case 'l': return Direction::Left;
    case 'R': case 'r': return Direction::Right;
    default: return std::nullopt;
  }
}

MeshPattern insert_point(const MeshPattern& p, Square sq) {
  if (!p.in_range(sq)) throw std::invalid_argument("square " + to_string(sq) + " out of range");
  if (p.is_shaded(sq)) throw std::invalid_argument("cannot insert into shaded square " + to_string(sq));
  const int k = p.size();
  const int i = sq.col, j = sq.row;

  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(k) + 1);
  for (int x = 1; x <= k + 1; ++x) {
    if (x == i + 1) {
      word.push_back(j + 1);
    } else {
      const int v = p.pattern()(x <= i ? x : x - 1);
      word.push_back(v > j ? v + 1 : v);
    }
  }

  // Each old coordinate maps to one new coordinate, or two when it is the
  // split line.
  const int g2 = k + 2;
  Shading out;
  for (const Square s : p.shaded_squares()) {
    const int c0 = s.col < i ? s.col : s.col + 1;
    const int c1 = s.col == i ? i : c0;
    const int r0 = s.row < j ? s.row : s.row + 1;
    const int r1 = s.row == j ? j : r0;
    out.set(c0 * g2 + r0);
    out.set(c0 * g2 + r1);
    out.set(c1 * g2 + r0);
    out.set(c1 * g2 + r1);
  }
  return MeshPattern(Permutation(std::move(word)), out);
}

MeshPattern insert_directed(const MeshPattern& p, Square sq, Direction dir) {
  MeshPattern m = insert_point(p, sq);
  const int i = sq.col, j = sq.row;
  switch (dir) {
    case Direction::Up: return m.with_shaded({i, j + 1}).with_shaded({i + 1, j + 1});
    case Direction::Down: return m.with_shaded({i, j}).with_shaded({i + 1, j});
    case Direction::Left: return m.with_shaded({i, j}).with_shaded({i, j + 1});
    case Direction::Right: return m.with_shaded({i + 1, j}).with_shaded({i + 1, j + 1});
  }
  return m;
}

std::vector<MeshPattern> star_set(const MeshPattern& p, Square sq) {
  std::vector<MeshPattern> out;
  for (Direction d : kDirections) {
    MeshPattern m = insert_directed(p, sq, d);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
  }
  return out;
}

Occurrence trivial_occurrence(int pattern_size, Square sq) {
  Occurrence occ;
  for (int x = 1; x <= pattern_size; ++x) occ.indices.push_back(x <= sq.col ? x : x + 1);
  return occ;
}

Occurrence shift_occurrence(const Occurrence& occ, Square sq) {
  Occurrence out = occ;
  for (int& x : out.indices)
    if (x > sq.col) ++x;
  return out;
}

}  // namespace meshpatt
