#pragma once

#include <array>
#include <string>

#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/permutation.hpp"

namespace meshpatt {

// One of the eight symmetries of the square acting on permutations and mesh
// patterns, written as complement^c . reverse^r . inverse^i (inverse applied
// first).
struct Symmetry {
  bool inverse = false;
  bool reverse = false;
  bool complement = false;

  static constexpr Symmetry identity() { return {}; }
  static constexpr Symmetry rev() { return {false, true, false}; }
  static constexpr Symmetry comp() { return {false, false, true}; }
  static constexpr Symmetry inv() { return {true, false, false}; }

  bool operator==(const Symmetry&) const = default;
};

const std::array<Symmetry, 8>& all_symmetries();

// Symmetry s' with s'(s(x)) = x.
Symmetry inverse_of(Symmetry s);

// (a . b)(x) = a(b(x)).
Symmetry compose(Symmetry a, Symmetry b);

Permutation apply_symmetry(const Permutation& p, Symmetry s);
MeshPattern apply_symmetry(const MeshPattern& p, Symmetry s);
Square apply_symmetry(Square sq, int pattern_size, Symmetry s);

std::string to_string(Symmetry s);

}  // namespace meshpatt
