#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meshpatt/insertion.hpp"
#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/occurrence.hpp"
#include "meshpatt/permutation.hpp"

namespace meshpatt {

// One forced point: the 1-based position of a point in the pattern word and
// the direction it is pushed in.
struct ForceEntry {
  int point = 1;
  Direction dir = Direction::Up;

  bool operator==(const ForceEntry&) const = default;
};

using Force = std::vector<ForceEntry>;

// Throws std::invalid_argument on repeated or out-of-range points.
void validate_force(const Force& f, int pattern_size);

// "2:U,3:D"; empty string for the empty force.
std::string format_force(const Force& f);
Force parse_force(std::string_view text);

// Compared lexicographically; only vectors of one force are ever compared.
struct StrengthVector {
  std::vector<int> components;

  auto operator<=>(const StrengthVector&) const = default;
  bool operator==(const StrengthVector&) const = default;
};

// Strength of `occ` inside `host_word`: +value for U, -value for D, -index
// for L, +index for R, read at each forced ordinal. Works for permutation
// hosts and for the word of a host mesh pattern alike.
StrengthVector strength(std::span<const int> host_word, const Occurrence& occ, const Force& f);
StrengthVector strength(const Permutation& host, const Occurrence& occ, const Force& f);

struct ForcedPattern {
  MeshPattern pattern;
  Force force;
};

// The mesh occurrences of maximal strength, all ties, lexicographic order.
std::vector<Occurrence> strongest_occurrences(const Permutation& host, const ForcedPattern& fp);

struct Relation {
  bool above = false;
  bool below = false;
  bool left_of = false;
  bool right_of = false;

  bool none() const { return !above && !below && !left_of && !right_of; }
  bool operator==(const Relation&) const = default;
};

// How occurrence u sits relative to v at the given pattern point.
Relation compare_wrt_point(const Permutation& host, const Occurrence& u, const Occurrence& v, int point);

// All forces on a pattern of size k with at most max_size entries: by size,
// then point tuples in lexicographic order, then directions in U,D,L,R order.
std::vector<Force> enumerate_forces(int k, int max_size);

}  // namespace meshpatt
