#pragma once

#include <compare>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/permutation.hpp"

namespace meshpatt {

// Strictly increasing 1-based positions into a host (a permutation or the
// word of a mesh pattern).
struct Occurrence {
  std::vector<int> indices;

  int size() const { return static_cast<int>(indices.size()); }
  // 1-based access mirroring pattern ordinals.
  int operator[](int ordinal) const { return indices[static_cast<std::size_t>(ordinal - 1)]; }

  auto operator<=>(const Occurrence&) const = default;
  bool operator==(const Occurrence&) const = default;
};

std::string to_string(const Occurrence& occ);

// Host letters at the occurrence positions.
std::vector<int> occurrence_values(const Permutation& host, const Occurrence& occ);

// Enumerates the order-isomorphic copies of `patt` in `host` in lexicographic
// index order; `fn` receives the 1-based positions and returns false to stop.
// This is the raw kernel the other engines are built on.
template <class Fn>
void visit_classical_occurrences(std::span<const int> host, std::span<const int> patt, Fn&& fn);

void for_each_classical_occurrence(std::span<const int> host, std::span<const int> patt,
                                   const std::function<bool(std::span<const int>)>& fn);

std::vector<Occurrence> classical_occurrences(const Permutation& host, const Permutation& patt);

// Squares of the size-k pattern grid whose host region is free of host
// points; (tau,R) occurs at `occ` iff R is a subset of the result. Throws
// std::invalid_argument on malformed indices.
Shading shading_allowed_mask(const Permutation& host, const Occurrence& occ);

// Mesh-in-mesh analogue: a pattern square is allowed iff its host region has
// no host point and every host square inside it is shaded.
Shading maximal_shading(const MeshPattern& host, const Occurrence& occ);

std::vector<Occurrence> mesh_occurrences(const Permutation& host, const MeshPattern& p);
bool contains(const Permutation& host, const MeshPattern& p);
int count_occurrences(const Permutation& host, const MeshPattern& p);

std::vector<Occurrence> mesh_in_mesh_occurrences(const MeshPattern& host, const MeshPattern& p);
bool contains(const MeshPattern& host, const MeshPattern& p);

// Host squares (col,row) covered by the region of pattern square `sq` under
// `occ` in a host of size m, in row-major order.
std::vector<Square> region_squares(std::span<const int> host_word, const Occurrence& occ, Square sq);

// True iff some host point lies strictly inside the region of `sq`.
bool region_has_point(std::span<const int> host_word, const Occurrence& occ, Square sq);

namespace detail {

// For each pattern position j, the positions t < j holding the nearest smaller
// and nearest larger pattern value (-1 when absent). A host letter extends a
// partial match iff it lies strictly between the letters matched there.
struct OrderBounds {
  std::vector<int> below;
  std::vector<int> above;
};
OrderBounds order_bounds(std::span<const int> patt);

}  // namespace detail

template <class Fn>
void visit_classical_occurrences(std::span<const int> host, std::span<const int> patt, Fn&& fn) {
  const int n = static_cast<int>(host.size());
  const int k = static_cast<int>(patt.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  if (k == 0) {
    fn(std::span<const int>(idx));
    return;
  }
  if (k > n) return;
  const detail::OrderBounds b = detail::order_bounds(patt);
  // Iterative backtracking over positions; idx holds 1-based positions.
  int j = 0;
  idx[0] = 0;
  while (j >= 0) {
    int& cur = idx[static_cast<std::size_t>(j)];
    ++cur;
    if (cur > n - (k - 1 - j)) {
      --j;
      continue;
    }
    const int v = host[static_cast<std::size_t>(cur - 1)];
    const int lo = b.below[static_cast<std::size_t>(j)];
    const int hi = b.above[static_cast<std::size_t>(j)];
    if (lo >= 0 && host[static_cast<std::size_t>(idx[static_cast<std::size_t>(lo)] - 1)] > v) continue;
    if (hi >= 0 && host[static_cast<std::size_t>(idx[static_cast<std::size_t>(hi)] - 1)] < v) continue;
    if (j == k - 1) {
      if (!fn(std::span<const int>(idx))) return;
      continue;
    }
    ++j;
    idx[static_cast<std::size_t>(j)] = cur;
  }
}

}  // namespace meshpatt
