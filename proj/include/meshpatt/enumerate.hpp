#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "meshpatt/force.hpp"
#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/permutation.hpp"

namespace meshpatt {

// Classical basis of a permutation class.
class Basis {
 public:
  Basis() = default;
  // Throws std::invalid_argument if one pattern contains another or a pattern
  // is empty.
  explicit Basis(std::vector<Permutation> patterns);

  const std::vector<Permutation>& patterns() const { return patterns_; }
  bool empty() const { return patterns_.empty(); }
  // True iff `perm` avoids every basis pattern.
  bool admits(std::span<const int> perm) const;

 private:
  std::vector<Permutation> patterns_;
};

using SequencePrefix = std::vector<std::uint64_t>;

// Number of occurrences of a forced pattern: the mesh occurrences of maximal
// strength. With the empty force every mesh occurrence counts.
int occ_count(const ForcedPattern& fp, const Permutation& host);
int occ_count(const MeshPattern& p, const Permutation& host);

struct BinaryVerdict {
  bool binary = true;
  std::optional<Permutation> witness;  // host with at least two occurrences
  int bound = 0;                       // largest host size checked
};

// Checks every host of size <= bound (default 2|p|) inside Av(basis).
BinaryVerdict is_binary(const ForcedPattern& fp, const std::optional<Basis>& basis = std::nullopt, int bound = -1);
BinaryVerdict is_binary(const MeshPattern& p, const std::optional<Basis>& basis = std::nullopt, int bound = -1);

// Repeatedly inserts a new maximum immediately left of the current maximum;
// the result has at least i occurrences of p. Throws std::invalid_argument
// for the empty pattern or i < 1.
Permutation max_duplication_witness(const Permutation& p, int i);

struct AnchorReport {
  bool anchored = false;
  // Points (by value) in the order the anchoring search reached them,
  // boundary-anchored points first.
  std::vector<int> chain_values;
  // For each ordinal, the ordinal it is anchored through (0 for boundary
  // anchored, -1 for unreached).
  std::vector<int> parent;
};

AnchorReport is_anchored(const MeshPattern& p);

// Greedy force search: while the forced pattern is not binary, add the first
// (point, direction) extension that makes it binary, or else the one leaving
// the fewest offending hosts. Points by ordinal, directions U,D,L,R.
Force find_binary_force(const MeshPattern& p, const std::optional<Basis>& basis = std::nullopt);

// |Av_n(B)| for n = 0..maxn; mesh patterns allowed in the basis.
SequencePrefix count_av(const std::vector<MeshPattern>& basis, int maxn);
SequencePrefix count_av(const Basis& basis, int maxn);
SequencePrefix count_av_serial(const std::vector<MeshPattern>& basis, int maxn);

SequencePrefix catalan_prefix(int maxn);

// Av(p) and Av(q) agree inside Av(basis) for all sizes <= maxn.
bool class_coincidence(const MeshPattern& p, const MeshPattern& q, const Basis& basis, int maxn);

// Unbounded supply of distinct anchored patterns: for n = 1, 2, ... every
// permutation of size n with columns 1..n fully shaded.
class AnchoredStream {
 public:
  MeshPattern next();

 private:
  int n_ = 1;
  std::vector<int> word_ = {1};
  bool started_ = false;
};

}  // namespace meshpatt
