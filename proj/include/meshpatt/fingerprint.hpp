#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "meshpatt/mesh_pattern.hpp"

namespace meshpatt {

// Dense bitset indexed by lexicographic rank within S_n.
class PermBitset {
 public:
  PermBitset() = default;
  explicit PermBitset(std::uint64_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::uint64_t size() const { return nbits_; }
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::uint64_t count() const;
  bool is_subset_of(const PermBitset& o) const;
  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const PermBitset&) const = default;

 private:
  std::uint64_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

// Av_n(p) for n = 0..maxn, one bitset per size.
struct Fingerprint {
  std::vector<PermBitset> by_size;

  int maxn() const { return static_cast<int>(by_size.size()) - 1; }
  std::uint64_t count(int n) const { return by_size[static_cast<std::size_t>(n)].count(); }
  // Av(this) subset of Av(other) at every size, i.e. containing other's
  // pattern implies containing this one's.
  bool is_subset_of(const Fingerprint& other) const;
  bool operator==(const Fingerprint&) const = default;
};

// OpenMP kernel: ranks of S_n are split into 64-aligned blocks.
Fingerprint avoidance_fingerprint(const MeshPattern& p, int maxn);

// Single-threaded reference used to check the parallel kernel.
Fingerprint avoidance_fingerprint_serial(const MeshPattern& p, int maxn);

// Permutation of S_n with the given lexicographic rank.
std::vector<int> lex_unrank(int n, std::uint64_t rank);

}  // namespace meshpatt
