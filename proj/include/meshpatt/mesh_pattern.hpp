#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meshpatt/permutation.hpp"

namespace meshpatt {

// Unit square of a mesh indexed by its lower-left corner: (col,row) denotes
// [col,col+1] x [row,row+1]. Both coordinates lie in [0,k] for a size-k grid.
struct Square {
  int col = 0;
  int row = 0;

  auto operator<=>(const Square&) const = default;
  bool operator==(const Square&) const = default;
};

// Set of squares of a (k+1)x(k+1) grid stored as a bit mask. Bit
// col*(k+1)+row holds square (col,row), which is exactly the bit order of the
// integer encoding used by result files. The grid size lives with the owning
// pattern; a Shading on its own is just bits.
class Shading {
 public:
  static constexpr int kWords = 4;
  static constexpr int kMaxBits = 64 * kWords;
  // Largest pattern whose grid fits: (k+1)^2 <= kMaxBits.
  static constexpr int kMaxPatternSize = 15;

  constexpr Shading() = default;

  static Shading from_u64(std::uint64_t bits) {
    Shading s;
    s.words_[0] = bits;
    return s;
  }
  static Shading full(int grid);

  bool test(int bit) const { return (words_[static_cast<std::size_t>(bit >> 6)] >> (bit & 63)) & 1u; }
  void set(int bit) { words_[static_cast<std::size_t>(bit >> 6)] |= std::uint64_t{1} << (bit & 63); }
  void reset(int bit) { words_[static_cast<std::size_t>(bit >> 6)] &= ~(std::uint64_t{1} << (bit & 63)); }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool is_subset_of(const Shading& o) const {
    for (int i = 0; i < kWords; ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  // Highest set bit, or -1.
  int highest_bit() const;

  std::uint64_t word(int i) const { return words_[static_cast<std::size_t>(i)]; }

  Shading operator|(const Shading& o) const {
    Shading r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }
  Shading operator&(const Shading& o) const {
    Shading r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  // Set difference.
  Shading operator-(const Shading& o) const {
    Shading r;
    for (int i = 0; i < kWords; ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
  }
  Shading& operator|=(const Shading& o) {
    for (int i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }

  auto operator<=>(const Shading& o) const {
    for (int i = kWords - 1; i >= 0; --i)
      if (words_[i] != o.words_[i]) return words_[i] <=> o.words_[i];
    return std::strong_ordering::equal;
  }
  bool operator==(const Shading&) const = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

// A mesh pattern (tau, R): an underlying classical pattern plus shaded squares.
class MeshPattern {
 public:
  MeshPattern() = default;
  explicit MeshPattern(Permutation pattern) : pattern_(std::move(pattern)) { check_size(); }
  MeshPattern(Permutation pattern, Shading shading);
  // Throws std::invalid_argument on squares outside [0,k]^2.
  MeshPattern(Permutation pattern, const std::vector<Square>& shaded);

  const Permutation& pattern() const { return pattern_; }
  const Shading& shading() const { return shading_; }
  int size() const { return pattern_.size(); }
  int grid() const { return pattern_.size() + 1; }
  int num_squares() const { return grid() * grid(); }

  int bit(Square sq) const { return sq.col * grid() + sq.row; }
  Square square(int bit) const { return {bit / grid(), bit % grid()}; }
  bool in_range(Square sq) const { return sq.col >= 0 && sq.row >= 0 && sq.col < grid() && sq.row < grid(); }
  bool is_shaded(Square sq) const { return shading_.test(bit(sq)); }

  MeshPattern with_shaded(Square sq) const;
  MeshPattern with_shading(Shading s) const { return MeshPattern(pattern_, s); }

  // Shaded squares in bit order (column-major).
  std::vector<Square> shaded_squares() const;
  bool fully_shaded() const { return shading_.count() == num_squares(); }

  auto operator<=>(const MeshPattern&) const = default;
  bool operator==(const MeshPattern&) const = default;

 private:
  void check_size() const;
  Permutation pattern_;
  Shading shading_;
};

// Shading built from a square list on a grid of the given size.
Shading make_shading(int grid, const std::vector<Square>& squares);

std::string to_string(Square sq);

}  // namespace meshpatt

template <>
struct std::hash<meshpatt::Shading> {
  std::size_t operator()(const meshpatt::Shading& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < meshpatt::Shading::kWords; ++i) h = (h ^ s.word(i)) * 0x100000001b3ull + (h >> 29);
    return h;
  }
};

template <>
struct std::hash<meshpatt::MeshPattern> {
  std::size_t operator()(const meshpatt::MeshPattern& p) const noexcept {
    return std::hash<meshpatt::Permutation>{}(p.pattern()) * 31 + std::hash<meshpatt::Shading>{}(p.shading());
  }
};
