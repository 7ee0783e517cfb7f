#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace meshpatt {

// A permutation of [1,n] in one-line notation. Positions and values are
// 1-based; the empty permutation is valid.
class Permutation {
 public:
  Permutation() = default;

  // Throws std::invalid_argument unless `word` is a bijection on [1,n].
  explicit Permutation(std::vector<int> word);

  static Permutation identity(int n);

  // Standardizes an arbitrary sequence of distinct integers (order isomorphic
  // copy on [1,n]).
  static Permutation standardize(std::span<const int> seq);

  int size() const { return static_cast<int>(word_.size()); }
  bool empty() const { return word_.empty(); }

  // Value at 1-based position.
  int operator()(int pos) const { return word_[static_cast<std::size_t>(pos - 1)]; }

  std::span<const int> word() const { return word_; }

  // 1-based position of a value.
  int position_of(int value) const;

  Permutation inverse() const;
  Permutation reverse() const;
  Permutation complement() const;

  // Digits when every value is < 10, comma separated otherwise; "" for the
  // empty permutation.
  std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> word, Unchecked) : word_(std::move(word)) {}

  std::vector<int> word_;
};

// Lexicographically ordered enumeration of S_n.
std::vector<Permutation> all_permutations(int n);

// Calls fn(word) for each permutation of S_n in lexicographic order; stops
// early when fn returns false. Returns false iff stopped early.
bool for_each_permutation(int n, const std::function<bool(std::span<const int>)>& fn);

std::uint64_t factorial(int n);

// Lexicographic rank of a permutation within S_n.
std::uint64_t lex_rank(std::span<const int> word);

}  // namespace meshpatt

template <>
struct std::hash<meshpatt::Permutation> {
  std::size_t operator()(const meshpatt::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.word()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};
