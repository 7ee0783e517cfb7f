#include "meshpatt/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace meshpatt {

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  const int n = size();
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int v : word_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation of [1," + std::to_string(n) + "]");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return Permutation(std::move(w), Unchecked{});
}

Permutation Permutation::standardize(std::span<const int> seq) {
  std::vector<int> order(seq.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return seq[a] < seq[b]; });
  std::vector<int> w(seq.size());
  for (std::size_t r = 0; r < order.size(); ++r) w[static_cast<std::size_t>(order[r])] = static_cast<int>(r) + 1;
  return Permutation(std::move(w));
}

int Permutation::position_of(int value) const {
  auto it = std::find(word_.begin(), word_.end(), value);
  if (it == word_.end()) throw std::out_of_range("value not in permutation");
  return static_cast<int>(it - word_.begin()) + 1;
}

Permutation Permutation::inverse() const {
  std::vector<int> w(word_.size());
  for (std::size_t i = 0; i < word_.size(); ++i) w[static_cast<std::size_t>(word_[i] - 1)] = static_cast<int>(i) + 1;
  return Permutation(std::move(w), Unchecked{});
}

Permutation Permutation::reverse() const {
  return Permutation(std::vector<int>(word_.rbegin(), word_.rend()), Unchecked{});
}

Permutation Permutation::complement() const {
  std::vector<int> w(word_);
  for (int& v : w) v = size() + 1 - v;
  return Permutation(std::move(w), Unchecked{});
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  const bool digits = size() < 10;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (!digits && i > 0) os << ',';
    os << word_[i];
  }
  return os.str();
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  for_each_permutation(n, [&](std::span<const int> w) {
    out.emplace_back(std::vector<int>(w.begin(), w.end()));
    return true;
  });
  return out;
}

bool for_each_permutation(int n, const std::function<bool(std::span<const int>)>& fn) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  do {
    if (!fn(w)) return false;
  } while (std::next_permutation(w.begin(), w.end()));
  return true;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t lex_rank(std::span<const int> word) {
  const int n = static_cast<int>(word.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += word[j] < word[i];
    rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
  }
  return rank;
}

}  // namespace meshpatt
