#include "meshpatt/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include <omp.h>

#include "meshpatt/occurrence.hpp"

namespace meshpatt {

std::uint64_t PermBitset::count() const {
  std::uint64_t c = 0;
  for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

bool PermBitset::is_subset_of(const PermBitset& o) const {
  if (nbits_ != o.nbits_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

bool Fingerprint::is_subset_of(const Fingerprint& other) const {
  if (by_size.size() != other.by_size.size()) return false;
  for (std::size_t n = 0; n < by_size.size(); ++n)
    if (!by_size[n].is_subset_of(other.by_size[n])) return false;
  return true;
}

std::vector<int> lex_unrank(int n, std::uint64_t rank) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = n; i >= 1; --i) {
    const std::uint64_t f = factorial(i - 1);
    const auto q = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return out;
}

Fingerprint avoidance_fingerprint_serial(const MeshPattern& p, int maxn) {
  Fingerprint fp;
  for (int n = 0; n <= maxn; ++n) {
    PermBitset bits(factorial(n));
    std::uint64_t rank = 0;
    for_each_permutation(n, [&](std::span<const int> w) {
      if (!contains(Permutation(std::vector<int>(w.begin(), w.end())), p)) bits.set(rank);
      ++rank;
      return true;
    });
    fp.by_size.push_back(std::move(bits));
  }
  return fp;
}

Fingerprint avoidance_fingerprint(const MeshPattern& p, int maxn) {
  Fingerprint fp;
  for (int n = 0; n <= maxn; ++n) {
    const std::uint64_t total = factorial(n);
    PermBitset bits(total);
    const auto nblocks = static_cast<std::int64_t>((total + 63) / 64);
    auto words = bits.words();
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t blk = 0; blk < nblocks; ++blk) {
      const std::uint64_t lo = static_cast<std::uint64_t>(blk) * 64;
      const std::uint64_t hi = std::min(total, lo + 64);
      std::vector<int> w = lex_unrank(n, lo);
      std::uint64_t word = 0;
      for (std::uint64_t r = lo; r < hi; ++r) {
        if (!contains(Permutation(w), p)) word |= std::uint64_t{1} << (r - lo);
        std::next_permutation(w.begin(), w.end());
      }
      words[static_cast<std::size_t>(blk)] = word;
    }
    fp.by_size.push_back(std::move(bits));
  }
  return fp;
}

}  // namespace meshpatt
