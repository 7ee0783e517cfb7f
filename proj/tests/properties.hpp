#pragma once

// Property checks shared by the unit tests and the acceptance runner. Each
// returns the number of violations found.

#include <map>
#include <random>

#include "meshpatt/fingerprint.hpp"
#include "meshpatt/insertion.hpp"
#include "meshpatt/prover.hpp"
#include "meshpatt/symmetry.hpp"
#include "meshpatt/text_format.hpp"
#include "oracle.hpp"

namespace props {

using namespace meshpatt;

// Containment bitsets over all permutations of size 0..6, concatenated.
class ContainCache {
 public:
  const std::vector<bool>& get(const MeshPattern& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    std::vector<bool> bits;
    const Fingerprint f = avoidance_fingerprint(p, 6);
    for (int n = 0; n <= 6; ++n)
      for (std::uint64_t r = 0; r < factorial(n); ++r) bits.push_back(!f.by_size[static_cast<std::size_t>(n)].test(r));
    return cache_.emplace(p, std::move(bits)).first->second;
  }

 private:
  std::map<MeshPattern, std::vector<bool>> cache_;
};

inline std::vector<MeshPattern> patterns_up_to_two() {
  std::vector<MeshPattern> out = oracle::all_patterns(1);
  const auto two = oracle::all_patterns(2);
  out.insert(out.end(), two.begin(), two.end());
  return out;
}


// Every permutation of size <= 6 containing p contains p + sq or every
// member of the star set, for all p of size <= 2.
inline long point_addition_violations(long* checked = nullptr) {
  ContainCache cache;
  long violations = 0, seen = 0;
  for (const auto& p : patterns_up_to_two()) {
    const auto& cp = cache.get(p);
    for (int b = 0; b < p.num_squares(); ++b) {
      const Square sq = p.square(b);
      if (p.is_shaded(sq)) continue;
      const auto& shaded = cache.get(p.with_shaded(sq));
      std::vector<const std::vector<bool>*> star;
      for (const auto& m : star_set(p, sq)) star.push_back(&cache.get(m));
      for (std::size_t i = 0; i < cp.size(); ++i) {
        if (!cp[i]) continue;
        ++seen;
        const bool all = std::all_of(star.begin(), star.end(), [&](const std::vector<bool>* s) { return (*s)[i]; });
        if (!shaded[i] && !all) ++violations;
      }
    }
  }
  if (checked) *checked = seen;
  return violations;
}

// Shading Lemma success without a non-trivial occurrence, size-2 patterns.
inline long dominance_violations() {
  long v = 0;
  for (const auto& p : oracle::all_patterns(2))
    for (int b = 0; b < p.num_squares(); ++b) {
      const Square sq = p.square(b);
      if (p.is_shaded(sq)) continue;
      if (shading_lemma_square(p, sq).success && !lemma_tsa1(p, sq).success) ++v;
    }
  return v;
}

inline long symmetry_violations(int patterns = 25) {
  std::mt19937_64 rng(61);
  long v = 0;
  for (int t = 0; t < patterns; ++t) {
    const MeshPattern p = oracle::random_pattern(rng, 1 + static_cast<int>(rng() % 3));
    for (Symmetry s : all_symmetries()) {
      const MeshPattern sp = apply_symmetry(p, s);
      for (int n = 0; n <= 6; ++n)
        for_each_permutation(n, [&](std::span<const int> w) {
          const Permutation pi(std::vector<int>(w.begin(), w.end()));
          if (count_occurrences(pi, p) != count_occurrences(apply_symmetry(pi, s), sp)) ++v;
          return true;
        });
    }
  }
  return v;
}

// Text round trip plus the bit rule: bit i is square (i / (k+1), i mod (k+1)).
inline long encoding_violations(int samples = 10000) {
  std::mt19937_64 rng(67);
  long v = 0;
  for (int t = 0; t < samples; ++t) {
    const MeshPattern p = oracle::random_pattern(rng, static_cast<int>(rng() % 12));
    const std::string text = format_pattern(p);
    if (parse_pattern(text) != p) ++v;
    const Shading s = parse_mesh_int(text.substr(text.find(':') + 1));
    for (int i = 0; i < p.num_squares(); ++i)
      if (s.test(i) != p.is_shaded({i / p.grid(), i % p.grid()})) ++v;
  }
  return v;
}

}  // namespace props
