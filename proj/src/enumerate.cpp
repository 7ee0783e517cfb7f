#include "meshpatt/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "meshpatt/fingerprint.hpp"
#include "meshpatt/occurrence.hpp"

namespace meshpatt {

namespace {

bool contains_classical(std::span<const int> host, std::span<const int> patt) {
  bool found = false;
  visit_classical_occurrences(host, patt, [&](std::span<const int>) {
    found = true;
    return false;
  });
  return found;
}

MeshPattern size_one(std::vector<Square> squares) { return MeshPattern(Permutation({1}), squares); }

}  // namespace

Basis::Basis(std::vector<Permutation> patterns) : patterns_(std::move(patterns)) {
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
  for (const auto& a : patterns_) {
    if (a.empty()) throw std::invalid_argument("basis contains the empty pattern");
    for (const auto& b : patterns_)
      if (a != b && contains_classical(a.word(), b.word())) {
        throw std::invalid_argument("basis is not minimal: " + a.to_string() + " contains " + b.to_string());
      }
  }
}

bool Basis::admits(std::span<const int> perm) const {
  return std::none_of(patterns_.begin(), patterns_.end(),
                      [&](const Permutation& b) { return contains_classical(perm, b.word()); });
}

int occ_count(const ForcedPattern& fp, const Permutation& host) {
  return static_cast<int>(strongest_occurrences(host, fp).size());
}

int occ_count(const MeshPattern& p, const Permutation& host) { return count_occurrences(host, p); }

namespace {

// Number of hosts of size <= bound in the class with at least two
// occurrences; stops at the first when `first` is set.
std::uint64_t offending_hosts(const ForcedPattern& fp, const std::optional<Basis>& basis, int bound,
                              std::optional<Permutation>* first) {
  std::uint64_t count = 0;
  for (int n = fp.pattern.size(); n <= bound; ++n) {
    for_each_permutation(n, [&](std::span<const int> w) {
      if (basis && !basis->admits(w)) return true;
      Permutation host(std::vector<int>(w.begin(), w.end()));
      if (occ_count(fp, host) > 1) {
        ++count;
        if (first) {
          *first = std::move(host);
          return false;
        }
      }
      return true;
    });
    if (first && *first) break;
  }
  return count;
}

}  // namespace

BinaryVerdict is_binary(const ForcedPattern& fp, const std::optional<Basis>& basis, int bound) {
  validate_force(fp.force, fp.pattern.size());
  BinaryVerdict v;
  v.bound = bound < 0 ? 2 * fp.pattern.size() : bound;
  std::optional<Permutation> witness;
  offending_hosts(fp, basis, v.bound, &witness);
  v.binary = !witness;
  v.witness = std::move(witness);
  return v;
}

BinaryVerdict is_binary(const MeshPattern& p, const std::optional<Basis>& basis, int bound) {
  return is_binary(ForcedPattern{p, {}}, basis, bound);
}

Permutation max_duplication_witness(const Permutation& p, int i) {
  if (p.empty()) throw std::invalid_argument("the empty pattern occurs exactly once everywhere");
  if (i < 1) throw std::invalid_argument("i must be at least 1");
  std::vector<int> w(p.word().begin(), p.word().end());
  for (int step = 1; step < i; ++step) {
    const int m = static_cast<int>(w.size());
    auto it = std::find(w.begin(), w.end(), m);
    w.insert(it, m + 1);
  }
  return Permutation(std::move(w));
}

AnchorReport is_anchored(const MeshPattern& p) {
  const int k = p.size();
  AnchorReport r;
  r.parent.assign(static_cast<std::size_t>(k) + 1, -1);
  r.parent[0] = 0;
  if (k == 0) {
    r.anchored = true;
    return r;
  }
  static const MeshPattern boundary[] = {
      size_one({{0, 1}, {1, 1}}),  // top
      size_one({{0, 0}, {1, 0}}),  // bottom
      size_one({{0, 0}, {0, 1}}),  // left
      size_one({{1, 0}, {1, 1}}),  // right
  };
  const std::vector<Square> column = {{1, 0}, {1, 1}, {1, 2}};
  const std::vector<Square> row = {{0, 1}, {1, 1}, {2, 1}};

  std::deque<int> queue;
  for (int i = 1; i <= k; ++i) {
    const Shading t = maximal_shading(p, Occurrence{{i}});
    if (std::any_of(std::begin(boundary), std::end(boundary),
                    [&](const MeshPattern& b) { return b.shading().is_subset_of(t); })) {
      r.parent[static_cast<std::size_t>(i)] = 0;
      queue.push_back(i);
    }
  }
  auto anchored_pair = [&](int a, int b) {
    const Occurrence occ{{std::min(a, b), std::max(a, b)}};
    const Shading t = maximal_shading(p, occ);
    return make_shading(3, column).is_subset_of(t) || make_shading(3, row).is_subset_of(t);
  };
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    r.chain_values.push_back(p.pattern()(v));
    for (int u = 1; u <= k; ++u) {
      if (r.parent[static_cast<std::size_t>(u)] != -1 || u == v) continue;
      if (anchored_pair(u, v)) {
        r.parent[static_cast<std::size_t>(u)] = v;
        queue.push_back(u);
      }
    }
  }
  r.anchored = static_cast<int>(r.chain_values.size()) == k;
  return r;
}

Force find_binary_force(const MeshPattern& p, const std::optional<Basis>& basis) {
  const int k = p.size();
  const int bound = 2 * k;
  Force f;
  while (!is_binary(ForcedPattern{p, f}, basis, bound).binary) {
    std::optional<ForceEntry> best;
    std::uint64_t best_count = std::numeric_limits<std::uint64_t>::max();
    for (int pt = 1; pt <= k; ++pt) {
      if (std::any_of(f.begin(), f.end(), [&](const ForceEntry& e) { return e.point == pt; })) continue;
      for (Direction d : kDirections) {
        Force g = f;
        g.push_back({pt, d});
        const std::uint64_t c = offending_hosts(ForcedPattern{p, g}, basis, bound, nullptr);
        if (c < best_count) {
          best_count = c;
          best = ForceEntry{pt, d};
        }
        if (c == 0) break;
      }
      if (best_count == 0) break;
    }
    if (!best) throw std::logic_error("a full force must be binary");
    f.push_back(*best);
  }
  return f;
}

SequencePrefix count_av(const std::vector<MeshPattern>& basis, int maxn) {
  if (maxn < 0) throw std::invalid_argument("maxn must be non-negative");
  SequencePrefix out;
  for (int n = 0; n <= maxn; ++n) {
    const std::uint64_t total = factorial(n);
    const auto blocks = static_cast<std::int64_t>((total + 63) / 64);
    std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::uint64_t lo = static_cast<std::uint64_t>(b) * 64;
      const std::uint64_t hi = std::min<std::uint64_t>(lo + 64, total);
      std::vector<int> w = lex_unrank(n, lo);
      for (std::uint64_t r = lo; r < hi; ++r) {
        const Permutation perm(w);
        if (std::none_of(basis.begin(), basis.end(), [&](const MeshPattern& m) { return contains(perm, m); })) ++count;
        std::next_permutation(w.begin(), w.end());
      }
    }
    out.push_back(count);
  }
  return out;
}

SequencePrefix count_av(const Basis& basis, int maxn) {
  std::vector<MeshPattern> mesh;
  for (const auto& b : basis.patterns()) mesh.emplace_back(b);
  return count_av(mesh, maxn);
}

SequencePrefix count_av_serial(const std::vector<MeshPattern>& basis, int maxn) {
  if (maxn < 0) throw std::invalid_argument("maxn must be non-negative");
  SequencePrefix out;
  for (int n = 0; n <= maxn; ++n) {
    std::uint64_t count = 0;
    for_each_permutation(n, [&](std::span<const int> w) {
      const Permutation perm(std::vector<int>(w.begin(), w.end()));
      if (std::none_of(basis.begin(), basis.end(), [&](const MeshPattern& m) { return contains(perm, m); })) ++count;
      return true;
    });
    out.push_back(count);
  }
  return out;
}

SequencePrefix catalan_prefix(int maxn) {
  if (maxn < 0) throw std::invalid_argument("maxn must be non-negative");
  SequencePrefix c(static_cast<std::size_t>(maxn) + 1, 0);
  c[0] = 1;
  for (std::size_t n = 1; n < c.size(); ++n)
    for (std::size_t i = 0; i < n; ++i) c[n] += c[i] * c[n - 1 - i];
  return c;
}

bool class_coincidence(const MeshPattern& p, const MeshPattern& q, const Basis& basis, int maxn) {
  if (p.pattern() == q.pattern() && p.shading() == q.shading()) return true;
  for (int n = 0; n <= maxn; ++n) {
    bool agree = true;
    for_each_permutation(n, [&](std::span<const int> w) {
      if (!basis.admits(w)) return true;
      const Permutation perm(std::vector<int>(w.begin(), w.end()));
      agree = contains(perm, p) == contains(perm, q);
      return agree;
    });
    if (!agree) return false;
  }
  return true;
}

MeshPattern AnchoredStream::next() {
  if (started_ && !std::next_permutation(word_.begin(), word_.end())) {
    ++n_;
    word_.resize(static_cast<std::size_t>(n_));
    std::iota(word_.begin(), word_.end(), 1);
  }
  started_ = true;
  std::vector<Square> shaded;
  for (int c = 1; c <= n_; ++c)
    for (int r = 0; r <= n_; ++r) shaded.push_back({c, r});
  return MeshPattern(Permutation(word_), shaded);
}

}  // namespace meshpatt
