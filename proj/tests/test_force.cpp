#include <random>

#include "doctest.h"
#include "meshpatt/fingerprint.hpp"
#include "meshpatt/force.hpp"
#include "meshpatt/occurrence.hpp"
#include "meshpatt/text_format.hpp"
#include "oracle.hpp"

using namespace meshpatt;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }
MeshPattern M(const char* w, std::vector<Square> sq) { return MeshPattern(parse_permutation(w), sq); }

std::vector<MeshPattern> corpus() {
  std::vector<MeshPattern> out;
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) out.push_back(oracle::random_pattern(rng, 1 + static_cast<int>(rng() % 3)));
  for (const char* w : {"1", "12", "21", "123", "132", "231"}) out.push_back(M(w, {}));
  return out;
}

}  // namespace

TEST_SUITE("force") {

TEST_CASE("force text and validation") {
  const Force f = parse_force("2:U,3:D");
  REQUIRE(f.size() == 2);
  CHECK(f[0] == ForceEntry{2, Direction::Up});
  CHECK(f[1] == ForceEntry{3, Direction::Down});
  CHECK(format_force(f) == "2:U,3:D");
  CHECK_THROWS_AS(validate_force(parse_force("1:U,1:D"), 3), std::invalid_argument);
  CHECK_THROWS_AS(validate_force(parse_force("4:U"), 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_force("1:X"), std::invalid_argument);
}

TEST_CASE("strength") {
  const Permutation host = P("2147563");
  // The example names forced points by value: value 2 up, value 3 down. In
  // 1342 those are ordinals 4 and 2.
  const Force f = parse_force("4:U,2:D");
  // 2463 at positions 1,3,6,7 and 1563 at 2,5,6,7.
  CHECK(strength(host, Occurrence{{1, 3, 6, 7}}, f).components == std::vector<int>{3, -4});
  CHECK(strength(host, Occurrence{{2, 5, 6, 7}}, f).components == std::vector<int>{3, -5});
  CHECK(strength(host, Occurrence{{2, 5, 6, 7}}, f) < strength(host, Occurrence{{1, 3, 6, 7}}, f));
  CHECK(strength(host, Occurrence{{1, 3, 6, 7}}, {}).components.empty());

  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    const Permutation h(lex_unrank(7, rng() % 5040));
    const auto occs = classical_occurrences(h, P("132"));
    if (occs.empty()) continue;
    const Occurrence& o = occs[rng() % occs.size()];
    const Force g = enumerate_forces(3, 3)[rng() % enumerate_forces(3, 3).size()];
    REQUIRE(strength(h, o, g).components == oracle::strength(h.word(), o, g));
  }
}

TEST_CASE("strongest occurrences") {
  const ForcedPattern fp{M("1342", {}), parse_force("4:U,2:D")};
  const auto best = strongest_occurrences(P("2147563"), fp);
  CHECK(std::find(best.begin(), best.end(), Occurrence{{1, 3, 6, 7}}) != best.end());
  CHECK(std::find(best.begin(), best.end(), Occurrence{{2, 5, 6, 7}}) == best.end());
  CHECK(strongest_occurrences(P("4321"), fp).empty());

  // Brute force: maximal strength among the region-oracle occurrences.
  for (const auto& p : corpus())
    for (const auto& f : enumerate_forces(p.size(), 2))
      for (int n = p.size(); n <= 5; ++n)
        for (const auto& host : all_permutations(n)) {
          const auto all = oracle::mesh_occurrences(host, p);
          std::vector<Occurrence> expect;
          std::vector<int> top;
          for (const auto& o : all) {
            const auto s = oracle::strength(host.word(), o, f);
            if (expect.empty() || s > top) {
              expect = {o};
              top = s;
            } else if (s == top) {
              expect.push_back(o);
            }
          }
          REQUIRE(strongest_occurrences(host, {p, f}) == expect);
        }
}

TEST_CASE("forced containment equals containment") {
  for (const auto& p : corpus())
    for (const auto& f : enumerate_forces(p.size(), p.size()))
      for (int n = 0; n <= 6; ++n)
        for (const auto& host : all_permutations(n))
          REQUIRE(strongest_occurrences(host, {p, f}).empty() == !contains(host, p));
}

TEST_CASE("full forces pick one occurrence") {
  for (const auto& p : corpus()) {
    const auto forces = enumerate_forces(p.size(), p.size());
    for (const auto& f : forces) {
      if (static_cast<int>(f.size()) != p.size()) continue;
      for (int n = 0; n <= 6; ++n)
        for (const auto& host : all_permutations(n)) REQUIRE(strongest_occurrences(host, {p, f}).size() <= 1);
    }
  }
}

TEST_CASE("compare with respect to a point") {
  const Permutation host = P("42135");
  const Occurrence u{{1, 3, 5}}, v{{1, 4, 5}};
  const Relation r = compare_wrt_point(host, u, v, 2);
  CHECK(r.below);
  CHECK(r.left_of);
  CHECK_FALSE(r.above);
  CHECK_FALSE(r.right_of);
  for (int pt = 1; pt <= 3; ++pt) CHECK(compare_wrt_point(host, u, u, pt).none());
  CHECK_THROWS_AS(compare_wrt_point(host, u, Occurrence{{1, 2}}, 1), std::invalid_argument);

  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    const Permutation h(lex_unrank(6, rng() % 720));
    const auto occs = classical_occurrences(h, P("21"));
    if (occs.size() < 2) continue;
    const Occurrence& a = occs[rng() % occs.size()];
    const Occurrence& b = occs[rng() % occs.size()];
    const int pt = 1 + static_cast<int>(rng() % 2);
    const Relation ab = compare_wrt_point(h, a, b, pt), ba = compare_wrt_point(h, b, a, pt);
    REQUIRE(ab.above == ba.below);
    REQUIRE(ab.left_of == ba.right_of);
  }
}

TEST_CASE("enumerate forces") {
  const auto f = enumerate_forces(2, 2);
  // 1 + 2*4 + 2*16 (ordered pairs of distinct points)
  CHECK(f.size() == 41);
  CHECK(f[0].empty());
  CHECK(f[1] == Force{{1, Direction::Up}});
  for (const auto& g : f) CHECK_NOTHROW(validate_force(g, 2));
}

TEST_CASE("forced pattern separated from the mesh patterns it resembles") {
  const ForcedPattern leftmost{M("12", {}), parse_force("1:L")};
  for (const MeshPattern& m : {M("12", {{0, 0}, {0, 1}}), M("12", {{0, 0}, {0, 1}, {0, 2}})}) {
    std::optional<Permutation> witness;
    for (int n = 0; n <= 4 && !witness; ++n)
      for (const auto& host : all_permutations(n))
        if (strongest_occurrences(host, leftmost) != mesh_occurrences(host, m)) {
          witness = host;
          break;
        }
    CHECK(witness.has_value());
  }
}

}  // TEST_SUITE
