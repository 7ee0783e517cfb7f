#include <random>
#include <set>

#include "doctest.h"
#include "meshpatt/enumerate.hpp"
#include "meshpatt/fingerprint.hpp"
#include "meshpatt/text_format.hpp"
#include "oracle.hpp"

using namespace meshpatt;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }
MeshPattern M(const char* w, std::vector<Square> sq) { return MeshPattern(parse_permutation(w), sq); }

const char* kB = "1234,1243,1324,1342,1423,2314,2341,3124,4123";
const char* kBp = "1324,1342,1423,2143,2413,3142";

}  // namespace

TEST_SUITE("enumerate") {

TEST_CASE("basis") {
  CHECK_NOTHROW(Basis(parse_permutation_list(kB)));
  CHECK_THROWS_AS(Basis({P("12"), P("123")}), std::invalid_argument);
  CHECK_THROWS_AS(Basis({Permutation()}), std::invalid_argument);
  const Basis b({P("21")});
  CHECK(b.admits(P("123").word()));
  CHECK_FALSE(b.admits(P("132").word()));
}

TEST_CASE("occurrence counts") {
  const MeshPattern leftmost = M("1", {{0, 0}, {0, 1}});
  for (int n = 1; n <= 5; ++n)
    for (const auto& host : all_permutations(n)) REQUIRE(occ_count(leftmost, host) == 1);
  CHECK(occ_count(M("21", {}), P("2413")) == 3);

  const ForcedPattern fp{M("132", {}), parse_force("2:U,1:D,3:D")};
  for (int n = 3; n <= 6; ++n)
    for (const auto& host : all_permutations(n))
      if (contains(host, fp.pattern)) REQUIRE(occ_count(fp, host) == 1);
}

TEST_CASE("binary patterns") {
  const MeshPattern boxed132 = M("132", {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 0}, {3, 2}, {3, 3}});
  CHECK(is_binary(boxed132).binary);
  CHECK(is_binary(M("12", {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}})).binary);
  CHECK(is_binary(ForcedPattern{M("132", {}), parse_force("2:U,1:D,3:D")}).binary);

  for (int k = 1; k <= 3; ++k)
    for (const auto& p : all_permutations(k)) {
      const BinaryVerdict v = is_binary(MeshPattern(p));
      CHECK_FALSE(v.binary);
      REQUIRE(v.witness);
      CHECK(occ_count(MeshPattern(p), *v.witness) > 1);
      const Permutation w = max_duplication_witness(p, 2);
      CHECK(w.size() == k + 1);
      CHECK(occ_count(MeshPattern(p), w) >= 2);
    }
}

TEST_CASE("max duplication witness") {
  const Permutation w = max_duplication_witness(P("21"), 2);
  CHECK(w.size() == 3);
  CHECK(occ_count(M("21", {}), w) >= 2);
  CHECK(occ_count(M("1", {}), max_duplication_witness(P("1"), 3)) == 3);
  CHECK_THROWS_AS(max_duplication_witness(Permutation(), 2), std::invalid_argument);

  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    const int k = 1 + static_cast<int>(rng() % 4);
    const Permutation p(lex_unrank(k, rng() % factorial(k)));
    const int i = 1 + static_cast<int>(rng() % 4);
    REQUIRE(occ_count(MeshPattern(p), max_duplication_witness(p, i)) >= i);
  }
}

TEST_CASE("anchored patterns") {
  const MeshPattern chained(P("24315"), std::vector<Square>{{0, 1}, {0, 2}, {0, 5}, {1, 1}, {1, 2}, {1, 5}, {2, 0}, {2, 1},
                                                          {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 1}, {3, 2}, {3, 5}, {4, 0},
                                                          {4, 1}, {4, 2}, {4, 3}, {4, 4}, {4, 5}, {5, 1}, {5, 2}, {5, 5}});
  const AnchorReport a = is_anchored(chained);
  CHECK(a.anchored);
  CHECK(a.chain_values == std::vector<int>{5, 1, 2, 3, 4});

  const MeshPattern boxed132 = M("132", {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 0}, {3, 2}, {3, 3}});
  CHECK_FALSE(is_anchored(boxed132).anchored);
  CHECK(is_anchored(M("1", {{0, 0}, {0, 1}})).anchored);
  CHECK_FALSE(is_anchored(M("12", {})).anchored);
}

TEST_CASE("anchored stream") {
  AnchoredStream s;
  std::set<MeshPattern> seen;
  for (int i = 0; i < 40; ++i) {
    const MeshPattern m = s.next();
    CHECK(seen.insert(m).second);
    CHECK(is_anchored(m).anchored);
    if (m.size() <= 3) CHECK(is_binary(m).binary);
  }
}

TEST_CASE("greedy binary force") {
  const Basis bp(parse_permutation_list(kBp));
  const Force f = find_binary_force(M("132", {}), bp);
  CHECK(f.size() <= 3);
  CHECK(is_binary(ForcedPattern{M("132", {}), f}, bp).binary);

  CHECK(find_binary_force(M("1", {{0, 0}, {0, 1}})).empty());

  const Force g = find_binary_force(M("12", {}));
  CHECK_FALSE(g.empty());
  CHECK(g.size() <= 2);
  CHECK(is_binary(ForcedPattern{M("12", {}), g}, std::nullopt, 4).binary);
}

TEST_CASE("counting") {
  const Basis b(parse_permutation_list(kB));
  CHECK(count_av(b, 8) == SequencePrefix{1, 1, 2, 6, 15, 43, 133, 430, 1431});
  const SequencePrefix cat = catalan_prefix(8);
  const SequencePrefix got = count_av(b, 8);
  for (int n = 0; n <= 8; ++n) CHECK(got[n] == cat[n] + (n >= 3 ? 1 : 0));

  CHECK(count_av(Basis(parse_permutation_list(kBp)), 8) == SequencePrefix{1, 1, 2, 6, 18, 54, 167, 534, 1755});
  CHECK(count_av(Basis({P("1")}), 4) == SequencePrefix{1, 0, 0, 0, 0});
  CHECK(count_av(Basis({P("123")}), 7) == catalan_prefix(7));
  CHECK(catalan_prefix(6).back() == 132);
  CHECK(catalan_prefix(0) == SequencePrefix{1});

  std::mt19937_64 rng(59);
  for (int t = 0; t < 10; ++t) {
    const std::vector<MeshPattern> mesh = {oracle::random_pattern(rng, 2), oracle::random_pattern(rng, 3)};
    REQUIRE(count_av(mesh, 7) == count_av_serial(mesh, 7));
  }
}

TEST_CASE("recurrence of the second class") {
  const SequencePrefix f = count_av(Basis(parse_permutation_list(kBp)), 8);
  const SequencePrefix c = catalan_prefix(8);
  for (int n = 0; n <= 8; ++n) {
    std::uint64_t expect = c[n];
    for (int a = 0; a <= n - 3; ++a)
      for (int b = 0; a + b <= n - 3; ++b) expect += c[a] * f[b] * static_cast<std::uint64_t>(n - 3 - a - b + 1);
    CHECK(f[n] == expect);
  }
}

TEST_CASE("coincidence inside a class") {
  const Basis none;
  CHECK(class_coincidence(M("123", {}), M("123", {{0, 1}}), none, 7));
  const MeshPattern big = M("123", {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 0},
                                    {2, 1}, {2, 2}, {2, 3}, {3, 0}, {3, 1}, {3, 2}, {3, 3}});
  CHECK(class_coincidence(M("123", {}), big, Basis(parse_permutation_list(kB)), 7));
  CHECK_FALSE(class_coincidence(M("123", {}), big, none, 7));
  CHECK(class_coincidence(big, big, none, 3));
}

}  // TEST_SUITE
