#include <random>

#include "doctest.h"
#include "meshpatt/enumerate.hpp"
#include "meshpatt/fingerprint.hpp"
#include "meshpatt/insertion.hpp"
#include "meshpatt/prover.hpp"
#include "meshpatt/symmetry.hpp"
#include "meshpatt/text_format.hpp"
#include "oracle.hpp"
#include "properties.hpp"

using namespace meshpatt;
using props::patterns_up_to_two;

TEST_SUITE("properties") {

TEST_CASE("point addition: p + square or the whole star set") {
  long checked = 0;
  CHECK(props::point_addition_violations(&checked) == 0);
  CHECK(checked > 0);
}

TEST_CASE("shading lemma success implies the non-trivial occurrence lemma") {
  CHECK(props::dominance_violations() == 0);
}

TEST_CASE("simultaneous shading is covered by the force lemma") {
  int checked = 0;
  for (const auto& p : oracle::all_patterns(2)) {
    const auto u1 = shadeable_units(p, 1);
    const auto u2 = shadeable_units(p, 2);
    for (int i = -1; i < static_cast<int>(u1.size()); ++i)
      for (int j = -1; j < static_cast<int>(u2.size()); ++j) {
        std::vector<Pick> picks;
        std::vector<const ShadeableUnit*> units;
        if (i >= 0) {
          picks.push_back({1, u1[static_cast<std::size_t>(i)].squares});
          units.push_back(&u1[static_cast<std::size_t>(i)]);
        }
        if (j >= 0) {
          picks.push_back({2, u2[static_cast<std::size_t>(j)].squares});
          units.push_back(&u2[static_cast<std::size_t>(j)]);
        }
        if (picks.empty()) continue;
        const ProofResult ssl = simultaneous_shading(p, picks);
        REQUIRE(ssl.success);
        ++checked;
        // Force from the pick directions, every choice of side and order.
        bool found = false;
        std::vector<int> order(picks.size());
        for (std::size_t t = 0; t < order.size(); ++t) order[t] = static_cast<int>(t);
        do {
          const auto& a = *units[static_cast<std::size_t>(order[0])];
          for (Direction da : a.dirs) {
            Force f = {{picks[static_cast<std::size_t>(order[0])].point, da}};
            if (order.size() == 1) {
              found = found || prove_tsa2(p, ssl.q, f, 0).success;
              continue;
            }
            const auto& bu = *units[static_cast<std::size_t>(order[1])];
            for (Direction db : bu.dirs) {
              Force g = f;
              g.push_back({picks[static_cast<std::size_t>(order[1])].point, db});
              found = found || prove_tsa2(p, ssl.q, g, 0).success;
            }
          }
        } while (!found && std::next_permutation(order.begin(), order.end()));
        REQUIRE_MESSAGE(found, format_pattern(p) << " -> " << format_pattern(ssl.q));
      }
  }
  CHECK(checked > 100);
}

TEST_CASE("symmetry coherence of occurrence counts") {
  CHECK(props::symmetry_violations() == 0);
}

TEST_CASE("text encoding round trip") {
  CHECK(props::encoding_violations() == 0);
}

TEST_CASE("anchored patterns occur at most once") {
  std::vector<MeshPattern> corpus = patterns_up_to_two();
  std::mt19937_64 rng(71);
  for (int t = 0; t < 3000; ++t) corpus.push_back(oracle::random_pattern(rng, 3));
  int anchored = 0;
  for (const auto& p : corpus) {
    if (!is_anchored(p).anchored) continue;
    ++anchored;
    for (int n = p.size(); n <= 6; ++n)
      for_each_permutation(n, [&](std::span<const int> w) {
        REQUIRE(count_occurrences(Permutation(std::vector<int>(w.begin(), w.end())), p) <= 1);
        return true;
      });
  }
  CHECK(anchored > 50);
}

TEST_CASE("binary verdicts are stable past twice the size") {
  std::vector<MeshPattern> corpus = oracle::all_patterns(1);
  std::mt19937_64 rng(73);
  for (int t = 0; t < 60; ++t) corpus.push_back(oracle::random_pattern(rng, 2));
  for (int t = 0; t < 4; ++t) corpus.push_back(oracle::random_pattern(rng, 3));
  for (const auto& p : corpus) {
    const int k = p.size();
    REQUIRE(is_binary(p, std::nullopt, 2 * k).binary == is_binary(p, std::nullopt, 2 * k + 2).binary);
  }
}

}  // TEST_SUITE
