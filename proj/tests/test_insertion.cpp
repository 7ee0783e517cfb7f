#include <random>

#include "doctest.h"
#include "meshpatt/insertion.hpp"
#include "meshpatt/occurrence.hpp"
#include "meshpatt/text_format.hpp"
#include "oracle.hpp"

using namespace meshpatt;

namespace {

MeshPattern M(const char* w, std::vector<Square> sq) { return MeshPattern(parse_permutation(w), sq); }

}  // namespace

TEST_SUITE("insertion") {

TEST_CASE("insert point") {
  CHECK(insert_point(M("213", {{0, 1}, {1, 2}, {2, 2}, {2, 3}}), {2, 1}) ==
        M("3124", {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 3}, {3, 4}}));
  CHECK(insert_point(M("1", {}), {0, 0}) == M("12", {}));
  CHECK_THROWS_AS(insert_point(M("1", {{0, 0}}), {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(insert_point(M("1", {}), {2, 0}), std::invalid_argument);

  std::mt19937_64 rng(23);
  int done = 0;
  while (done < 50) {
    const MeshPattern p = oracle::random_pattern(rng, static_cast<int>(rng() % 4));
    const Square sq{static_cast<int>(rng() % p.grid()), static_cast<int>(rng() % p.grid())};
    if (p.is_shaded(sq)) continue;
    ++done;
    CHECK(insert_point(p, sq).size() == p.size() + 1);
  }
}

TEST_CASE("directed insertion") {
  const MeshPattern p21 = M("21", {});
  CHECK(insert_directed(p21, {1, 1}, Direction::Up) == M("321", {{1, 2}, {2, 2}}));
  CHECK(insert_directed(p21, {1, 1}, Direction::Down) == M("321", {{1, 1}, {2, 1}}));
  CHECK(insert_directed(p21, {1, 1}, Direction::Left) == M("321", {{1, 1}, {1, 2}}));
  CHECK(insert_directed(p21, {1, 1}, Direction::Right) == M("321", {{2, 1}, {2, 2}}));

  CHECK(insert_directed(M("123", {{0, 1}, {1, 2}}), {0, 0}, Direction::Up) ==
        M("1234", {{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 3}}));
  CHECK(insert_directed(M("132", {{0, 3}, {1, 2}, {1, 3}}), {1, 0}, Direction::Right) ==
        M("2143", {{0, 4}, {1, 3}, {1, 4}, {2, 0}, {2, 1}, {2, 3}, {2, 4}}));
}

TEST_CASE("insertion agrees with the pullback oracle") {
  for (int k = 0; k <= 2; ++k)
    for (const auto& p : oracle::all_patterns(k))
      for (int c = 0; c <= k; ++c)
        for (int r = 0; r <= k; ++r) {
          if (p.is_shaded({c, r})) continue;
          REQUIRE(insert_point(p, {c, r}) == oracle::insert_point(p, {c, r}));
          for (Direction d : kDirections)
            REQUIRE(insert_directed(p, {c, r}, d) == oracle::insert_directed(p, {c, r}, direction_letter(d)));
        }
}

TEST_CASE("star set") {
  const auto star = star_set(M("21", {}), {1, 1});
  CHECK(star.size() == 4);

  std::mt19937_64 rng(29);
  int done = 0;
  while (done < 200) {
    const MeshPattern p = oracle::random_pattern(rng, 1 + static_cast<int>(rng() % 3));
    const Square sq{static_cast<int>(rng() % p.grid()), static_cast<int>(rng() % p.grid())};
    if (p.is_shaded(sq)) continue;
    ++done;
    const auto s = star_set(p, sq);
    REQUIRE(s.size() <= 4);
    const Occurrence triv = trivial_occurrence(p.size(), sq);
    for (const auto& m : s) {
      const auto occs = mesh_in_mesh_occurrences(m, p);
      REQUIRE(std::find(occs.begin(), occs.end(), triv) != occs.end());
      for (const auto& o : occs) {
        if (o == triv) continue;
        // Any other occurrence uses the inserted point.
        REQUIRE(std::find(o.indices.begin(), o.indices.end(), sq.col + 1) != o.indices.end());
      }
    }
  }
}

TEST_CASE("shift occurrence") {
  CHECK(shift_occurrence(Occurrence{{1, 2, 3}}, {1, 0}) == Occurrence{{1, 3, 4}});
  CHECK(trivial_occurrence(3, {2, 1}) == Occurrence{{1, 2, 4}});
}

}  // TEST_SUITE
