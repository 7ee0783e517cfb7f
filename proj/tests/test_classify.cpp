#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "meshpatt/classify.hpp"
#include "meshpatt/text_format.hpp"
#include "oracle.hpp"

using namespace meshpatt;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }
MeshPattern M(const char* w, std::vector<Square> sq) { return MeshPattern(parse_permutation(w), sq); }

std::vector<std::vector<std::uint64_t>> shape(const ExperimentalClassification& c) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& cls : c.classes) {
    out.emplace_back();
    for (const auto& m : cls.members) out.back().push_back(m.shading().word(0));
  }
  return out;
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("experimental classification of the point") {
  const auto c = experimental_classify(P("1"), 3);
  CHECK(c.classes.size() == 8);
  int big = 0;
  for (const auto& cls : c.classes) big += cls.size() > 1;
  CHECK(big == 1);
  CHECK(shape(c) == shape(experimental_classify_serial(P("1"), 3)));
}

TEST_CASE("experimental classification of 12") {
  const auto c = experimental_classify(P("12"), 5);
  CHECK(c.classes.size() == 220);
  int big = 0;
  for (const auto& cls : c.classes) big += cls.size() > 1;
  CHECK(big == 59);
  CHECK(shape(c) == shape(experimental_classify_serial(P("12"), 5)));

  // Class order by smallest member; members sorted.
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const auto& m = c.classes[i].members;
    CHECK(std::is_sorted(m.begin(), m.end(), [](const MeshPattern& a, const MeshPattern& b) {
      return a.shading() < b.shading();
    }));
    if (i) CHECK(c.classes[i - 1].representative().shading() < m.front().shading());
  }

  // Fully shaded pattern stands alone.
  for (const auto& cls : c.classes)
    for (const auto& m : cls.members)
      if (m.fully_shaded()) CHECK(cls.size() == 1);

  // Members share fingerprints; representatives of distinct classes are split
  // by some permutation of size <= 5.
  for (const auto& cls : c.classes) {
    const Fingerprint f = class_fingerprint(cls, 5);
    for (const auto& m : cls.members) REQUIRE(avoidance_fingerprint(m, 5) == f);
  }
  for (std::size_t i = 0; i + 1 < c.classes.size(); i += 7)
    CHECK(distinguishing_permutation(c.classes[i].representative(), c.classes[i + 1].representative(), 5));

  // Each witness really separates its pair.
  for (const auto& w : c.witnesses) REQUIRE(contains(w.perm, w.a) != contains(w.perm, w.b));
}

TEST_CASE("parallel and serial classification agree on 132") {
  const auto a = experimental_classify(P("132"), 4);
  const auto b = experimental_classify_serial(P("132"), 4);
  CHECK(shape(a) == shape(b));
}

TEST_CASE("classification arguments") {
  CHECK_THROWS_AS(experimental_classify(P("1"), 0), std::invalid_argument);
  CHECK_THROWS_AS(experimental_classify(Permutation(), 3), std::invalid_argument);
  CHECK_THROWS_AS(experimental_classify(P("1234"), 3), std::invalid_argument);
}

TEST_CASE("coincidence graph") {
  CoincidenceGraph g({M("21", {}), M("21", {{1, 0}, {1, 1}, {1, 2}})});
  add_subset_edges(g);
  CHECK(g.edges().size() == 1);
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.resolved());
  CHECK_FALSE(g.add_edge(0, 0, EdgeOrigin::Tsa1));
  CHECK_FALSE(g.add_edge(1, 0, EdgeOrigin::Tsa1));
  CHECK(g.add_edge(0, 1, EdgeOrigin::Tsa1));
  CHECK(g.resolved());
  CHECK(g.num_components() == 1);

  // Random graphs: components agree with mutual reachability.
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<MeshPattern> nodes;
    for (int i = 0; i < n; ++i) nodes.emplace_back(P("1"), Shading::from_u64(static_cast<std::uint64_t>(i)));
    CoincidenceGraph h(nodes);
    for (int e = 0; e < n * 2; ++e)
      h.add_edge(static_cast<int>(rng() % n), static_cast<int>(rng() % n), EdgeOrigin::Subset);
    const auto comp = h.components();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        REQUIRE((comp[a] == comp[b]) == (h.reaches(a, b) && h.reaches(b, a)));
    const auto into = h.reaching(0);
    for (int a = 0; a < n; ++a) REQUIRE(into[a] == h.reaches(a, 0));
  }
}

TEST_CASE("pipeline on the point") {
  const PipelineResult r = run_pipeline(P("1"), 3);
  REQUIRE(r.report.stages.size() >= 2);
  CHECK(r.report.stages[0].stage == "experimental");
  CHECK(r.report.stages[0].unresolved == 1);
  CHECK(r.report.stages[0].resolved == 7);
  CHECK(r.report.stages[1].stage == "sl");
  CHECK(r.report.stages[1].unresolved == 0);
  CHECK(r.report.stages[1].resolved == 8);
  CHECK(r.report.unresolved == 0);
}

TEST_CASE("pipeline on 12") {
  const PipelineResult r = run_pipeline(P("12"), 5);
  std::map<std::string, int> after;
  int prev = 1 << 30;
  for (const auto& s : r.report.stages) {
    after[s.stage] = s.unresolved;
    CHECK(s.unresolved + s.resolved == 220);
    CHECK(s.unresolved <= prev);
    prev = s.unresolved;
  }
  CHECK(after["experimental"] == 59);
  CHECK(after["sl"] == 2);
  CHECK(after["ssl"] == 1);
  CHECK(after["sa-d2"] == 0);
  CHECK(r.report.num_classes == 220);
  CHECK(r.report.histogram == std::array<int, 8>{161, 37, 2, 11, 0, 0, 0, 9});

  std::ostringstream os;
  write_report(os, r.report);
  CHECK(os.str().find("classes\t220") != std::string::npos);
}

TEST_CASE("persistence") {
  std::ostringstream os;
  save_results(os, {{M("21", {{1, 0}, {1, 1}, {1, 2}})}});
  CHECK(os.str() == "56\n");
  std::ostringstream os1;
  save_results(os1, {{MeshPattern(P("1"), Shading::full(2))}});
  CHECK(os1.str() == "15\n");

  std::istringstream bad("16\n");
  CHECK_THROWS_AS(load_results(bad, P("1")), std::invalid_argument);
  std::istringstream junk("3 x\n");
  CHECK_THROWS_AS(load_results(junk, P("1")), std::invalid_argument);

  std::mt19937_64 rng(47);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::vector<MeshPattern>> classes(1 + rng() % 5);
    for (auto& c : classes)
      for (std::uint64_t i = 0, n = 1 + rng() % 4; i < n; ++i)
        c.emplace_back(P("132"), Shading::from_u64(rng() & 0xffff));
    std::stringstream ss;
    save_results(ss, classes);
    REQUIRE(load_results(ss, P("132")) == classes);
  }
}

}  // TEST_SUITE
