#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "meshpatt/fingerprint.hpp"
#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/permutation.hpp"
#include "meshpatt/prover.hpp"

namespace meshpatt {

// Patterns over one underlying permutation that no permutation of size <= maxn
// tells apart. Members are sorted by shading integer.
struct ExperimentalClass {
  std::vector<MeshPattern> members;

  int size() const { return static_cast<int>(members.size()); }
  const MeshPattern& representative() const { return members.front(); }
};

// One refinement event: the classes of `a` and `b` were equal up to this
// point and `perm` contains exactly one of them.
struct SplitWitness {
  MeshPattern a;
  MeshPattern b;
  Permutation perm;
};

struct ExperimentalClassification {
  Permutation underlying;
  int maxn = 0;
  std::vector<ExperimentalClass> classes;  // by smallest member integer
  std::vector<SplitWitness> witnesses;
};

// Largest underlying size the classifier accepts (2^16 shadings).
inline constexpr int kMaxClassifySize = 3;

// Partitions all 2^((k+1)^2) shadings of `underlying` by avoidance up to
// maxn. Per-permutation containment sets are built in parallel and refine the
// partition in permutation order. Throws std::invalid_argument for maxn < 1,
// an empty underlying pattern or one longer than kMaxClassifySize.
ExperimentalClassification experimental_classify(const Permutation& underlying, int maxn);

// Reference: groups patterns by avoidance_fingerprint_serial. No witnesses.
ExperimentalClassification experimental_classify_serial(const Permutation& underlying, int maxn);

Fingerprint class_fingerprint(const ExperimentalClass& c, int maxn);

// Smallest permutation (by size, then lexicographically) of size <= maxn
// containing exactly one of a, b.
std::optional<Permutation> distinguishing_permutation(const MeshPattern& a, const MeshPattern& b, int maxn);

// --- Implication graph ----------------------------------------------------

enum class EdgeOrigin { Subset, ShadingLemma, Tsa1, SimultaneousShading, Tsa2, Tsa3, ShadingAlgorithm };

std::string origin_name(EdgeOrigin o);

struct ImplicationEdge {
  int from = 0;  // containing nodes[from] implies containing nodes[to]
  int to = 0;
  EdgeOrigin origin = EdgeOrigin::Subset;
};

class CoincidenceGraph {
 public:
  CoincidenceGraph() = default;
  explicit CoincidenceGraph(std::vector<MeshPattern> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<MeshPattern>& nodes() const { return nodes_; }
  const std::vector<ImplicationEdge>& edges() const { return edges_; }
  std::optional<int> index_of(const MeshPattern& p) const;

  // Ignores self-edges and duplicates; returns true if the edge is new.
  bool add_edge(int from, int to, EdgeOrigin origin);
  bool has_edge(int from, int to) const;

  bool reaches(int from, int to) const;
  // Nodes from which `to` is reachable, as a membership vector.
  std::vector<bool> reaching(int to) const;

  // Strongly connected component id per node; ids in reverse topological
  // order of discovery.
  std::vector<int> components() const;
  int num_components() const;
  bool resolved() const { return num_components() <= 1; }

 private:
  std::vector<MeshPattern> nodes_;
  std::vector<std::vector<int>> out_;
  std::vector<ImplicationEdge> edges_;
};

// Edge more-shaded -> less-shaded for every comparable pair.
void add_subset_edges(CoincidenceGraph& g);

// --- Pipeline -------------------------------------------------------------

struct PipelineOptions {
  // Lemma stages in order; the Shading Algorithm runs afterwards once per depth.
  std::vector<Method> methods = {Method::ShadingLemma, Method::Tsa1, Method::SimultaneousShading, Method::Tsa2,
                                 Method::Tsa3};
  std::vector<int> depths = {1, 2};
  int max_force_size = -1;  // -1: the underlying size
  bool use_known = true;    // let tsa3/SA consult edges proven so far
};

struct StageCount {
  std::string stage;
  int unresolved = 0;
  int resolved = 0;
};

struct ClassificationReport {
  Permutation underlying;
  int maxn = 0;
  int num_patterns = 0;
  std::vector<StageCount> stages;  // "experimental" first
  int num_classes = 0;
  int unresolved = 0;
  // Classes of size 1..7 and >= 8.
  std::array<int, 8> histogram{};
  std::array<int, 7> edges_by_origin{};
};

struct PipelineResult {
  ExperimentalClassification classification;
  std::vector<CoincidenceGraph> graphs;  // one per class
  ClassificationReport report;
};

// Runs the stages on every class that is still unresolved and records the
// unresolved count after each. Classes are processed in parallel.
PipelineResult run_pipeline(ExperimentalClassification classification, const PipelineOptions& opts = {});
PipelineResult run_pipeline(const Permutation& underlying, int maxn, const PipelineOptions& opts = {});

// Applies one lemma stage or (method = ShadingAlgorithm) one SA depth to a
// single graph. Returns the number of new edges.
int apply_stage(CoincidenceGraph& g, Method method, int depth, int max_force_size, bool use_known);

// Tab-separated stage table, histogram and totals.
void write_report(std::ostream& os, const ClassificationReport& r);

// --- Persistence ------------------------------------------------------------

// One line per class of whitespace-separated shading integers.
void save_results(std::ostream& os, const std::vector<std::vector<MeshPattern>>& classes);
// Throws std::invalid_argument on a malformed integer or a bit outside the
// grid of `underlying`.
std::vector<std::vector<MeshPattern>> load_results(std::istream& is, const Permutation& underlying);

// "<a>\t<b>\t<perm>" per line, patterns in text form.
void save_witnesses(std::ostream& os, const std::vector<SplitWitness>& w);

}  // namespace meshpatt
