#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "meshpatt/force.hpp"
#include "meshpatt/insertion.hpp"
#include "meshpatt/mesh_pattern.hpp"
#include "meshpatt/occurrence.hpp"

namespace meshpatt {

enum class Method { ShadingLemma, SimultaneousShading, Tsa1, Tsa2, Tsa3, ShadingAlgorithm };

std::string method_name(Method m);  // sl, ssl, tsa1, tsa2, tsa3, sa
std::optional<Method> method_from_name(std::string_view name);

// One line of a proof trace.
//  - Shade: a Shading Lemma application (square, point).
//  - Pick: one unit of a simultaneous shading (point, unit squares).
//  - Branch: a directed insertion of `square`; for the force lemmas it carries
//    the inserted pattern and the witness occurrence found in it.
//  - Node: a Shading Algorithm state: working pattern `host`, the tracked
//    occurrence of p, the occurrence `witness` examined and why it succeeded.
struct TraceStep {
  enum class Kind { Shade, Pick, Branch, Node };
  enum class Reason { None, Stronger, Target, Known, Split };

  Kind kind = Kind::Node;
  int level = 0;
  int point = 0;
  std::vector<Square> squares;
  std::optional<Direction> dir;
  std::optional<MeshPattern> host;
  Occurrence tracked;
  Occurrence witness;
  Reason reason = Reason::None;

  bool operator==(const TraceStep&) const = default;
};

struct ProofResult {
  bool success = false;
  Method method = Method::ShadingAlgorithm;
  MeshPattern p;  // premise
  MeshPattern q;  // conclusion: containing p implies containing q
  Force force;
  int depth = 0;
  std::vector<TraceStep> trace;
};

// --- Shading Lemma -------------------------------------------------------

// Conditions of the Shading Lemma for shading `sq`, a corner square of the
// point at ordinal `point`; the other three corners are handled through the
// matching reflection.
bool shading_lemma_from_point(const MeshPattern& p, int point, Square sq);

// Success iff `sq` touches some point from which the lemma applies; certifies
// p and p + sq are coincident. Throws std::invalid_argument if `sq` is shaded.
ProofResult shading_lemma_square(const MeshPattern& p, Square sq);

// A single square or a pair of adjacent squares on one side of a point that
// can be shaded from that point. `dirs` are the sides the unit lies on.
struct ShadeableUnit {
  std::vector<Square> squares;
  std::vector<Direction> dirs;

  bool operator==(const ShadeableUnit&) const = default;
};

std::vector<ShadeableUnit> shadeable_units(const MeshPattern& p, int point);

struct Pick {
  int point = 0;
  std::vector<Square> squares;
};

// Certifies p coincident with p + union of the picked units. Throws
// std::invalid_argument on a unit that is not shadeable from its point or on
// a repeated point.
ProofResult simultaneous_shading(const MeshPattern& p, const std::vector<Pick>& picks);

// Searches pick maps whose union adds exactly q's extra squares.
ProofResult prove_ssl(const MeshPattern& p, const MeshPattern& q);

// --- Force lemmas -------------------------------------------------------

// Success iff some member of star_set(p, sq) holds a non-trivial occurrence of
// p. Throws std::invalid_argument if `sq` is shaded.
ProofResult lemma_tsa1(const MeshPattern& p, Square sq);

// Squares are shaded in the given order; each needs a directed insertion
// holding an occurrence of p stronger than the trivial one w.r.t. `f`.
// Throws std::invalid_argument if a square is already shaded or repeated.
ProofResult lemma_tsa2(const MeshPattern& p, const Force& f, const std::vector<Square>& squares);

// Same lemma with the squares of q - p taken in the first order that works,
// searching forces up to max_force_size when `f` is empty.
ProofResult prove_tsa2(const MeshPattern& p, const MeshPattern& q, std::optional<Force> f, int max_force_size);

// Largest set of squares the lemma shades into p under `f`; the lemma certifies
// p coincident with p plus the result.
Shading tsa2_closure(const MeshPattern& p, const Force& f);

// Optional side knowledge: returns true when containing (tau, T) is already
// known to imply containing q. Must be monotone in T.
using KnownImplication = std::function<bool(const Shading& t)>;

// One-directional form: each square of q - p needs a directed insertion that
// holds a stronger occurrence of p, an occurrence of q, or an occurrence of a
// pattern `known` reports as implying q. Success certifies that containing p
// implies containing q.
ProofResult prove_tsa3(const MeshPattern& p, const MeshPattern& q, std::optional<Force> f, int max_force_size,
                       const KnownImplication& known = {});

// --- Shading Algorithm -----------------------------------------------------

struct ShadingAlgorithmOptions {
  bool with_trace = true;
  KnownImplication known;
};

// Recursive Shading Algorithm: Success certifies that every permutation
// containing p contains q. Throws std::invalid_argument on differing
// underlying patterns or negative depth.
ProofResult shading_algorithm(const MeshPattern& p, const MeshPattern& q, const Force& f, int depth,
                              const ShadingAlgorithmOptions& opts = {});

// Tries every force up to max_force_size (enumerate_forces order) at
// max_depth and returns the first success.
ProofResult search_forces(const MeshPattern& p, const MeshPattern& q, int max_depth, int max_force_size,
                          const ShadingAlgorithmOptions& opts = {});

// --- Traces ----------------------------------------------------------------

struct ReplayReport {
  bool ok = false;
  std::string message;
};

// Re-derives every step of a successful proof from the core, insertion and
// force operations alone. Steps justified by side knowledge are checked
// against `known` and rejected when it is empty.
ReplayReport replay(const ProofResult& proof, const KnownImplication& known = {});

void write_proof(std::ostream& os, const ProofResult& proof);
// Throws std::invalid_argument on malformed input.
ProofResult read_proof(std::istream& is);

}  // namespace meshpatt
