#include "meshpatt/prover.hpp"

#include <algorithm>
#include <climits>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <omp.h>

#include "meshpatt/symmetry.hpp"
#include "meshpatt/text_format.hpp"

namespace meshpatt {

std::string method_name(Method m) {
  switch (m) {
    case Method::ShadingLemma: return "sl";
    case Method::SimultaneousShading: return "ssl";
    case Method::Tsa1: return "tsa1";
    case Method::Tsa2: return "tsa2";
    case Method::Tsa3: return "tsa3";
    case Method::ShadingAlgorithm: return "sa";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
  for (Method m : {Method::ShadingLemma, Method::SimultaneousShading, Method::Tsa1, Method::Tsa2,
                   Method::Tsa3, Method::ShadingAlgorithm})
    if (method_name(m) == name) return m;
  return std::nullopt;
}

namespace {

void require_same_pattern(const MeshPattern& p, const MeshPattern& q) {
  if (p.pattern() != q.pattern()) throw std::invalid_argument("patterns have different underlying permutations");
}

void require_unshaded(const MeshPattern& p, Square sq) {
  if (!p.in_range(sq)) throw std::invalid_argument("square " + to_string(sq) + " out of range");
  if (p.is_shaded(sq)) throw std::invalid_argument("square " + to_string(sq) + " is already shaded");
}

bool row_major_less(Square a, Square b) { return a.row != b.row ? a.row < b.row : a.col < b.col; }

// Lemma conditions for the square north-east of the point (i,j).
bool ne_conditions(const MeshPattern& p, int i, int j) {
  const int k = p.size();
  auto shaded = [&](int c, int r) { return c >= 0 && r >= 0 && c <= k && r <= k && p.is_shaded({c, r}); };
  if (shaded(i, j)) return false;
  if (shaded(i - 1, j - 1)) return false;
  if (shaded(i, j - 1) && shaded(i - 1, j)) return false;
  for (int l = 0; l <= k; ++l) {
    if (l == i - 1 || l == i) continue;
    if (shaded(l, j - 1) && !shaded(l, j)) return false;
  }
  for (int l = 0; l <= k; ++l) {
    if (l == j - 1 || l == j) continue;
    if (shaded(i - 1, l) && !shaded(i, l)) return false;
  }
  return true;
}

struct Corner {
  Square sq;
  Symmetry to_ne;
  std::vector<Direction> dirs;
};

std::vector<Corner> corners_of(const MeshPattern& p, int point) {
  const int i = point, j = p.pattern()(point);
  return {
      {{i, j}, Symmetry::identity(), {Direction::Up, Direction::Right}},
      {{i - 1, j}, Symmetry::rev(), {Direction::Up, Direction::Left}},
      {{i, j - 1}, Symmetry::comp(), {Direction::Down, Direction::Right}},
      {{i - 1, j - 1}, Symmetry{false, true, true}, {Direction::Down, Direction::Left}},
  };
}

Shading squares_mask(const MeshPattern& p, const std::vector<Square>& squares) {
  return make_shading(p.grid(), squares);
}

std::vector<Square> mask_squares_row_major(const MeshPattern& p, const Shading& s) {
  std::vector<Square> out;
  for (int b = 0; b < p.num_squares(); ++b)
    if (s.test(b)) out.push_back(p.square(b));
  std::sort(out.begin(), out.end(), row_major_less);
  return out;
}

bool is_classical_occurrence(std::span<const int> host, std::span<const int> patt, const Occurrence& occ) {
  if (occ.size() != static_cast<int>(patt.size())) return false;
  for (int a = 0; a < occ.size(); ++a) {
    const int x = occ.indices[static_cast<std::size_t>(a)];
    if (x < 1 || x > static_cast<int>(host.size())) return false;
    if (a > 0 && x <= occ.indices[static_cast<std::size_t>(a - 1)]) return false;
  }
  for (int a = 0; a < occ.size(); ++a)
    for (int b = 0; b < occ.size(); ++b) {
      const bool hl = host[static_cast<std::size_t>(occ.indices[static_cast<std::size_t>(a)] - 1)] <
                      host[static_cast<std::size_t>(occ.indices[static_cast<std::size_t>(b)] - 1)];
      if (hl != (patt[static_cast<std::size_t>(a)] < patt[static_cast<std::size_t>(b)])) return false;
    }
  return true;
}

// An occurrence of p in the directed insertion `m` of `base` stronger than the
// trivial one.
std::optional<Occurrence> stronger_witness(const MeshPattern& p, const MeshPattern& m, Square inserted,
                                           const Force& f) {
  const StrengthVector trivial = strength(m.pattern().word(), trivial_occurrence(p.size(), inserted), f);
  for (Occurrence& occ : mesh_in_mesh_occurrences(m, p))
    if (strength(m.pattern().word(), occ, f) > trivial) return std::move(occ);
  return std::nullopt;
}

std::optional<TraceStep> tsa2_step(const MeshPattern& p, const MeshPattern& base, Square s, const Force& f) {
  for (Direction d : kDirections) {
    MeshPattern m = insert_directed(base, s, d);
    if (auto w = stronger_witness(p, m, s, f)) {
      TraceStep step;
      step.kind = TraceStep::Kind::Branch;
      step.squares = {s};
      step.dir = d;
      step.host = std::move(m);
      step.witness = std::move(*w);
      step.reason = TraceStep::Reason::Stronger;
      return step;
    }
  }
  return std::nullopt;
}

std::optional<TraceStep> tsa3_step(const MeshPattern& p, const MeshPattern& q, const MeshPattern& base, Square s,
                                   const Force& f, const KnownImplication& known) {
  if (auto step = tsa2_step(p, base, s, f)) return step;
  for (Direction d : kDirections) {
    MeshPattern m = insert_directed(base, s, d);
    std::optional<TraceStep> found;
    visit_classical_occurrences(m.pattern().word(), p.pattern().word(), [&](std::span<const int> idx) {
      Occurrence occ{std::vector<int>(idx.begin(), idx.end())};
      const Shading t = maximal_shading(m, occ);
      TraceStep::Reason reason = TraceStep::Reason::None;
      if (q.shading().is_subset_of(t))
        reason = TraceStep::Reason::Target;
      else if (known && known(t))
        reason = TraceStep::Reason::Known;
      if (reason == TraceStep::Reason::None) return true;
      found.emplace();
      found->kind = TraceStep::Kind::Branch;
      found->squares = {s};
      found->dir = d;
      found->host = m;
      found->witness = std::move(occ);
      found->reason = reason;
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// Shades the squares in the first order that works. Every step condition is
// monotone in the base shading, so the greedy choice never blocks a later
// square.
template <class Step>
std::optional<std::vector<TraceStep>> greedy_steps(const MeshPattern& p, std::vector<Square> remaining, Step&& step) {
  std::vector<TraceStep> out;
  MeshPattern base = p;
  while (!remaining.empty()) {
    bool moved = false;
    for (auto it = remaining.begin(); it != remaining.end(); ++it) {
      if (auto st = step(base, *it)) {
        base = base.with_shaded(*it);
        out.push_back(std::move(*st));
        remaining.erase(it);
        moved = true;
        break;
      }
    }
    if (!moved) return std::nullopt;
  }
  return out;
}

}  // namespace

// --- Shading Lemma -------------------------------------------------------

bool shading_lemma_from_point(const MeshPattern& p, int point, Square sq) {
  if (point < 1 || point > p.size()) return false;
  if (!p.in_range(sq) || p.is_shaded(sq)) return false;
  const int k = p.size();
  for (const Corner& c : corners_of(p, point)) {
    if (c.sq != sq) continue;
    const MeshPattern t = apply_symmetry(p, c.to_ne);
    const Square ts = apply_symmetry(sq, k, c.to_ne);
    return ne_conditions(t, ts.col, ts.row);
  }
  return false;
}

ProofResult shading_lemma_square(const MeshPattern& p, Square sq) {
  require_unshaded(p, sq);
  ProofResult r;
  r.method = Method::ShadingLemma;
  r.p = p;
  r.q = p.with_shaded(sq);
  // Points at the four corners of the square.
  for (int x = sq.col; x <= sq.col + 1; ++x) {
    if (x < 1 || x > p.size()) continue;
    const int y = p.pattern()(x);
    if (y != sq.row && y != sq.row + 1) continue;
    if (shading_lemma_from_point(p, x, sq)) {
      TraceStep step;
      step.kind = TraceStep::Kind::Shade;
      step.point = x;
      step.squares = {sq};
      r.trace.push_back(std::move(step));
      r.success = true;
      return r;
    }
  }
  return r;
}

std::vector<ShadeableUnit> shadeable_units(const MeshPattern& p, int point) {
  if (point < 1 || point > p.size()) throw std::invalid_argument("point out of range");
  std::vector<ShadeableUnit> out;
  const std::vector<Corner> cs = corners_of(p, point);
  for (const Corner& c : cs)
    if (shading_lemma_from_point(p, point, c.sq)) out.push_back({{c.sq}, c.dirs});

  // Sides as pairs of corner indices: N = {NW, NE}, S = {SW, SE}, W = {NW, SW}, E = {NE, SE}.
  struct Side {
    int a, b;
    Direction dir;
  };
  const Side sides[] = {{1, 0, Direction::Up}, {3, 2, Direction::Down}, {3, 1, Direction::Left}, {2, 0, Direction::Right}};
  for (const Side& side : sides) {
    const Square a = cs[static_cast<std::size_t>(side.a)].sq, b = cs[static_cast<std::size_t>(side.b)].sq;
    if (!p.in_range(a) || !p.in_range(b) || p.is_shaded(a) || p.is_shaded(b)) continue;
    const bool ok = (shading_lemma_from_point(p, point, a) && shading_lemma_from_point(p.with_shaded(a), point, b)) ||
                    (shading_lemma_from_point(p, point, b) && shading_lemma_from_point(p.with_shaded(b), point, a));
    if (!ok) continue;
    std::vector<Square> pair = {a, b};
    std::sort(pair.begin(), pair.end());
    out.push_back({pair, {side.dir}});
  }
  return out;
}

ProofResult simultaneous_shading(const MeshPattern& p, const std::vector<Pick>& picks) {
  ProofResult r;
  r.method = Method::SimultaneousShading;
  r.p = p;
  std::vector<bool> used(static_cast<std::size_t>(p.size()) + 1, false);
  Shading extra;
  for (const Pick& pk : picks) {
    if (pk.point < 1 || pk.point > p.size() || used[static_cast<std::size_t>(pk.point)]) {
      throw std::invalid_argument("bad or repeated pick point " + std::to_string(pk.point));
    }
    used[static_cast<std::size_t>(pk.point)] = true;
    std::vector<Square> unit = pk.squares;
    std::sort(unit.begin(), unit.end());
    const auto units = shadeable_units(p, pk.point);
    if (std::none_of(units.begin(), units.end(), [&](const ShadeableUnit& u) { return u.squares == unit; })) {
      throw std::invalid_argument("unit is not shadeable from point " + std::to_string(pk.point));
    }
    extra |= squares_mask(p, unit);
    TraceStep step;
    step.kind = TraceStep::Kind::Pick;
    step.point = pk.point;
    step.squares = unit;
    r.trace.push_back(std::move(step));
  }
  r.q = p.with_shading(p.shading() | extra);
  r.success = true;
  return r;
}

ProofResult prove_ssl(const MeshPattern& p, const MeshPattern& q) {
  require_same_pattern(p, q);
  ProofResult fail;
  fail.method = Method::SimultaneousShading;
  fail.p = p;
  fail.q = q;
  if (!p.shading().is_subset_of(q.shading())) return fail;
  const Shading target = q.shading() - p.shading();
  const int k = p.size();
  std::vector<std::vector<ShadeableUnit>> options(static_cast<std::size_t>(k) + 1);
  for (int g = 1; g <= k; ++g)
    for (ShadeableUnit& u : shadeable_units(p, g))
      if (squares_mask(p, u.squares).is_subset_of(target)) options[static_cast<std::size_t>(g)].push_back(std::move(u));

  std::vector<Pick> chosen;
  std::function<bool(int, Shading)> dfs = [&](int g, Shading acc) -> bool {
    if (g > k) return acc == target;
    if (dfs(g + 1, acc)) return true;
    for (const ShadeableUnit& u : options[static_cast<std::size_t>(g)]) {
      chosen.push_back({g, u.squares});
      if (dfs(g + 1, acc | squares_mask(p, u.squares))) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(1, Shading{})) return fail;
  return simultaneous_shading(p, chosen);
}

// --- Force lemmas -------------------------------------------------------

ProofResult lemma_tsa1(const MeshPattern& p, Square sq) {
  require_unshaded(p, sq);
  ProofResult r;
  r.method = Method::Tsa1;
  r.p = p;
  r.q = p.with_shaded(sq);
  const Occurrence trivial = trivial_occurrence(p.size(), sq);
  for (Direction d : kDirections) {
    MeshPattern m = insert_directed(p, sq, d);
    for (Occurrence& occ : mesh_in_mesh_occurrences(m, p)) {
      if (occ == trivial) continue;
      TraceStep step;
      step.kind = TraceStep::Kind::Branch;
      step.squares = {sq};
      step.dir = d;
      step.host = std::move(m);
      step.witness = std::move(occ);
      r.trace.push_back(std::move(step));
      r.success = true;
      return r;
    }
  }
  return r;
}

ProofResult lemma_tsa2(const MeshPattern& p, const Force& f, const std::vector<Square>& squares) {
  validate_force(f, p.size());
  ProofResult r;
  r.method = Method::Tsa2;
  r.p = p;
  r.force = f;
  MeshPattern base = p;
  for (Square s : squares) {
    require_unshaded(base, s);
    base = base.with_shaded(s);
  }
  r.q = base;
  base = p;
  for (Square s : squares) {
    auto step = tsa2_step(p, base, s, f);
    if (!step) {
      r.trace.clear();
      return r;
    }
    r.trace.push_back(std::move(*step));
    base = base.with_shaded(s);
  }
  r.success = true;
  return r;
}

ProofResult prove_tsa2(const MeshPattern& p, const MeshPattern& q, std::optional<Force> f, int max_force_size) {
  require_same_pattern(p, q);
  ProofResult fail;
  fail.method = Method::Tsa2;
  fail.p = p;
  fail.q = q;
  if (!p.shading().is_subset_of(q.shading())) return fail;
  const std::vector<Square> wanted = mask_squares_row_major(p, q.shading() - p.shading());
  const std::vector<Force> forces = f ? std::vector<Force>{*f} : enumerate_forces(p.size(), max_force_size);
  for (const Force& force : forces) {
    auto steps = greedy_steps(p, wanted, [&](const MeshPattern& base, Square s) { return tsa2_step(p, base, s, force); });
    if (!steps) continue;
    ProofResult r = fail;
    r.success = true;
    r.force = force;
    r.trace = std::move(*steps);
    return r;
  }
  if (f) fail.force = *f;
  return fail;
}

Shading tsa2_closure(const MeshPattern& p, const Force& f) {
  validate_force(f, p.size());
  std::vector<Square> open;
  for (int b = 0; b < p.num_squares(); ++b)
    if (!p.shading().test(b)) open.push_back(p.square(b));
  Shading added;
  MeshPattern base = p;
  bool moved = true;
  while (moved) {
    moved = false;
    for (auto it = open.begin(); it != open.end(); ++it) {
      if (tsa2_step(p, base, *it, f)) {
        added.set(p.bit(*it));
        base = base.with_shaded(*it);
        open.erase(it);
        moved = true;
        break;
      }
    }
  }
  return added;
}

ProofResult prove_tsa3(const MeshPattern& p, const MeshPattern& q, std::optional<Force> f, int max_force_size,
                       const KnownImplication& known) {
  require_same_pattern(p, q);
  ProofResult fail;
  fail.method = Method::Tsa3;
  fail.p = p;
  fail.q = q;
  if (f) validate_force(*f, p.size());
  // Squares of p that q also leaves unshaded are irrelevant; an occurrence of
  // p with q's extra squares empty is an occurrence of q.
  const Shading wanted_mask = q.shading() - p.shading();
  const std::vector<Square> wanted = mask_squares_row_major(p, wanted_mask);
  const std::vector<Force> forces = f ? std::vector<Force>{*f} : enumerate_forces(p.size(), max_force_size);
  for (const Force& force : forces) {
    auto steps = greedy_steps(
        p, wanted, [&](const MeshPattern& base, Square s) { return tsa3_step(p, q, base, s, force, known); });
    if (!steps) continue;
    ProofResult r = fail;
    r.success = true;
    r.force = force;
    r.trace = std::move(*steps);
    return r;
  }
  if (f) fail.force = *f;
  return fail;
}

// --- Shading Algorithm -----------------------------------------------------

namespace {

struct StateKey {
  std::vector<int> word;
  Shading shading;
  std::vector<int> tracked;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::size_t h = std::hash<Shading>{}(k.shading);
    for (int v : k.word) h = h * 131 + static_cast<std::size_t>(v);
    for (int v : k.tracked) h = h * 137 + static_cast<std::size_t>(v);
    return h;
  }
};

struct MemoEntry {
  int failed_upto = -1;         // fails at every depth <= this
  int succeeds_from = INT_MAX;  // succeeds at every depth >= this
};

// Recursion squares for one candidate occurrence: the unshaded working-grid
// squares inside the regions of the target squares the candidate misses.
// Empty optional when a missed region holds a point, since shading cannot make
// the candidate an occurrence of q then.
std::optional<std::vector<Square>> split_squares(const MeshPattern& w, const Occurrence& cand, const Shading& missing,
                                                 int tau_grid) {
  std::vector<Square> out;
  for (int b = 0; b < tau_grid * tau_grid; ++b) {
    if (!missing.test(b)) continue;
    const Square sq{b / tau_grid, b % tau_grid};
    if (region_has_point(w.pattern().word(), cand, sq)) return std::nullopt;
    for (Square s : region_squares(w.pattern().word(), cand, sq))
      if (!w.is_shaded(s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), row_major_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class ShadingAlgorithmEngine {
 public:
  ShadingAlgorithmEngine(const MeshPattern& p, const MeshPattern& q, const Force& f, const KnownImplication& known)
      : p_(p), q_(q), f_(f), known_(known) {}

  bool run(const MeshPattern& w, const Occurrence& c, int d, std::vector<TraceStep>* out, int level) {
    StateKey key{std::vector<int>(w.pattern().word().begin(), w.pattern().word().end()), w.shading(), c.indices};
    {
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        if (d <= it->second.failed_upto) return false;
        if (d >= it->second.succeeds_from && out == nullptr) return true;
      }
    }
    const bool ok = explore(w, c, d, out, level);
    MemoEntry& e = memo_[key];
    if (ok)
      e.succeeds_from = std::min(e.succeeds_from, d);
    else
      e.failed_upto = std::max(e.failed_upto, d);
    return ok;
  }

 private:
  bool explore(const MeshPattern& w, const Occurrence& c, int d, std::vector<TraceStep>* out, int level) {
    const auto word = w.pattern().word();
    const StrengthVector tracked = strength(word, c, f_);
    const Shading& r = p_.shading();
    const Shading& target = q_.shading();

    std::vector<Occurrence> cands;
    std::vector<Shading> maximal;
    visit_classical_occurrences(word, p_.pattern().word(), [&](std::span<const int> idx) {
      cands.push_back({std::vector<int>(idx.begin(), idx.end())});
      return true;
    });
    maximal.reserve(cands.size());
    for (const Occurrence& cand : cands) maximal.push_back(maximal_shading(w, cand));

    auto emit = [&](const Occurrence& cand, TraceStep::Reason reason) {
      if (!out) return;
      TraceStep node;
      node.kind = TraceStep::Kind::Node;
      node.level = level;
      node.host = w;
      node.tracked = c;
      node.witness = cand;
      node.reason = reason;
      out->push_back(std::move(node));
    };

    // Base cases for every candidate before any recursion; the verdict does
    // not depend on the order.
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const Shading& t = maximal[i];
      if (r.is_subset_of(t) && strength(word, cands[i], f_) > tracked) {
        emit(cands[i], TraceStep::Reason::Stronger);
        return true;
      }
      if (target.is_subset_of(t)) {
        emit(cands[i], TraceStep::Reason::Target);
        return true;
      }
      if (known_ && known_(t)) {
        emit(cands[i], TraceStep::Reason::Known);
        return true;
      }
    }
    if (d == 0) return false;

    const int tau_grid = p_.grid();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const auto squares = split_squares(w, cands[i], target - maximal[i], tau_grid);
      if (!squares || squares->empty()) continue;
      std::vector<TraceStep> local;
      std::vector<TraceStep>* sink = out ? &local : nullptr;
      MeshPattern cur = w;
      bool all = true;
      for (Square s : *squares) {
        bool certified = false;
        for (Direction a : kDirections) {
          std::vector<TraceStep> child;
          if (run(insert_directed(cur, s, a), shift_occurrence(c, s), d - 1, sink ? &child : nullptr, level + 1)) {
            if (sink) {
              TraceStep br;
              br.kind = TraceStep::Kind::Branch;
              br.level = level;
              br.squares = {s};
              br.dir = a;
              sink->push_back(std::move(br));
              sink->insert(sink->end(), std::make_move_iterator(child.begin()), std::make_move_iterator(child.end()));
            }
            certified = true;
            break;
          }
        }
        if (!certified) {
          all = false;
          break;
        }
        cur = cur.with_shaded(s);
      }
      if (all) {
        emit(cands[i], TraceStep::Reason::Split);
        if (out) out->insert(out->end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
        return true;
      }
    }
    return false;
  }

  const MeshPattern& p_;
  const MeshPattern& q_;
  const Force& f_;
  const KnownImplication& known_;
  std::unordered_map<StateKey, MemoEntry, StateKeyHash> memo_;
};

Occurrence identity_occurrence(int k) {
  Occurrence occ;
  for (int x = 1; x <= k; ++x) occ.indices.push_back(x);
  return occ;
}

}  // namespace

ProofResult shading_algorithm(const MeshPattern& p, const MeshPattern& q, const Force& f, int depth,
                              const ShadingAlgorithmOptions& opts) {
  require_same_pattern(p, q);
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  validate_force(f, p.size());
  ProofResult r;
  r.method = Method::ShadingAlgorithm;
  r.p = p;
  r.q = q;
  r.force = f;
  r.depth = depth;
  ShadingAlgorithmEngine engine(p, q, f, opts.known);
  r.success = engine.run(p, identity_occurrence(p.size()), depth, opts.with_trace ? &r.trace : nullptr, 0);
  if (!r.success) r.trace.clear();
  return r;
}

ProofResult search_forces(const MeshPattern& p, const MeshPattern& q, int max_depth, int max_force_size,
                          const ShadingAlgorithmOptions& opts) {
  require_same_pattern(p, q);
  if (max_depth < 0) throw std::invalid_argument("depth must be non-negative");
  const std::vector<Force> forces = enumerate_forces(p.size(), max_force_size);
  const auto n = static_cast<std::int64_t>(forces.size());
  std::int64_t best = n;
  ShadingAlgorithmOptions quiet = opts;
  quiet.with_trace = false;
  // Lowest-index success wins, so the answer does not depend on scheduling.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t seen;
#pragma omp atomic read
    seen = best;
    if (i > seen) continue;
    if (shading_algorithm(p, q, forces[static_cast<std::size_t>(i)], max_depth, quiet).success) {
#pragma omp critical(meshpatt_search_forces)
      best = std::min(best, i);
    }
  }
  if (best < n) return shading_algorithm(p, q, forces[static_cast<std::size_t>(best)], max_depth, opts);
  ProofResult r;
  r.method = Method::ShadingAlgorithm;
  r.p = p;
  r.q = q;
  r.depth = max_depth;
  return r;
}

// --- Replay --------------------------------------------------------------

namespace {

struct ReplayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw ReplayError(what);
}

class SaReplayer {
 public:
  SaReplayer(const ProofResult& proof, const KnownImplication& known) : proof_(proof), known_(known) {}

  void run() {
    std::size_t pos = 0;
    Occurrence c;
    for (int x = 1; x <= proof_.p.size(); ++x) c.indices.push_back(x);
    node(pos, proof_.p, c, proof_.depth, 0);
    expect(pos == proof_.trace.size(), "trailing trace lines");
  }

 private:
  void node(std::size_t& pos, const MeshPattern& w, const Occurrence& c, int d, int level) {
    expect(pos < proof_.trace.size(), "trace ends early");
    const TraceStep& st = proof_.trace[pos++];
    expect(st.kind == TraceStep::Kind::Node && st.level == level, "expected node at level " + std::to_string(level));
    expect(st.host && *st.host == w, "node pattern does not match the insertion sequence");
    expect(st.tracked == c, "tracked occurrence does not match");
    const auto word = w.pattern().word();
    expect(is_classical_occurrence(word, proof_.p.pattern().word(), st.witness), "witness is not an occurrence");
    const Shading t = maximal_shading(w, st.witness);
    switch (st.reason) {
      case TraceStep::Reason::Stronger:
        expect(proof_.p.shading().is_subset_of(t), "witness is not an occurrence of p");
        expect(strength(word, st.witness, proof_.force) > strength(word, c, proof_.force), "witness is not stronger");
        return;
      case TraceStep::Reason::Target:
        expect(proof_.q.shading().is_subset_of(t), "witness is not an occurrence of q");
        return;
      case TraceStep::Reason::Known:
        expect(known_ && known_(t), "step relies on implication knowledge that was not supplied");
        return;
      case TraceStep::Reason::Split: {
        expect(d > 0, "split below depth budget");
        const auto squares = split_squares(w, st.witness, proof_.q.shading() - t, proof_.p.grid());
        expect(squares && !squares->empty(), "split squares undefined for witness");
        MeshPattern cur = w;
        for (Square s : *squares) {
          expect(pos < proof_.trace.size(), "trace ends early");
          const TraceStep& br = proof_.trace[pos++];
          expect(br.kind == TraceStep::Kind::Branch && br.level == level && br.squares.size() == 1 &&
                     br.squares[0] == s && br.dir,
                 "expected branch on " + to_string(s));
          node(pos, insert_directed(cur, s, *br.dir), shift_occurrence(c, s), d - 1, level + 1);
          cur = cur.with_shaded(s);
        }
        return;
      }
      case TraceStep::Reason::None: break;
    }
    throw ReplayError("node without a reason");
  }

  const ProofResult& proof_;
  const KnownImplication& known_;
};

void replay_force_lemma(const ProofResult& proof, const KnownImplication& known) {
  const MeshPattern& p = proof.p;
  MeshPattern base = p;
  if (proof.method != Method::Tsa3) expect(!proof.trace.empty() || p == proof.q, "empty trace");
  if (proof.method == Method::Tsa1) expect(proof.trace.size() == 1, "tsa1 shades exactly one square");
  for (const TraceStep& st : proof.trace) {
    expect(st.kind == TraceStep::Kind::Branch && st.squares.size() == 1 && st.dir && st.host, "malformed branch");
    const Square s = st.squares[0];
    expect(base.in_range(s) && !base.is_shaded(s), "square already shaded");
    expect(*st.host == insert_directed(base, s, *st.dir), "host is not the directed insertion");
    expect(is_classical_occurrence(st.host->pattern().word(), p.pattern().word(), st.witness),
           "witness is not an occurrence of the underlying pattern");
    const Shading t = maximal_shading(*st.host, st.witness);
    const Occurrence trivial = trivial_occurrence(p.size(), s);
    const auto word = st.host->pattern().word();
    const bool tsa3 = proof.method == Method::Tsa3;
    if (tsa3 && st.reason == TraceStep::Reason::Target) {
      expect(proof.q.shading().is_subset_of(t), "witness is not an occurrence of q");
    } else if (tsa3 && st.reason == TraceStep::Reason::Known) {
      expect(known && known(t), "step relies on implication knowledge that was not supplied");
    } else {
      expect(p.shading().is_subset_of(t), "witness is not an occurrence of p");
      if (proof.method == Method::Tsa1)
        expect(st.witness != trivial, "witness is the trivial occurrence");
      else
        expect(strength(word, st.witness, proof.force) > strength(word, trivial, proof.force),
               "witness is not stronger than the trivial occurrence");
    }
    base = base.with_shaded(s);
  }
  if (proof.method == Method::Tsa3)
    expect(proof.q.shading().is_subset_of(base.shading()), "shaded squares do not cover q");
  else
    expect(base == proof.q, "shaded squares do not produce q");
}

}  // namespace

ReplayReport replay(const ProofResult& proof, const KnownImplication& known) {
  if (!proof.success) return {false, "proof is not a success"};
  try {
    require_same_pattern(proof.p, proof.q);
    switch (proof.method) {
      case Method::ShadingLemma: {
        expect(proof.trace.size() == 1 && proof.trace[0].kind == TraceStep::Kind::Shade &&
                   proof.trace[0].squares.size() == 1,
               "malformed shading lemma trace");
        const TraceStep& st = proof.trace[0];
        expect(shading_lemma_from_point(proof.p, st.point, st.squares[0]), "lemma conditions fail");
        expect(proof.p.with_shaded(st.squares[0]) == proof.q, "square does not produce q");
        break;
      }
      case Method::SimultaneousShading: {
        std::vector<Pick> picks;
        for (const TraceStep& st : proof.trace) {
          expect(st.kind == TraceStep::Kind::Pick, "malformed pick");
          picks.push_back({st.point, st.squares});
        }
        const ProofResult again = simultaneous_shading(proof.p, picks);
        expect(again.q == proof.q, "picked units do not produce q");
        break;
      }
      case Method::Tsa1:
      case Method::Tsa2:
      case Method::Tsa3:
        replay_force_lemma(proof, known);
        break;
      case Method::ShadingAlgorithm:
        SaReplayer(proof, known).run();
        break;
    }
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
  return {true, "ok"};
}

// --- Text form -------------------------------------------------------------

namespace {

std::string reason_name(TraceStep::Reason r) {
  switch (r) {
    case TraceStep::Reason::Stronger: return "stronger";
    case TraceStep::Reason::Target: return "target";
    case TraceStep::Reason::Known: return "known";
    case TraceStep::Reason::Split: return "split";
    case TraceStep::Reason::None: break;
  }
  return "none";
}

TraceStep::Reason reason_from(std::string_view s) {
  for (auto r : {TraceStep::Reason::Stronger, TraceStep::Reason::Target, TraceStep::Reason::Known,
                 TraceStep::Reason::Split, TraceStep::Reason::None})
    if (reason_name(r) == s) return r;
  throw std::invalid_argument("unknown reason '" + std::string(s) + "'");
}

std::string indices_text(const Occurrence& occ) {
  if (occ.indices.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < occ.indices.size(); ++i) s += (i ? "," : "") + std::to_string(occ.indices[i]);
  return s;
}

Occurrence indices_from(std::string_view s) {
  Occurrence occ;
  if (s == "-") return occ;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    occ.indices.push_back(std::stoi(std::string(s.substr(start, end - start))));
    start = end + 1;
  }
  return occ;
}

std::string squares_text(const std::vector<Square>& sq) {
  std::string s;
  for (std::size_t i = 0; i < sq.size(); ++i)
    s += (i ? ";" : "") + std::to_string(sq[i].col) + "," + std::to_string(sq[i].row);
  return s;
}

std::vector<Square> squares_from(std::string_view s) {
  std::vector<Square> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const std::size_t end = std::min(s.find(';', start), s.size());
    const std::string_view item = s.substr(start, end - start);
    const std::size_t comma = item.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("bad square '" + std::string(item) + "'");
    out.push_back({std::stoi(std::string(item.substr(0, comma))), std::stoi(std::string(item.substr(comma + 1)))});
    start = end + 1;
  }
  return out;
}

}  // namespace

void write_proof(std::ostream& os, const ProofResult& proof) {
  os << "proof\n";
  os << "method " << method_name(proof.method) << '\n';
  os << "p " << format_pattern(proof.p) << '\n';
  os << "q " << format_pattern(proof.q) << '\n';
  os << "force " << (proof.force.empty() ? "-" : format_force(proof.force)) << '\n';
  os << "depth " << proof.depth << '\n';
  os << "verdict " << (proof.success ? "success" : "failure") << '\n';
  for (const TraceStep& st : proof.trace) {
    switch (st.kind) {
      case TraceStep::Kind::Shade:
        os << "shade point=" << st.point << " squares=" << squares_text(st.squares) << '\n';
        break;
      case TraceStep::Kind::Pick:
        os << "pick point=" << st.point << " squares=" << squares_text(st.squares) << '\n';
        break;
      case TraceStep::Kind::Branch:
        os << "branch level=" << st.level << " squares=" << squares_text(st.squares)
           << " dir=" << (st.dir ? direction_letter(*st.dir) : '-');
        if (st.host) os << " host=" << format_pattern(*st.host) << " witness=" << indices_text(st.witness);
        if (st.reason != TraceStep::Reason::None) os << " reason=" << reason_name(st.reason);
        os << '\n';
        break;
      case TraceStep::Kind::Node:
        os << "node level=" << st.level << " host=" << (st.host ? format_pattern(*st.host) : "-")
           << " tracked=" << indices_text(st.tracked) << " witness=" << indices_text(st.witness)
           << " reason=" << reason_name(st.reason) << '\n';
        break;
    }
  }
  os << "end\n";
}

ProofResult read_proof(std::istream& is) {
  ProofResult r;
  std::string line;
  bool started = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (!started) {
      if (head != "proof") throw std::invalid_argument("expected 'proof' header");
      started = true;
      continue;
    }
    if (head == "end") return r;
    std::string rest;
    std::getline(ls >> std::ws, rest);
    if (head == "method") {
      auto m = method_from_name(rest);
      if (!m) throw std::invalid_argument("unknown method '" + rest + "'");
      r.method = *m;
    } else if (head == "p") {
      r.p = parse_pattern(rest);
    } else if (head == "q") {
      r.q = parse_pattern(rest);
    } else if (head == "force") {
      r.force = rest == "-" ? Force{} : parse_force(rest);
    } else if (head == "depth") {
      r.depth = std::stoi(rest);
    } else if (head == "verdict") {
      r.success = rest == "success";
    } else if (head == "shade" || head == "pick" || head == "branch" || head == "node") {
      TraceStep st;
      st.kind = head == "shade"    ? TraceStep::Kind::Shade
                : head == "pick"   ? TraceStep::Kind::Pick
                : head == "branch" ? TraceStep::Kind::Branch
                                   : TraceStep::Kind::Node;
      std::istringstream fields(rest);
      std::string kv;
      while (fields >> kv) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad field '" + kv + "'");
        const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "level") st.level = std::stoi(val);
        else if (key == "point") st.point = std::stoi(val);
        else if (key == "squares") st.squares = squares_from(val);
        else if (key == "dir") st.dir = val.size() == 1 ? direction_from_letter(val[0]) : std::nullopt;
        else if (key == "host") st.host = val == "-" ? std::nullopt : std::optional<MeshPattern>(parse_pattern(val));
        else if (key == "tracked") st.tracked = indices_from(val);
        else if (key == "witness") st.witness = indices_from(val);
        else if (key == "reason") st.reason = reason_from(val);
        else throw std::invalid_argument("unknown field '" + key + "'");
      }
      r.trace.push_back(std::move(st));
    } else {
      throw std::invalid_argument("unknown line '" + head + "'");
    }
  }
  throw std::invalid_argument("proof not terminated by 'end'");
}

}  // namespace meshpatt
