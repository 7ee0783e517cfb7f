#include "meshpatt/classify.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

#include "meshpatt/occurrence.hpp"
#include "meshpatt/text_format.hpp"

namespace meshpatt {

namespace {

void check_classify_args(const Permutation& underlying, int maxn) {
  if (maxn < 1) throw std::invalid_argument("maxn must be at least 1");
  if (underlying.empty()) throw std::invalid_argument("the empty pattern is not classified");
  if (underlying.size() > kMaxClassifySize) {
    throw std::invalid_argument("underlying pattern longer than " + std::to_string(kMaxClassifySize));
  }
}

// Maximal allowed masks over all occurrences of `patt` in `host`, as a sorted
// antichain. Two hosts with the same antichain contain the same patterns.
std::vector<std::uint32_t> allowed_antichain(std::span<const int> host, std::span<const int> patt) {
  const int n = static_cast<int>(host.size());
  const int k = static_cast<int>(patt.size());
  const int g = k + 1;
  const std::uint32_t full = (g * g == 32) ? ~0u : ((1u << (g * g)) - 1);
  std::vector<std::uint32_t> masks;
  std::vector<int> vals(static_cast<std::size_t>(k));
  visit_classical_occurrences(host, patt, [&](std::span<const int> idx) {
    for (int a = 0; a < k; ++a) vals[static_cast<std::size_t>(a)] = host[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)] - 1)];
    std::sort(vals.begin(), vals.end());
    std::uint32_t occupied = 0;
    int col = 0;
    for (int x = 1; x <= n; ++x) {
      if (col < k && idx[static_cast<std::size_t>(col)] == x) {
        ++col;
        continue;
      }
      const int v = host[static_cast<std::size_t>(x - 1)];
      const int row = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
      occupied |= 1u << (col * g + row);
    }
    masks.push_back(full & ~occupied);
    return true;
  });
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  std::vector<std::uint32_t> out;
  for (std::uint32_t m : masks) {
    if (std::any_of(out.begin(), out.end(), [&](std::uint32_t o) { return (m & ~o) == 0; })) continue;
    out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct AntichainHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ x;
    return h;
  }
};

ExperimentalClassification assemble(const Permutation& underlying, int maxn, const std::vector<std::uint32_t>& label) {
  ExperimentalClassification out;
  out.underlying = underlying;
  out.maxn = maxn;
  std::map<std::uint32_t, std::size_t> slot;
  for (std::uint32_t x = 0; x < label.size(); ++x) {
    auto [it, fresh] = slot.emplace(label[x], out.classes.size());
    if (fresh) out.classes.emplace_back();
    out.classes[it->second].members.emplace_back(underlying, Shading::from_u64(x));
  }
  return out;
}

}  // namespace

ExperimentalClassification experimental_classify(const Permutation& underlying, int maxn) {
  check_classify_args(underlying, maxn);
  const int k = underlying.size();
  const int g = k + 1;
  const std::uint32_t num = 1u << (g * g);

  std::vector<std::uint32_t> label(num, 0);
  std::uint32_t next_label = 1;
  // Patterns whose class still has other members.
  std::vector<std::uint32_t> active(num);
  for (std::uint32_t x = 0; x < num; ++x) active[x] = x;

  std::vector<SplitWitness> witnesses;
  std::unordered_set<std::vector<std::uint32_t>, AntichainHash> seen;
  std::vector<std::uint8_t> contained(num);

  constexpr std::uint64_t kChunk = 1u << 14;
  for (int n = k; n <= maxn && !active.empty(); ++n) {
    const std::uint64_t total = factorial(n);
    for (std::uint64_t base = 0; base < total && !active.empty(); base += kChunk) {
      const std::uint64_t len = std::min(kChunk, total - base);
      std::vector<std::vector<std::uint32_t>> sets(len);
      const auto blocks = static_cast<std::int64_t>((len + 63) / 64);
#pragma omp parallel for schedule(dynamic, 4)
      for (std::int64_t b = 0; b < blocks; ++b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * 64;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + 64, len);
        std::vector<int> w = lex_unrank(n, base + lo);
        for (std::uint64_t r = lo; r < hi; ++r) {
          sets[r] = allowed_antichain(w, underlying.word());
          std::next_permutation(w.begin(), w.end());
        }
      }

      for (std::uint64_t r = 0; r < len && !active.empty(); ++r) {
        if (!seen.insert(sets[r]).second) continue;
        const auto& anti = sets[r];
        const auto na = static_cast<std::int64_t>(active.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t a = 0; a < na; ++a) {
          const std::uint32_t x = active[static_cast<std::size_t>(a)];
          contained[x] = std::any_of(anti.begin(), anti.end(), [&](std::uint32_t m) { return (x & ~m) == 0; });
        }
        // Split every class with members on both sides; members containing
        // the pattern move to a fresh label.
        std::unordered_map<std::uint32_t, std::pair<std::int64_t, std::int64_t>> first;  // label -> (first out, first in)
        for (std::uint32_t x : active) {
          auto& f = first.try_emplace(label[x], -1, -1).first->second;
          auto& slot = contained[x] ? f.second : f.first;
          if (slot < 0) slot = x;
        }
        std::unordered_map<std::uint32_t, std::uint32_t> moved;
        bool changed = false;
        for (std::uint32_t x : active) {
          const auto& f = first[label[x]];
          if (f.first < 0 || f.second < 0) continue;
          changed = true;
          if (!contained[x]) continue;
          auto [it, fresh] = moved.try_emplace(label[x], next_label);
          if (fresh) {
            ++next_label;
            witnesses.push_back({MeshPattern(underlying, Shading::from_u64(static_cast<std::uint64_t>(f.first))),
                                 MeshPattern(underlying, Shading::from_u64(static_cast<std::uint64_t>(f.second))),
                                 Permutation(lex_unrank(n, base + r))});
          }
          label[x] = it->second;
        }
        if (!changed) continue;
        std::unordered_map<std::uint32_t, int> sizes;
        for (std::uint32_t x : active) ++sizes[label[x]];
        std::erase_if(active, [&](std::uint32_t x) { return sizes[label[x]] == 1; });
      }
    }
  }

  ExperimentalClassification out = assemble(underlying, maxn, label);
  out.witnesses = std::move(witnesses);
  return out;
}

ExperimentalClassification experimental_classify_serial(const Permutation& underlying, int maxn) {
  check_classify_args(underlying, maxn);
  const int g = underlying.size() + 1;
  const std::uint32_t num = 1u << (g * g);
  std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
  std::vector<std::uint32_t> label(num);
  for (std::uint32_t x = 0; x < num; ++x) {
    const Fingerprint fp = avoidance_fingerprint_serial(MeshPattern(underlying, Shading::from_u64(x)), maxn);
    std::vector<std::uint64_t> key;
    for (const PermBitset& b : fp.by_size) key.insert(key.end(), b.words().begin(), b.words().end());
    label[x] = ids.try_emplace(std::move(key), static_cast<std::uint32_t>(ids.size())).first->second;
  }
  return assemble(underlying, maxn, label);
}

Fingerprint class_fingerprint(const ExperimentalClass& c, int maxn) { return avoidance_fingerprint(c.representative(), maxn); }

std::optional<Permutation> distinguishing_permutation(const MeshPattern& a, const MeshPattern& b, int maxn) {
  for (int n = 0; n <= maxn; ++n) {
    std::optional<Permutation> found;
    for_each_permutation(n, [&](std::span<const int> w) {
      Permutation perm(std::vector<int>(w.begin(), w.end()));
      if (contains(perm, a) != contains(perm, b)) {
        found = std::move(perm);
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

// --- Graph ------------------------------------------------------------------

std::string origin_name(EdgeOrigin o) {
  switch (o) {
    case EdgeOrigin::Subset: return "subset";
    case EdgeOrigin::ShadingLemma: return "sl";
    case EdgeOrigin::Tsa1: return "tsa1";
    case EdgeOrigin::SimultaneousShading: return "ssl";
    case EdgeOrigin::Tsa2: return "tsa2";
    case EdgeOrigin::Tsa3: return "tsa3";
    case EdgeOrigin::ShadingAlgorithm: return "sa";
  }
  return "?";
}

CoincidenceGraph::CoincidenceGraph(std::vector<MeshPattern> nodes)
    : nodes_(std::move(nodes)), out_(nodes_.size()) {
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].pattern() != nodes_[0].pattern()) throw std::invalid_argument("graph nodes differ in underlying pattern");
  }
}

std::optional<int> CoincidenceGraph::index_of(const MeshPattern& p) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), p);
  if (it != nodes_.end() && *it == p) return static_cast<int>(it - nodes_.begin());
  // Nodes are normally sorted; fall back to a scan otherwise.
  it = std::find(nodes_.begin(), nodes_.end(), p);
  if (it == nodes_.end()) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

bool CoincidenceGraph::has_edge(int from, int to) const {
  const auto& o = out_.at(static_cast<std::size_t>(from));
  return std::find(o.begin(), o.end(), to) != o.end();
}

bool CoincidenceGraph::add_edge(int from, int to, EdgeOrigin origin) {
  if (from < 0 || to < 0 || from >= size() || to >= size()) throw std::out_of_range("edge endpoint out of range");
  if (from == to || has_edge(from, to)) return false;
  out_[static_cast<std::size_t>(from)].push_back(to);
  edges_.push_back({from, to, origin});
  return true;
}

bool CoincidenceGraph::reaches(int from, int to) const {
  if (from == to) return true;
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<int> stack = {from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : out_[static_cast<std::size_t>(v)]) {
      if (w == to) return true;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return false;
}

std::vector<bool> CoincidenceGraph::reaching(int to) const {
  std::vector<std::vector<int>> in(nodes_.size());
  for (std::size_t v = 0; v < out_.size(); ++v)
    for (int w : out_[v]) in[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<int> stack = {to};
  seen[static_cast<std::size_t>(to)] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : in[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        stack.push_back(u);
      }
  }
  return seen;
}

std::vector<int> CoincidenceGraph::components() const {
  // Tarjan.
  const int n = size();
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int counter = 0, ncomp = 0;
  std::function<void(int)> visit = [&](int v) {
    const auto sv = static_cast<std::size_t>(v);
    index[sv] = low[sv] = counter++;
    stack.push_back(v);
    on_stack[sv] = true;
    for (int w : out_[sv]) {
      const auto sw = static_cast<std::size_t>(w);
      if (index[sw] < 0) {
        visit(w);
        low[sv] = std::min(low[sv], low[sw]);
      } else if (on_stack[sw]) {
        low[sv] = std::min(low[sv], index[sw]);
      }
    }
    if (low[sv] == index[sv]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        comp[static_cast<std::size_t>(w)] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[static_cast<std::size_t>(v)] < 0) visit(v);
  return comp;
}

int CoincidenceGraph::num_components() const {
  const auto c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

void add_subset_edges(CoincidenceGraph& g) {
  const auto& nodes = g.nodes();
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (i != j && nodes[static_cast<std::size_t>(j)].shading().is_subset_of(nodes[static_cast<std::size_t>(i)].shading()))
        g.add_edge(i, j, EdgeOrigin::Subset);
}

// --- Stages -----------------------------------------------------------------

namespace {

EdgeOrigin origin_of(Method m) {
  switch (m) {
    case Method::ShadingLemma: return EdgeOrigin::ShadingLemma;
    case Method::SimultaneousShading: return EdgeOrigin::SimultaneousShading;
    case Method::Tsa1: return EdgeOrigin::Tsa1;
    case Method::Tsa2: return EdgeOrigin::Tsa2;
    case Method::Tsa3: return EdgeOrigin::Tsa3;
    case Method::ShadingAlgorithm: return EdgeOrigin::ShadingAlgorithm;
  }
  return EdgeOrigin::Subset;
}

int node_of(const CoincidenceGraph& g, const MeshPattern& p) {
  auto j = g.index_of(p);
  if (!j) throw std::logic_error("proved coincidence leaves the experimental class: " + format_pattern(p));
  return *j;
}

int add_both(CoincidenceGraph& g, int i, int j, EdgeOrigin o) {
  return static_cast<int>(g.add_edge(i, j, o)) + static_cast<int>(g.add_edge(j, i, o));
}

// Every union of shadeable units over distinct points.
std::set<Shading> ssl_unions(const MeshPattern& p) {
  std::vector<std::vector<Shading>> options(static_cast<std::size_t>(p.size()));
  for (int pt = 1; pt <= p.size(); ++pt)
    for (const ShadeableUnit& u : shadeable_units(p, pt))
      options[static_cast<std::size_t>(pt - 1)].push_back(make_shading(p.grid(), u.squares));
  std::set<Shading> out;
  std::function<void(std::size_t, Shading)> rec = [&](std::size_t i, Shading acc) {
    if (i == options.size()) {
      if (!acc.none()) out.insert(acc);
      return;
    }
    rec(i + 1, acc);
    for (const Shading& s : options[i]) rec(i + 1, acc | s);
  };
  rec(0, Shading{});
  return out;
}

KnownImplication known_for(const CoincidenceGraph& g, int target) {
  const std::vector<bool> reach = g.reaching(target);
  std::vector<Shading> sources;
  for (int v = 0; v < g.size(); ++v)
    if (reach[static_cast<std::size_t>(v)]) sources.push_back(g.nodes()[static_cast<std::size_t>(v)].shading());
  return [sources = std::move(sources)](const Shading& t) {
    return std::any_of(sources.begin(), sources.end(), [&](const Shading& s) { return s.is_subset_of(t); });
  };
}

}  // namespace

int apply_stage(CoincidenceGraph& g, Method method, int depth, int max_force_size, bool use_known) {
  if (g.resolved()) return 0;
  const int k = g.nodes().front().size();
  if (max_force_size < 0) max_force_size = k;
  const EdgeOrigin origin = origin_of(method);
  int added = 0;
  const auto& nodes = g.nodes();

  switch (method) {
    case Method::ShadingLemma:
    case Method::Tsa1:
      for (int i = 0; i < g.size(); ++i) {
        const MeshPattern& p = nodes[static_cast<std::size_t>(i)];
        for (int b = 0; b < p.num_squares(); ++b) {
          if (p.shading().test(b)) continue;
          const Square sq = p.square(b);
          const bool ok = method == Method::ShadingLemma ? shading_lemma_square(p, sq).success : lemma_tsa1(p, sq).success;
          if (ok) added += add_both(g, i, node_of(g, p.with_shaded(sq)), origin);
        }
      }
      break;
    case Method::SimultaneousShading:
      for (int i = 0; i < g.size(); ++i) {
        const MeshPattern& p = nodes[static_cast<std::size_t>(i)];
        for (const Shading& s : ssl_unions(p))
          added += add_both(g, i, node_of(g, p.with_shading(p.shading() | s)), origin);
      }
      break;
    case Method::Tsa2: {
      const std::vector<Force> forces = enumerate_forces(k, max_force_size);
      for (int i = 0; i < g.size(); ++i) {
        const MeshPattern& p = nodes[static_cast<std::size_t>(i)];
        for (const Force& f : forces) {
          const Shading s = tsa2_closure(p, f);
          if (!s.none()) added += add_both(g, i, node_of(g, p.with_shading(p.shading() | s)), origin);
        }
      }
      break;
    }
    case Method::Tsa3:
    case Method::ShadingAlgorithm:
      for (int i = 0; i < g.size() && !g.resolved(); ++i) {
        for (int j = 0; j < g.size() && !g.resolved(); ++j) {
          if (i == j || g.reaches(i, j)) continue;
          const MeshPattern& p = nodes[static_cast<std::size_t>(i)];
          const MeshPattern& q = nodes[static_cast<std::size_t>(j)];
          KnownImplication known = use_known ? known_for(g, j) : KnownImplication{};
          bool ok;
          if (method == Method::Tsa3) {
            ok = prove_tsa3(p, q, std::nullopt, max_force_size, known).success;
          } else {
            ShadingAlgorithmOptions opts;
            opts.with_trace = false;
            opts.known = std::move(known);
            ok = search_forces(p, q, depth, max_force_size, opts).success;
          }
          if (ok) added += static_cast<int>(g.add_edge(i, j, origin));
        }
      }
      break;
  }
  return added;
}

namespace {

StageCount count_stage(const std::string& name, const std::vector<CoincidenceGraph>& graphs) {
  StageCount c{name, 0, 0};
  for (const auto& g : graphs) (g.resolved() ? c.resolved : c.unresolved)++;
  return c;
}

std::string stage_name(Method m, int depth) {
  return m == Method::ShadingAlgorithm ? "sa-d" + std::to_string(depth) : method_name(m);
}

}  // namespace

PipelineResult run_pipeline(ExperimentalClassification classification, const PipelineOptions& opts) {
  PipelineResult out;
  const auto& classes = classification.classes;
  out.graphs.reserve(classes.size());
  for (const auto& c : classes) {
    out.graphs.emplace_back(c.members);
    if (c.size() > 1) add_subset_edges(out.graphs.back());
  }

  ClassificationReport& rep = out.report;
  rep.underlying = classification.underlying;
  rep.maxn = classification.maxn;
  for (const auto& c : classes) rep.num_patterns += c.size();
  rep.stages.push_back(count_stage("experimental", out.graphs));

  std::vector<std::pair<Method, int>> schedule;
  for (Method m : opts.methods) {
    if (m == Method::ShadingAlgorithm) throw std::invalid_argument("the Shading Algorithm runs through `depths`");
    schedule.emplace_back(m, 0);
  }
  for (int d : opts.depths) {
    if (d < 0) throw std::invalid_argument("depth must be non-negative");
    schedule.emplace_back(Method::ShadingAlgorithm, d);
  }

  for (const auto& [method, depth] : schedule) {
    const auto n = static_cast<std::int64_t>(out.graphs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < n; ++c) {
      auto& g = out.graphs[static_cast<std::size_t>(c)];
      if (g.size() > 1) apply_stage(g, method, depth, opts.max_force_size, opts.use_known);
    }
    rep.stages.push_back(count_stage(stage_name(method, depth), out.graphs));
  }

  rep.num_classes = static_cast<int>(classes.size());
  rep.unresolved = rep.stages.back().unresolved;
  for (const auto& c : classes) ++rep.histogram[static_cast<std::size_t>(std::min(c.size(), 8) - 1)];
  for (const auto& g : out.graphs)
    for (const auto& e : g.edges()) ++rep.edges_by_origin[static_cast<std::size_t>(e.origin)];
  out.classification = std::move(classification);
  return out;
}

PipelineResult run_pipeline(const Permutation& underlying, int maxn, const PipelineOptions& opts) {
  return run_pipeline(experimental_classify(underlying, maxn), opts);
}

void write_report(std::ostream& os, const ClassificationReport& r) {
  os << "# underlying\t" << r.underlying.to_string() << "\n# maxn\t" << r.maxn << "\n# patterns\t" << r.num_patterns
     << '\n';
  os << "stage\tunresolved\tresolved\n";
  for (const auto& s : r.stages) os << s.stage << '\t' << s.unresolved << '\t' << s.resolved << '\n';
  os << "\nclasses\t" << r.num_classes << "\nunresolved\t" << r.unresolved << '\n';
  os << "\nsize\tclasses\n";
  for (std::size_t i = 0; i < r.histogram.size(); ++i)
    os << (i + 1 == r.histogram.size() ? ">=8" : std::to_string(i + 1)) << '\t' << r.histogram[i] << '\n';
  os << "\norigin\tedges\n";
  for (std::size_t i = 0; i < r.edges_by_origin.size(); ++i)
    os << origin_name(static_cast<EdgeOrigin>(i)) << '\t' << r.edges_by_origin[i] << '\n';
}

// --- Persistence ------------------------------------------------------------

void save_results(std::ostream& os, const std::vector<std::vector<MeshPattern>>& classes) {
  for (const auto& c : classes) {
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << mesh_int_string(c[i].shading());
    os << '\n';
  }
}

std::vector<std::vector<MeshPattern>> load_results(std::istream& is, const Permutation& underlying) {
  const int grid = underlying.size() + 1;
  std::vector<std::vector<MeshPattern>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    std::vector<MeshPattern> cls;
    while (ls >> tok) {
      Shading s;
      try {
        s = parse_mesh_int(tok);
      } catch (const std::exception& e) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
      }
      if (s.highest_bit() >= grid * grid) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bit " + std::to_string(s.highest_bit()) +
                                    " outside the " + std::to_string(grid) + "x" + std::to_string(grid) + " grid");
      }
      cls.emplace_back(underlying, s);
    }
    if (!cls.empty()) out.push_back(std::move(cls));
  }
  return out;
}

void save_witnesses(std::ostream& os, const std::vector<SplitWitness>& w) {
  for (const auto& x : w) os << format_pattern(x.a) << '\t' << format_pattern(x.b) << '\t' << x.perm.to_string() << '\n';
}

}  // namespace meshpatt
