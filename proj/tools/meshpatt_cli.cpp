#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "meshpatt/classify.hpp"
#include "meshpatt/enumerate.hpp"
#include "meshpatt/prover.hpp"
#include "meshpatt/text_format.hpp"

using namespace meshpatt;

namespace {

// Exit codes: 0 ok (or Success), 1 a Failure verdict, 2 an error.
constexpr int kFailureVerdict = 1;
constexpr int kError = 2;

int default_maxn(int k) {
  switch (k) {
    case 1: return 3;
    case 2: return 5;
    default: return 8;
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::optional<Basis> basis_arg(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return Basis(parse_permutation_list(text));
}

Square single_extra_square(const MeshPattern& p, const MeshPattern& q) {
  if (p.pattern() != q.pattern()) throw std::invalid_argument("p and q have different underlying patterns");
  const Shading extra = q.shading() - p.shading();
  if (extra.count() != 1 || !p.shading().is_subset_of(q.shading())) {
    throw std::invalid_argument("this method needs q to be p with exactly one more shaded square");
  }
  return p.square(extra.highest_bit());
}

void write_groups(const std::filesystem::path& path, const std::vector<std::vector<MeshPattern>>& groups) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  save_results(os, groups);
}

int run_classify(const std::string& underlying_text, int maxn, const std::string& depths_text, int max_force,
                 bool no_known, const std::string& out_dir) {
  const Permutation underlying = parse_permutation(underlying_text);
  if (maxn < 0) maxn = default_maxn(underlying.size());
  PipelineOptions opts;
  opts.depths = parse_int_list(depths_text);
  opts.max_force_size = max_force;
  opts.use_known = !no_known;
  const PipelineResult res = run_pipeline(underlying, maxn, opts);
  write_report(std::cout, res.report);

  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    const std::string tag = underlying.to_string();
    std::vector<std::vector<MeshPattern>> experimental, proven;
    for (std::size_t c = 0; c < res.classification.classes.size(); ++c) {
      experimental.push_back(res.classification.classes[c].members);
      const auto& g = res.graphs[c];
      const std::vector<int> comp = g.components();
      // Proven groups: strongly connected parts, ordered by smallest member.
      std::vector<std::vector<MeshPattern>> parts;
      std::map<int, std::size_t> slot;
      for (int v = 0; v < g.size(); ++v) {
        auto [it, fresh] = slot.emplace(comp[static_cast<std::size_t>(v)], parts.size());
        if (fresh) parts.emplace_back();
        parts[it->second].push_back(g.nodes()[static_cast<std::size_t>(v)]);
      }
      proven.insert(proven.end(), parts.begin(), parts.end());
    }
    write_groups(dir / ("experimental_" + tag + ".txt"), experimental);
    write_groups(dir / ("coincidence_" + tag + ".txt"), proven);
    std::ofstream rep(dir / ("report_" + tag + ".tsv"));
    write_report(rep, res.report);
    std::ofstream wit(dir / ("witnesses_" + tag + ".tsv"));
    wit << "pattern_a\tpattern_b\tpermutation\n";
    save_witnesses(wit, res.classification.witnesses);
  }
  return 0;
}

int run_prove(const std::string& p_text, const std::string& q_text, const std::string& force_text, int depth,
              int max_force, const std::string& method_text, const std::string& out_path) {
  const MeshPattern p = parse_pattern(p_text);
  const MeshPattern q = parse_pattern(q_text);
  const auto method = method_from_name(method_text);
  if (!method) throw std::invalid_argument("unknown method '" + method_text + "'");
  std::optional<Force> force;
  if (!force_text.empty()) force = force_text == "-" ? Force{} : parse_force(force_text);

  ProofResult r;
  switch (*method) {
    case Method::ShadingLemma: r = shading_lemma_square(p, single_extra_square(p, q)); break;
    case Method::Tsa1: r = lemma_tsa1(p, single_extra_square(p, q)); break;
    case Method::SimultaneousShading: r = prove_ssl(p, q); break;
    case Method::Tsa2: r = prove_tsa2(p, q, force, max_force); break;
    case Method::Tsa3: r = prove_tsa3(p, q, force, max_force); break;
    case Method::ShadingAlgorithm:
      r = force ? shading_algorithm(p, q, *force, depth) : search_forces(p, q, depth, max_force);
      break;
  }
  if (out_path.empty()) {
    write_proof(std::cout, r);
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    write_proof(os, r);
    std::cout << "verdict\t" << (r.success ? "success" : "failure") << '\n';
  }
  return r.success ? 0 : kFailureVerdict;
}

int run_replay(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  const ProofResult r = read_proof(is);
  const ReplayReport rep = replay(r);
  std::cout << "replay\t" << (rep.ok ? "ok" : "rejected") << '\t' << rep.message << '\n';
  return rep.ok ? 0 : kFailureVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("MESHPATT_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) omp_set_num_threads(t);
  }

  CLI::App app{"Mesh pattern coincidence and enumeration toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (overrides MESHPATT_THREADS)");

  // classify
  auto* cls = app.add_subcommand("classify", "Experimental classification followed by the proof pipeline");
  std::string underlying, depths = "1,2", out_dir;
  int maxn = -1, cls_force = -1;
  bool no_known = false;
  cls->add_option("--underlying", underlying, "Underlying classical pattern")->required();
  cls->add_option("--maxn", maxn, "Largest permutation size for fingerprints (default 3/5/8 by size)");
  cls->add_option("--depths", depths, "Shading Algorithm depths, comma separated");
  cls->add_option("--max-force", cls_force, "Largest force tried (default: pattern size)");
  cls->add_flag("--no-known", no_known, "Do not reuse proven implications inside tsa3/SA");
  cls->add_option("--out", out_dir, "Directory for class files, report and witnesses");

  // prove
  auto* prove = app.add_subcommand("prove", "Try to prove that containing p implies containing q");
  std::string p_text, q_text, force_text, method = "sa", replay_path, proof_out;
  int depth = 2, prove_force = 1;
  prove->add_option("--p", p_text, "Premise pattern <word>:<mesh-int>");
  prove->add_option("--q", q_text, "Conclusion pattern");
  prove->add_option("--force", force_text, "Force such as 1:R or 2:U,3:D ('-' for empty); searched when absent");
  prove->add_option("--depth", depth, "Shading Algorithm depth");
  prove->add_option("--max-force", prove_force, "Largest force tried when searching");
  prove->add_option("--method", method, "sl | ssl | tsa1 | tsa2 | tsa3 | sa");
  prove->add_option("--out", proof_out, "Write the proof here instead of stdout");
  prove->add_option("--replay", replay_path, "Replay a stored proof instead of proving");

  // count-av
  auto* cav = app.add_subcommand("count-av", "Count permutations avoiding a basis");
  std::string basis_text;
  std::vector<std::string> mesh_basis;
  int cav_maxn = 8;
  cav->add_option("--basis", basis_text, "Classical basis, comma separated");
  cav->add_option("--mesh", mesh_basis, "Additional mesh basis element (repeatable)");
  cav->add_option("--maxn", cav_maxn, "Largest size counted");

  // binary
  auto* bin = app.add_subcommand("binary", "Check that a (forced) pattern occurs at most once");
  std::string pattern_text, bin_force, bin_basis;
  int bound = -1;
  bin->add_option("--pattern", pattern_text, "Pattern")->required();
  bin->add_option("--force", bin_force, "Force");
  bin->add_option("--basis", bin_basis, "Restrict to Av(basis)");
  bin->add_option("--bound", bound, "Largest host size (default 2|p|)");

  // anchored
  auto* anc = app.add_subcommand("anchored", "Check whether a mesh pattern is anchored");
  std::string anc_pattern;
  anc->add_option("--pattern", anc_pattern, "Pattern")->required();

  // find-force
  auto* ff = app.add_subcommand("find-force", "Greedy search for a force making a pattern binary");
  std::string ff_pattern, ff_basis;
  ff->add_option("--pattern", ff_pattern, "Pattern")->required();
  ff->add_option("--basis", ff_basis, "Restrict to Av(basis)");

  // occ
  auto* occ = app.add_subcommand("occ", "List the occurrences of a (forced) pattern in a permutation");
  std::string occ_pattern, occ_force, host_text;
  occ->add_option("--pattern", occ_pattern, "Pattern")->required();
  occ->add_option("--force", occ_force, "Force");
  occ->add_option("--host", host_text, "Host permutation")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*cls) return run_classify(underlying, maxn, depths, cls_force, no_known, out_dir);
    if (*prove) {
      if (!replay_path.empty()) return run_replay(replay_path);
      if (p_text.empty() || q_text.empty()) throw std::invalid_argument("prove needs --p and --q (or --replay)");
      return run_prove(p_text, q_text, force_text, depth, prove_force, method, proof_out);
    }
    if (*cav) {
      std::vector<MeshPattern> basis;
      if (!basis_text.empty()) {
        const Basis classical(parse_permutation_list(basis_text));
        for (const auto& b : classical.patterns()) basis.emplace_back(b);
      }
      for (const auto& m : mesh_basis) basis.push_back(parse_pattern(m));
      const SequencePrefix s = count_av(basis, cav_maxn);
      std::cout << "n\tcount\n";
      for (std::size_t n = 0; n < s.size(); ++n) std::cout << n << '\t' << s[n] << '\n';
      return 0;
    }
    if (*bin) {
      ForcedPattern fp{parse_pattern(pattern_text), bin_force.empty() ? Force{} : parse_force(bin_force)};
      const BinaryVerdict v = is_binary(fp, basis_arg(bin_basis), bound);
      std::cout << "binary\t" << (v.binary ? "yes" : "no") << "\tbound\t" << v.bound;
      if (v.witness) std::cout << "\twitness\t" << v.witness->to_string() << "\toccurrences\t" << occ_count(fp, *v.witness);
      std::cout << '\n';
      return 0;
    }
    if (*anc) {
      const AnchorReport r = is_anchored(parse_pattern(anc_pattern));
      std::cout << "anchored\t" << (r.anchored ? "yes" : "no") << "\tchain\t";
      for (std::size_t i = 0; i < r.chain_values.size(); ++i) std::cout << (i ? "," : "") << r.chain_values[i];
      std::cout << '\n';
      return 0;
    }
    if (*ff) {
      const MeshPattern p = parse_pattern(ff_pattern);
      const auto basis = basis_arg(ff_basis);
      const Force f = find_binary_force(p, basis);
      std::cout << "force\t" << (f.empty() ? "-" : format_force(f)) << "\tsize\t" << f.size() << '\n';
      return 0;
    }
    if (*occ) {
      ForcedPattern fp{parse_pattern(occ_pattern), occ_force.empty() ? Force{} : parse_force(occ_force)};
      const Permutation host = parse_permutation(host_text);
      const auto occs = strongest_occurrences(host, fp);
      std::cout << "count\t" << occs.size() << '\n';
      for (const auto& o : occs) std::cout << to_string(o) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
