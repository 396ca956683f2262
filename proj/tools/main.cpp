// Command-line front door: every pipeline as a reproducible batch command.
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 resource exhaustion / nothing found.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcode/binary_code.hpp"
#include "gcode/blockers.hpp"
#include "gcode/factorization.hpp"
#include "gcode/graph.hpp"
#include "gcode/grid.hpp"
#include "gcode/io.hpp"
#include "gcode/oracle.hpp"
#include "gcode/pattern.hpp"
#include "gcode/rng.hpp"
#include "gcode/tree_code.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct RunContext {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::uint64_t budget_ms = 0;  // 0 = module defaults
  bool json_to_stdout = false;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
  gcode::RunManifest manifest;

  std::string artifact_path(const std::string& name) const {
    return (std::filesystem::path(out_dir) / name).string();
  }

  void note_artifact(const std::string& path) { manifest.artifacts.push_back(path); }

  void param(const std::string& key, const std::string& value) {
    manifest.parameters.emplace_back(key, value);
  }

  // Search budgets derive from --budget-ms at fixed per-ms rates so runs
  // stay reproducible across machines (a wall clock would not be).
  std::uint64_t node_budget(std::uint64_t fallback, std::uint64_t rate_per_ms) const {
    return budget_ms == 0 ? fallback : budget_ms * rate_per_ms;
  }

  void finish(const std::string& command, std::uint64_t passed, std::uint64_t failed) {
    manifest.command = command;
    manifest.seed = seed;
    manifest.checks_passed = passed;
    manifest.checks_failed = failed;
    manifest.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started)
            .count());
    std::filesystem::create_directories(out_dir);
    gcode::save_manifest(artifact_path(command + ".manifest.json"), manifest);
    if (json_to_stdout) std::cout << gcode::manifest_to_json(manifest) << "\n";
  }
};

std::string default_out_dir() {
  if (const char* env = std::getenv("GRAPHCODE_OUT")) return env;
  return ".";
}

int run_p1f(RunContext& ctx, int p, int search_m, std::uint64_t budget) {
  using namespace gcode;
  OneFactorization f;
  std::string label;
  if (p > 0) {
    f = kotzig_p1f(p);
    label = "kotzig_p" + std::to_string(p);
  } else {
    auto found = search_p1f(search_m, budget);
    if (!found) {
      std::cerr << "p1f: no perfect 1-factorization found within budget\n";
      return kExitResource;
    }
    f = std::move(*found);
    label = "search_m" + std::to_string(search_m);
  }
  const P1fCheck check = verify_perfect(f);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("p1f_" + label + ".json");
  save_factorization(path, f);
  ctx.note_artifact(path);
  std::cout << "p1f: order " << f.order << ", " << f.factors.size()
            << " factors, verified=" << (check.ok ? "yes" : "no") << "\n";
  ctx.finish("p1f", check.ok ? 1 : 0, check.ok ? 0 : 1);
  return check.ok ? kExitOk : kExitVerificationFailure;
}

int run_treecode(RunContext& ctx, int n, int leaves, const std::string& coloring,
                 const std::string& variant, bool roster) {
  using namespace gcode;
  if (n % 2 == 0) throw UsageError("treecode: n must be odd (it is the Kotzig prime)");
  const OneFactorization f = kotzig_p1f(n);

  TreeCodeParams params;
  TreeCodeGenSpec spec;
  if (variant == "hamming") {
    int k = 0;
    while ((1 << k) - 1 < n) ++k;
    if ((1 << k) - 1 != n)
      throw UsageError("treecode: hamming variant needs n = 2^k - 1");
    params = build_hamming_treecode(k, leaves, f);
    spec = TreeCodeGenSpec{"hamming", n, leaves, n, "", "", ctx.seed};
  } else if (variant == "gv-partition") {
    const PartColoring part_coloring =
        coloring == "greedy" ? PartColoring::greedy : PartColoring::syndrome;
    params = build_treecode(n, leaves, f, part_coloring, ScanOrder::lexicographic, ctx.seed);
    spec = TreeCodeGenSpec{"gv-partition", n, leaves, n, coloring, "", ctx.seed};
  } else {
    throw UsageError("treecode: variant must be gv-partition or hamming");
  }

  std::filesystem::create_directories(ctx.out_dir);
  if (params.leaves >= 3 && params.variant == TreeCodeVariant::gv_partition) {
    spec.h_code_file = "treecode_hcode.json";  // stored relative to the generator file
    save_code(ctx.artifact_path(spec.h_code_file), params.h_code);
    ctx.note_artifact(ctx.artifact_path(spec.h_code_file));
  }
  const std::string gen_path = ctx.artifact_path("treecode_gen.json");
  save_treecode_gen(gen_path, spec);
  ctx.note_artifact(gen_path);

  std::cout << "treecode: variant=" << spec.variant << " n=" << n << " leaves=" << leaves
            << " family_size=2^" << params.index_bits() << "\n";
  if (params.variant == TreeCodeVariant::gv_partition && params.leaves >= 3)
    std::cout << "treecode: parts=" << params.part_ids.size()
              << " h_code_words=" << params.h_code.words.size() << "\n";

  if (roster) {
    if (params.index_bits() > 16)
      throw UsageError("treecode: roster export requires family size <= 2^16");
    std::ostringstream lines;
    for (std::uint64_t i = 0; i < params.family_size(); ++i)
      lines << graph_to_line(member(params, i)) << "\n";
    const std::string roster_path = ctx.artifact_path("treecode_roster.txt");
    write_text_file(roster_path, lines.str());
    ctx.note_artifact(roster_path);
  }
  ctx.finish("treecode", 1, 0);
  return kExitOk;
}

int run_verify_treecode(RunContext& ctx, const std::string& gen_file, std::uint64_t samples) {
  using namespace gcode;
  const TreeCodeGenSpec spec = load_treecode_gen(gen_file);
  const TreeCodeParams params = realize_treecode(spec);
  Rng rng = Rng::stream(ctx.seed, 0x7665u /* "ve" */);
  std::uint64_t passed = 0, failed = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t i = rng.below(params.family_size());
    std::uint64_t j = rng.below(params.family_size());
    if (i == j) j = (j + 1) % params.family_size();
    try {
      const PairCertificate cert = verify_pair(params, i, j);
      const PairCheck check = check_certificate(params, i, j, cert);
      if (check.ok) {
        ++passed;
      } else {
        ++failed;
        std::cerr << "certificate failed: " << check.transcript << "\n";
      }
    } catch (const std::exception& e) {
      ++failed;
      std::cerr << "pair (" << i << ", " << j << "): " << e.what() << "\n";
    }
  }
  std::cout << "verify-treecode: " << passed << "/" << samples << " certificates ok\n";
  ctx.finish("verify-treecode", passed, failed);
  return failed == 0 ? kExitOk : kExitVerificationFailure;
}

int run_blocker_kcopy(RunContext& ctx, int n, const std::string& pattern_name,
                      std::uint64_t k) {
  using namespace gcode;
  const BlockerReport report = build_kcopy_blocker(n, pattern_by_name(pattern_name), k);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("blocker_kcopy.json");
  save_blocker_report(path, report);
  ctx.note_artifact(path);
  std::cout << "blocker kcopy: e(H)=" << report.edge_count
            << " dual_log_bound=" << report.dual_log_bound
            << " blocked=" << (report.predicate_blocked ? "yes" : "no") << "\n";
  ctx.finish("blocker-kcopy", report.predicate_blocked ? 1 : 0,
             report.predicate_blocked ? 0 : 1);
  return report.predicate_blocked ? kExitOk : kExitVerificationFailure;
}

int run_blocker_kdisjoint(RunContext& ctx, int n, const std::string& pattern_name, int k) {
  using namespace gcode;
  const BlockerReport report = build_kdisjoint_blocker(n, pattern_by_name(pattern_name), k);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("blocker_kdisjoint.json");
  save_blocker_report(path, report);
  ctx.note_artifact(path);
  std::cout << "blocker kdisjoint: e(H)=" << report.edge_count
            << " dual_log_bound=" << report.dual_log_bound << " max_disjoint="
            << report.witness_checks.at("max_disjoint_in_host")
            << " blocked=" << (report.predicate_blocked ? "yes" : "no") << "\n";
  ctx.finish("blocker-kdisjoint", report.predicate_blocked ? 1 : 0,
             report.predicate_blocked ? 0 : 1);
  return report.predicate_blocked ? kExitOk : kExitVerificationFailure;
}

int run_blocker_ktt(RunContext& ctx, int n, int t, double delta, int retries) {
  using namespace gcode;
  const auto result = random_ktt_free(n, t, delta, ctx.seed, retries);
  if (!result) {
    std::cerr << "blocker ktt: no acceptable graph within " << retries << " retries\n";
    ctx.finish("blocker-ktt", 0, 1);
    return kExitResource;
  }
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("blocker_ktt.json");
  save_blocker_report(path, result->report);
  ctx.note_artifact(path);
  std::cout.precision(12);
  std::cout << "blocker ktt: e(H)=" << result->report.edge_count << " retry="
            << result->retry_used << " copies_observed=" << result->copies_observed
            << " expected_copies=" << result->expected_copies
            << " delta^t=" << result->delta_pow_t << "\n";
  ctx.finish("blocker-ktt", 1, 0);
  return kExitOk;
}

int run_blocker_drc(RunContext& ctx, int n, double density, int m, int r, double alpha,
                    int t, int retries) {
  using namespace gcode;
  const LabeledGraph g = random_graph(n, density, ctx.seed);
  const BipartitePattern pattern = path_pattern(m);
  DrcParams params{alpha, t, r, m, m, 0.0};
  const auto found = drc_embed(g, pattern, params, ctx.seed, retries);
  if (!found) {
    std::cerr << "blocker drc: no embedding found within " << retries << " retries\n";
    ctx.finish("blocker-drc", 0, 1);
    return kExitResource;
  }
  std::ostringstream image;
  for (std::size_t v = 0; v < found->image.size(); ++v) {
    if (v) image << " ";
    image << found->image[v];
  }
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("drc_embedding.txt");
  write_text_file(path, image.str() + "\n");
  ctx.note_artifact(path);
  std::cout << "blocker drc: embedded " << m << " pattern vertices (retry "
            << found->retry_used << ", |U|=" << found->candidate_size << ")\n";
  ctx.finish("blocker-drc", 1, 0);
  return kExitOk;
}

int run_blocker_dual(RunContext& ctx, const std::string& graph_line,
                     const std::string& predicate_text) {
  using namespace gcode;
  const LabeledGraph host = graph_from_line(graph_line);
  const PredicateSpec predicate = parse_predicate(predicate_text);
  const bool holds_on_host = predicate.evaluate(host);
  // Monotone predicates: blocked for all subgraph pairs iff it fails on H.
  const BlockerReport report = dual_bound(host, predicate_text, !holds_on_host);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("blocker_dual.json");
  save_blocker_report(path, report);
  ctx.note_artifact(path);
  std::cout << "blocker dual: e(H)=" << report.edge_count
            << " dual_log_bound=" << report.dual_log_bound
            << " blocked=" << (report.predicate_blocked ? "yes" : "no") << "\n";
  ctx.finish("blocker-dual", 1, 0);
  return kExitOk;
}

int run_oracle(RunContext& ctx, int n, const std::string& predicate_text, bool with_dual,
               bool with_bad_count) {
  using namespace gcode;
  const PredicateSpec predicate = parse_predicate(predicate_text);
  OracleResult result = exact_MF(n, predicate);
  if (with_dual) result.d_exact = exact_DF(n, predicate);
  if (with_bad_count) result.bad_count = count_bad_graphs(n, predicate);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("oracle.json");
  save_oracle_result(path, result);
  ctx.note_artifact(path);
  std::cout << "oracle: n=" << n << " predicate=" << result.predicate
            << " M=" << result.m_exact;
  if (result.d_exact) std::cout << " D=" << *result.d_exact;
  if (result.bad_count) std::cout << " bad=" << *result.bad_count;
  std::cout << "\n";
  ctx.finish("oracle", 1, 0);
  return kExitOk;
}

int run_grid_build(RunContext& ctx, int m, int n) {
  using namespace gcode;
  const LabeledGraph host = grid_graph(m, n);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("grid_host.txt");
  write_text_file(path, graph_to_line(host) + "\n");
  ctx.note_artifact(path);
  std::cout << "grid build: " << m << "x" << n << " torus, " << host.vertex_count()
            << " vertices, " << host.edge_count() << " edges\n";
  ctx.finish("grid-build", 1, 0);
  return kExitOk;
}

int run_grid_search(RunContext& ctx, int m, int n, int dim, std::uint64_t budget) {
  using namespace gcode;
  if (dim > 4) {
    std::cerr << "grid search: dim " << dim
              << " exceeds the neighborhood bound (families are capped at 2^4 = 16 members)\n";
    ctx.finish("grid-search", 0, 1);
    return kExitResource;
  }
  const auto family = search_grid_family(GridSpec{m, n}, dim, ctx.seed, budget);
  if (!family) {
    std::cerr << "grid search: budget exhausted without a dim-" << dim << " family\n";
    ctx.finish("grid-search", 0, 1);
    return kExitResource;
  }
  const GridCheck check = verify_grid_family(*family);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("grid_family.json");
  save_grid_family(path, *family);
  ctx.note_artifact(path);
  std::cout << "grid search: found " << family->members.size() << " members; "
            << check.transcript << "\n";
  ctx.finish("grid-search", check.ok ? 1 : 0, check.ok ? 0 : 1);
  return check.ok ? kExitOk : kExitVerificationFailure;
}

int run_grid_verify(RunContext& ctx, const std::string& file) {
  using namespace gcode;
  const GridFamily family = load_grid_family(file);
  const GridCheck pairwise = verify_grid_family(family);
  const GridCheck bound = neighborhood_bound_check(family);
  std::cout << "grid verify: pairwise=" << (pairwise.ok ? "ok" : "FAIL")
            << " neighborhood=" << (bound.ok ? "ok" : "FAIL") << "\n";
  if (!pairwise.ok) std::cout << "  " << pairwise.transcript << "\n";
  if (!bound.ok) std::cout << "  " << bound.transcript << "\n";
  const bool ok = pairwise.ok && bound.ok;
  ctx.finish("grid-verify", ok ? 1 : 0, ok ? 0 : 1);
  return ok ? kExitOk : kExitVerificationFailure;
}

int run_codes_gv(RunContext& ctx, int m, int d, const std::string& order,
                 std::uint64_t target) {
  using namespace gcode;
  const ScanOrder scan =
      order == "random" ? ScanOrder::seeded_permutation : ScanOrder::lexicographic;
  const GvResult result =
      gv_greedy(m, d, scan,
                target == 0 ? std::nullopt : std::optional<std::uint64_t>(target), ctx.seed);
  const int verified = verify_min_distance(result.code);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("code_gv.json");
  save_code(path, result.code);
  ctx.note_artifact(path);
  std::cout << "codes gv: m=" << m << " d=" << d << " words=" << result.code.words.size()
            << " verified_distance=" << verified << " gv_floor=" << result.gv_guarantee
            << (result.shortfall ? " SHORTFALL" : "") << "\n";
  ctx.finish("codes-gv", verified >= d ? 1 : 0, verified >= d ? 0 : 1);
  if (result.shortfall) return kExitResource;
  return verified >= d ? kExitOk : kExitVerificationFailure;
}

int run_codes_hamming(RunContext& ctx, int k) {
  using namespace gcode;
  const BinaryCode code = hamming_code(k);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("code_hamming.json");
  save_code(path, code);
  ctx.note_artifact(path);
  std::cout << "codes hamming: k=" << k << " length=" << code.length << " words=2^"
            << code.linear->basis.size() << " distance=3\n";
  ctx.finish("codes-hamming", 1, 0);
  return kExitOk;
}

int run_codes_even_d4(RunContext& ctx, int m) {
  using namespace gcode;
  const BinaryCode code = even_d4_linear(m);
  std::filesystem::create_directories(ctx.out_dir);
  const std::string path = ctx.artifact_path("code_even_d4.json");
  save_code(path, code);
  ctx.note_artifact(path);
  std::cout << "codes even-d4: m=" << m << " dimension=" << code.linear->basis.size()
            << " syndromes<=2^" << code.linear->parity_checks.size() << "\n";
  ctx.finish("codes-even-d4", 1, 0);
  return kExitOk;
}

int run_codes_verify(RunContext& ctx, const std::string& file) {
  using namespace gcode;
  const BinaryCode code = load_code(file);
  const int d = verify_min_distance(code);
  std::cout << "codes verify: length=" << code.length << " claim=" << code.distance_claim
            << " actual=" << d << "\n";
  const bool ok = d >= code.distance_claim;
  ctx.finish("codes-verify", ok ? 1 : 0, ok ? 0 : 1);
  return ok ? kExitOk : kExitVerificationFailure;
}

int run_rates(RunContext& ctx, const std::string& pattern_name, const std::string& scenario,
              double c, double measured_log2) {
  using namespace gcode;
  const PatternGraph pattern = pattern_by_name(pattern_name);
  if (pattern.edge_count() == 0)
    throw UsageError("rates: the pattern needs at least one edge");
  const int chi = pattern.chromatic();
  double value = 0.0;
  std::string formula;
  if (scenario == "eq1") {
    value = 1.0 / (chi - 1);
    formula = "1/(chi-1)";
  } else if (scenario == "kcopy") {
    value = 1.0 / (chi - 1) - 2.0 * c / static_cast<double>(pattern.edge_count());
    formula = "1/(chi-1) - 2c/e(L)";
  } else if (scenario == "kdisjoint") {
    value = (1.0 - c) * (1.0 - c) / (chi - 1);
    formula = "(1-c)^2/(chi-1)";
  } else if (scenario == "ktt") {
    if (c <= 0.0) throw UsageError("rates: scenario ktt needs c > 0");
    value = 1.0 - std::pow(2.0, -2.0 / c);
    formula = "1 - 2^(-2/c)";
  } else {
    throw UsageError("rates: scenario must be eq1, kcopy, kdisjoint, or ktt");
  }

  std::filesystem::create_directories(ctx.out_dir);
  nlohmann::json report;
  report["format_version"] = 1;
  report["pattern"] = pattern_name;
  report["chromatic_number"] = chi;
  report["scenario"] = scenario;
  if (scenario != "eq1") report["c"] = c;
  report["formula"] = formula;
  report["asymptotic_rate_limit"] = value;
  if (measured_log2 >= 0.0) report["measured_log2_size"] = measured_log2;
  report["note"] = "the limit value is an n->infinity reference, not a finite-n claim";
  const std::string path = ctx.artifact_path("rates.json");
  write_text_file(path, report.dump(2) + "\n");
  ctx.note_artifact(path);

  std::cout.precision(12);
  std::cout << "rates: pattern=" << pattern_name << " chi=" << chi << " scenario=" << scenario
            << " asymptotic_rate_limit=" << value << "  [" << formula
            << "; an n->infinity reference value, not a finite-n claim]\n";
  ctx.finish("rates", 1, 0);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphcode: families of graphs with structured symmetric differences"};
  app.require_subcommand(1);

  RunContext ctx;
  ctx.out_dir = default_out_dir();
  app.add_option("--seed", ctx.seed, "64-bit seed feeding every random substream");
  app.add_option("--out", ctx.out_dir, "artifact output directory")
      ->envname("GRAPHCODE_OUT");
  app.add_flag("--json", ctx.json_to_stdout, "print the run manifest as JSON on stdout");
  app.add_option("--budget-ms", ctx.budget_ms,
                 "search budget, converted to node counts at a fixed rate "
                 "(deterministic, not wall-clock)");

  // p1f
  auto* p1f = app.add_subcommand("p1f", "perfect 1-factorizations of K_{p+1}");
  int p1f_p = 0, p1f_m = 0;
  std::uint64_t p1f_budget = 50'000'000;
  p1f->add_option("--p", p1f_p, "odd prime: Kotzig construction on Z_p u {inf}");
  p1f->add_option("--search-m", p1f_m, "even order for the backtracking search");
  p1f->add_option("--budget", p1f_budget, "search node budget");
  p1f->add_flag("--verify", "verification always runs; flag kept for scripts");

  // treecode
  auto* treecode = app.add_subcommand("treecode", "family with l-leaf spanning-tree differences");
  int tc_n = 37, tc_leaves = 3;
  std::string tc_coloring = "syndrome", tc_variant = "gv-partition";
  bool tc_roster = false;
  treecode->add_option("--n", tc_n, "vertex count (an odd prime; K_{n+1} is factorized)");
  treecode->add_option("--ell", tc_leaves, "target leaf count");
  treecode->add_option("--coloring", tc_coloring, "part coloring: syndrome | greedy");
  treecode->add_option("--variant", tc_variant, "gv-partition | hamming");
  treecode->add_flag("--roster", tc_roster, "materialize members (family <= 2^16)");

  // verify-treecode
  auto* verify_tc = app.add_subcommand("verify-treecode", "sample pairs and check certificates");
  std::string vt_gen;
  std::uint64_t vt_samples = 500;
  verify_tc->add_option("--gen", vt_gen, "generator file")->required();
  verify_tc->add_option("--samples", vt_samples, "number of sampled pairs");

  // blocker
  auto* blocker = app.add_subcommand("blocker", "dual-bound host constructions");
  blocker->require_subcommand(1);
  auto* kcopy = blocker->add_subcommand("kcopy", "extremal-plus-edges blocker");
  int kc_n = 6;
  std::string kc_pattern = "K3";
  std::uint64_t kc_k = 1;
  kcopy->add_option("--n", kc_n)->required();
  kcopy->add_option("--pattern", kc_pattern)->required();
  kcopy->add_option("--k", kc_k)->required();
  auto* kdisjoint = blocker->add_subcommand("kdisjoint", "clique-join blocker");
  int kd_n = 8, kd_k = 2;
  std::string kd_pattern = "K3";
  kdisjoint->add_option("--n", kd_n)->required();
  kdisjoint->add_option("--pattern", kd_pattern)->required();
  kdisjoint->add_option("--k", kd_k)->required();
  auto* ktt = blocker->add_subcommand("ktt", "random K_{t,t}-free graph by deletion");
  int kt_n = 64, kt_t = 3, kt_retries = 20;
  double kt_delta = 0.125;
  ktt->add_option("--n", kt_n);
  ktt->add_option("--t", kt_t);
  ktt->add_option("--delta", kt_delta);
  ktt->add_option("--retries", kt_retries);
  auto* drc = blocker->add_subcommand("drc", "dependent-random-choice embedding");
  int drc_n = 2000, drc_m = 20, drc_r = 2, drc_t = 2, drc_retries = 10;
  double drc_density = 0.5, drc_alpha = 0.45;
  drc->add_option("--n", drc_n);
  drc->add_option("--density", drc_density);
  drc->add_option("--m", drc_m);
  drc->add_option("--r", drc_r);
  drc->add_option("--t", drc_t);
  drc->add_option("--alpha", drc_alpha);
  drc->add_option("--retries", drc_retries);
  auto* dual = blocker->add_subcommand("dual", "dual bound for a given host graph");
  std::string dual_graph, dual_predicate;
  dual->add_option("--graph", dual_graph, "graph line: n=<n> edges=<hex>")->required();
  dual->add_option("--predicate", dual_predicate)->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact M_F / D_F at tiny n");
  int or_n = 3;
  std::string or_predicate = "connected";
  bool or_dual = false, or_bad = false;
  oracle->add_option("--n", or_n)->required();
  oracle->add_option("--predicate", or_predicate)->required();
  oracle->add_flag("--with-dual", or_dual, "also compute D_F");
  oracle->add_flag("--bad-count", or_bad, "also count predicate-failing graphs");

  // grid
  auto* grid = app.add_subcommand("grid", "torus grid families");
  grid->require_subcommand(1);
  auto* gbuild = grid->add_subcommand("build", "emit the host graph");
  int gb_m = 3, gb_n = 3;
  gbuild->add_option("--m", gb_m);
  gbuild->add_option("--n", gb_n);
  auto* gsearch = grid->add_subcommand("search", "search for a linear family");
  int gs_m = 3, gs_n = 3, gs_dim = 4;
  std::uint64_t gs_budget = 50'000'000;
  gsearch->add_option("--m", gs_m);
  gsearch->add_option("--n", gs_n);
  gsearch->add_option("--dim", gs_dim);
  gsearch->add_option("--budget", gs_budget);
  auto* gverify = grid->add_subcommand("verify", "re-verify a stored family");
  std::string gv_file;
  gverify->add_option("--file", gv_file)->required();

  // codes
  auto* codes = app.add_subcommand("codes", "binary scaffolding codes");
  codes->require_subcommand(1);
  auto* cgv = codes->add_subcommand("gv", "greedy Gilbert-Varshamov code");
  int cgv_m = 18, cgv_d = 4;
  std::string cgv_order = "lex";
  std::uint64_t cgv_target = 0;
  cgv->add_option("--m", cgv_m)->required();
  cgv->add_option("--d", cgv_d)->required();
  cgv->add_option("--order", cgv_order, "lex | random");
  cgv->add_option("--target", cgv_target, "stop after this many words (0 = full scan)");
  auto* chamming = codes->add_subcommand("hamming", "Hamming code of length 2^k-1");
  int ch_k = 3;
  chamming->add_option("--k", ch_k)->required();
  auto* ceven = codes->add_subcommand("even-d4", "even-weight distance-4 linear code");
  int ce_m = 8;
  ceven->add_option("--m", ce_m)->required();
  auto* cverify = codes->add_subcommand("verify", "re-verify a stored code's distance");
  std::string cv_file;
  cverify->add_option("--file", cv_file)->required();

  // rates
  auto* rates = app.add_subcommand("rates", "asymptotic rate reference formulas");
  std::string rt_pattern = "K3", rt_scenario = "eq1";
  double rt_c = 0.0;
  rates->add_option("--pattern", rt_pattern)->required();
  rates->add_option("--scenario", rt_scenario)->required();
  rates->add_option("--c", rt_c, "constant for the kcopy/kdisjoint/ktt scenarios");
  double rt_measured = -1.0;
  rates->add_option("--measured-log2", rt_measured,
                    "optional finite-n measured log2 family size to record alongside");

  CLI11_PARSE(app, argc, argv);

  {
    std::ostringstream argv_line;
    for (int i = 1; i < argc; ++i) argv_line << (i > 1 ? " " : "") << argv[i];
    ctx.param("argv", argv_line.str());
  }

  try {
    if (p1f->parsed()) {
      if ((p1f_p > 0) == (p1f_m > 0))
        throw gcode::UsageError("p1f: give exactly one of --p or --search-m");
      const std::uint64_t budget =
          p1f->count("--budget") ? p1f_budget : ctx.node_budget(50'000'000, 100'000);
      return run_p1f(ctx, p1f_p, p1f_m, budget);
    }
    if (treecode->parsed())
      return run_treecode(ctx, tc_n, tc_leaves, tc_coloring, tc_variant, tc_roster);
    if (verify_tc->parsed()) return run_verify_treecode(ctx, vt_gen, vt_samples);
    if (blocker->parsed()) {
      if (kcopy->parsed()) return run_blocker_kcopy(ctx, kc_n, kc_pattern, kc_k);
      if (kdisjoint->parsed()) return run_blocker_kdisjoint(ctx, kd_n, kd_pattern, kd_k);
      if (ktt->parsed()) return run_blocker_ktt(ctx, kt_n, kt_t, kt_delta, kt_retries);
      if (drc->parsed())
        return run_blocker_drc(ctx, drc_n, drc_density, drc_m, drc_r, drc_alpha, drc_t,
                               drc_retries);
      if (dual->parsed()) return run_blocker_dual(ctx, dual_graph, dual_predicate);
    }
    if (oracle->parsed()) return run_oracle(ctx, or_n, or_predicate, or_dual, or_bad);
    if (grid->parsed()) {
      if (gbuild->parsed()) return run_grid_build(ctx, gb_m, gb_n);
      if (gsearch->parsed()) {
        const std::uint64_t budget =
            gsearch->count("--budget") ? gs_budget : ctx.node_budget(50'000'000, 10'000);
        return run_grid_search(ctx, gs_m, gs_n, gs_dim, budget);
      }
      if (gverify->parsed()) return run_grid_verify(ctx, gv_file);
    }
    if (codes->parsed()) {
      if (cgv->parsed()) return run_codes_gv(ctx, cgv_m, cgv_d, cgv_order, cgv_target);
      if (chamming->parsed()) return run_codes_hamming(ctx, ch_k);
      if (ceven->parsed()) return run_codes_even_d4(ctx, ce_m);
      if (cverify->parsed()) return run_codes_verify(ctx, cv_file);
    }
    if (rates->parsed()) return run_rates(ctx, rt_pattern, rt_scenario, rt_c, rt_measured);
  } catch (const gcode::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gcode::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const gcode::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
