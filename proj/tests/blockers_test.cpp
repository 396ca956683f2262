#include <doctest.h>

#include <cmath>
#include <functional>

#include "gcode/blockers.hpp"

using namespace gcode;

namespace {

// Independent oracle: exact ex(n, L) by scanning *all* graphs on n vertices
// (n <= 6) with a plain embedding test.
bool contains_copy(const LabeledGraph& g, const LabeledGraph& pattern) {
  const int k = pattern.vertex_count();
  const int n = g.vertex_count();
  std::vector<int> map(k, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> rec = [&](int depth) {
    if (depth == k) return true;
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int prev = 0; prev < depth && ok; ++prev)
        if (pattern.edge(std::min(prev, depth), std::max(prev, depth)) &&
            !g.edge(std::min(map[prev], v), std::max(map[prev], v)))
          ok = false;
      if (!ok) continue;
      map[depth] = v;
      used[v] = true;
      if (rec(depth + 1)) return true;
      used[v] = false;
      map[depth] = -1;
    }
    return false;
  };
  return rec(0);
}

std::size_t ex_oracle(int n, const LabeledGraph& pattern) {
  const std::size_t slots = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::size_t best = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << slots); ++code) {
    LabeledGraph g(n);
    std::size_t edges = 0;
    for (std::size_t s = 0; s < slots; ++s)
      if ((code >> s) & 1) {
        g.set_slot(s);
        ++edges;
      }
    if (edges > best && !contains_copy(g, pattern)) best = edges;
  }
  return best;
}

}  // namespace

TEST_CASE("turan_ex_bruteforce matches the exhaustive oracle at n <= 5") {
  const PatternGraph k3 = pattern_by_name("K3");
  const PatternGraph p4 = pattern_by_name("P4");
  const PatternGraph c4 = pattern_by_name("C4");
  for (int n = 3; n <= 5; ++n) {
    CHECK(turan_ex_bruteforce(n, k3) == ex_oracle(n, complete_graph(3)));
    CHECK(turan_ex_bruteforce(n, p4) == ex_oracle(n, path_graph(4)));
    CHECK(turan_ex_bruteforce(n, c4) == ex_oracle(n, cycle_graph(4)));
  }
}

TEST_CASE("turan numbers used by the pipeline") {
  const PatternGraph k3 = pattern_by_name("K3");
  CHECK(turan_ex_bruteforce(5, k3) == 6);
  CHECK(turan_ex_bruteforce(6, k3) == 9);
  CHECK(turan_ex_bruteforce(7, k3) == 12);
  CHECK(turan_ex_bruteforce(5, pattern_by_name("K2")) == 0);
  LabeledGraph witness;
  CHECK(turan_ex_bruteforce(6, k3, &witness) == 9);
  CHECK(witness.edge_count() == 9);
  CHECK_FALSE(contains_copy(witness, complete_graph(3)));
}

TEST_CASE("turan witness is pattern-free for a non-complete pattern") {
  LabeledGraph witness;
  const std::size_t ex = turan_ex_bruteforce(6, pattern_by_name("C4"), &witness);
  CHECK(ex == ex_oracle(6, cycle_graph(4)));
  CHECK(witness.edge_count() == ex);
  CHECK_FALSE(contains_copy(witness, cycle_graph(4)));
}

TEST_CASE("dual_bound arithmetic") {
  const BlockerReport empty = dual_bound(LabeledGraph(5), "anything", true);
  CHECK(empty.dual_log_bound == 10);
  const BlockerReport bip = dual_bound(complete_bipartite(3, 3), "contains K3", true);
  CHECK(bip.edge_count == 9);
  CHECK(bip.dual_log_bound == 6);
  const BlockerReport full = dual_bound(complete_graph(5), "x", false);
  CHECK(full.dual_log_bound == 0);
  CHECK_FALSE(full.predicate_blocked);
}

TEST_CASE("dual_log_bound drops by exactly one per added edge") {
  LabeledGraph h(6);
  std::size_t prev = dual_bound(h, "p", true).dual_log_bound;
  for (std::size_t s = 0; s < 6; ++s) {
    h.set_slot(s);
    const std::size_t cur = dual_bound(h, "p", true).dual_log_bound;
    CHECK(cur + 1 == prev);
    prev = cur;
  }
}

TEST_CASE("build_kcopy_blocker at k=1 reproduces the extremal graph") {
  const BlockerReport r = build_kcopy_blocker(6, pattern_by_name("K3"), 1);
  CHECK(r.edge_count == 9);
  CHECK(r.dual_log_bound == 6);
  CHECK(r.predicate_blocked);
  CHECK(r.witness_checks.at("copies_in_host") == 0);
}

TEST_CASE("build_kcopy_blocker endpoints are verified below k") {
  for (std::uint64_t k : {2, 4, 10}) {
    const BlockerReport r = build_kcopy_blocker(6, pattern_by_name("K3"), k);
    CHECK(r.predicate_blocked);
    CHECK(r.witness_checks.at("copies_in_host") < k);
    // greedy endpoint: no missing edge is addable
    for (std::size_t slot = 0; slot < r.host.slot_count(); ++slot) {
      if (r.host.slot(slot)) continue;
      LabeledGraph grown = r.host;
      grown.set_slot(slot);
      CHECK(count_copies(grown, pattern_by_name("K3")) >= k);
    }
  }
}

TEST_CASE("build_kcopy_blocker with L = K_2 stays empty") {
  const BlockerReport r = build_kcopy_blocker(5, pattern_by_name("K2"), 1);
  CHECK(r.edge_count == 0);  // any edge is already a copy
  CHECK(r.dual_log_bound == 10);
}

TEST_CASE("build_kdisjoint_blocker: the n=8, K3, k=2 worked example") {
  const BlockerReport r = build_kdisjoint_blocker(8, pattern_by_name("K3"), 2);
  CHECK(r.edge_count == 19);  // 0 + 7 + ex(7, K3) = 19
  CHECK(r.predicate_blocked);
  CHECK(r.witness_checks.at("max_disjoint_in_host") == 1);
  CHECK(r.witness_checks.at("packing_exact") == 1);
}

TEST_CASE("build_kdisjoint_blocker: k=1 is the extremal graph itself") {
  const BlockerReport r = build_kdisjoint_blocker(6, pattern_by_name("K3"), 1);
  CHECK(r.edge_count == 9);
  CHECK(r.witness_checks.at("max_disjoint_in_host") == 0);
}

TEST_CASE("build_kdisjoint_blocker: degenerate L = K_2 still verifies") {
  // Every K_2 copy is an edge; all edges meet S because the rest is empty.
  const BlockerReport r = build_kdisjoint_blocker(6, pattern_by_name("K2"), 3);
  CHECK(r.witness_checks.at("max_disjoint_in_host") == 2);
  CHECK(r.predicate_blocked);
  // closed form: C(2,2=k-1 choose 2)=1 + 2*4 + ex(4, K2)=0
  CHECK(r.edge_count == 1 + 8 + 0);
}

TEST_CASE("random_ktt_free at n=16, t=2") {
  const auto result = random_ktt_free(16, 2, 0.25, 7, 50);
  REQUIRE(result.has_value());
  CHECK_FALSE(contains_kst(result->report.host, 2, 2));
  // E[X] = (1/2) C(16,4) C(4,2) (1/4)^4 = 1820*6/(2*256)
  CHECK(result->expected_copies == doctest::Approx(1820.0 * 6 / 512).epsilon(1e-12));
  const double floor = 0.25 * 120 - static_cast<double>(result->copies_observed);
  CHECK(static_cast<double>(result->report.host.edge_count()) >= floor);
}

TEST_CASE("random_ktt_free determinism under a fixed seed") {
  const auto a = random_ktt_free(14, 2, 0.3, 99, 30);
  const auto b = random_ktt_free(14, 2, 0.3, 99, 30);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->report.host == b->report.host);
  CHECK(a->retry_used == b->retry_used);
}

TEST_CASE("delta^t reporting and the n^{-2} identity for delta = 2^{-2/c}, t = c log2 n") {
  const auto result = random_ktt_free(16, 4, 0.25, 3, 5);
  // n = 16, c = 1: t = log2(16) = 4, delta = 2^{-2} -> delta^t = 16^{-2}
  REQUIRE(result.has_value());
  CHECK(result->delta_pow_t == doctest::Approx(1.0 / 256.0).epsilon(1e-12));
}

TEST_CASE("random_ktt_free rejects bad parameters") {
  CHECK_THROWS_AS(random_ktt_free(10, 6, 0.5, 1, 1), UsageError);
  CHECK_THROWS_AS(random_ktt_free(10, 2, 0.0, 1, 1), UsageError);
  CHECK_THROWS_AS(random_ktt_free(10, 2, 1.0, 1, 1), UsageError);
}

TEST_CASE("drc_embed: complete host always embeds") {
  const BipartitePattern pattern = path_pattern(8);
  DrcParams params{0.5, 2, 2, 8, 8, 0.0};
  const LabeledGraph host = complete_graph(300);
  const auto found = drc_embed(host, pattern, params, 3, 5);
  REQUIRE(found.has_value());
  for (auto [u, v] : pattern.graph.edges()) {
    const int a = found->image[u], b = found->image[v];
    CHECK(host.edge(std::min(a, b), std::max(a, b)));
  }
}

TEST_CASE("drc_embed: empty host fails the density precondition") {
  const BipartitePattern pattern = path_pattern(6);
  DrcParams params{0.5, 2, 2, 6, 6, 0.0};
  CHECK_THROWS_AS(drc_embed(LabeledGraph(30), pattern, params, 1, 1), UsageError);
}

TEST_CASE("drc_embed: violated sampling precondition is a usage error") {
  const BipartitePattern pattern = path_pattern(6);
  // alpha^t n tiny against C(n,r)(m/n)^t
  DrcParams params{0.01, 3, 2, 6, 6, 0.0};
  CHECK_THROWS_AS(drc_embed(complete_graph(30), pattern, params, 1, 1), UsageError);
}

TEST_CASE("drc_embed on a random dense graph, deterministic") {
  const LabeledGraph g = random_graph(600, 0.5, 12345);
  const BipartitePattern pattern = path_pattern(12);
  DrcParams params{0.45, 2, 2, 12, 12, 0.0};
  const auto a = drc_embed(g, pattern, params, 5, 10);
  const auto b = drc_embed(g, pattern, params, 5, 10);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->image == b->image);
  AdjacencyView adj(g);
  for (auto [u, v] : pattern.graph.edges()) CHECK(adj.adjacent(a->image[u], a->image[v]));
  // injectivity
  std::vector<int> sorted = a->image;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("random_graph determinism and density sanity") {
  const LabeledGraph a = random_graph(100, 0.5, 77);
  const LabeledGraph b = random_graph(100, 0.5, 77);
  CHECK(a == b);
  const double density = static_cast<double>(a.edge_count()) / a.slot_count();
  CHECK(density > 0.4);
  CHECK(density < 0.6);
}
