#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcode/graph.hpp"
#include "gcode/pattern.hpp"

namespace gcode {

// A host graph H whose 2^{e(H)} subgraphs pairwise-XOR into subgraphs of H.
// When the report's predicate fails on H itself (all our predicates are
// monotone), it fails on every subgraph, so the subgraph family witnesses
//   D_F(n) >= 2^{e(H)}   and hence   log2 M_F(n) <= C(n,2) - e(H).
struct BlockerReport {
  LabeledGraph host;
  std::string predicate;
  std::size_t edge_count = 0;
  std::size_t dual_log_bound = 0;                 // C(n,2) - e(H)
  std::map<std::string, std::uint64_t> witness_checks;
  bool predicate_blocked = true;  // false flags an inconsistent host (predicate holds on H)
};

// Plain dual-bound arithmetic for a host already known (or checked by the
// caller) to block the predicate; `blocked` records the verifier's verdict.
BlockerReport dual_bound(const LabeledGraph& host, const std::string& predicate,
                         bool blocked,
                         std::map<std::string, std::uint64_t> witness_checks = {});

// Exact Turan number ex(n, L) by branch and bound over edge slots, n <= 10.
// Returns the extremal edge count; `witness` receives an extremal L-free
// graph when non-null. Complete patterns take the Turan-graph shortcut.
std::size_t turan_ex_bruteforce(int n, const PatternGraph& pattern,
                                LabeledGraph* witness = nullptr,
                                std::uint64_t budget = 400'000'000);

// The balanced complete multipartite Turan graph T(n, parts).
LabeledGraph turan_graph(int n, int parts);

// Extremal L-free graph start, then greedy edge additions in slot order,
// rejecting any addition that would reach k copies of L. Verified endpoint:
// count_copies(H, L) < k.
BlockerReport build_kcopy_blocker(int n, const PatternGraph& pattern, std::uint64_t k);

// Clique on k-1 vertices, joined completely to an extremal L-free graph on
// the remaining n-k+1 vertices. Every copy of L meets the clique side, so
// at most k-1 vertex-disjoint copies fit; the verifier reports the actual
// maximum rather than assuming it.
BlockerReport build_kdisjoint_blocker(int n, const PatternGraph& pattern, int k);

struct KttFreeResult {
  BlockerReport report;
  int retry_used = 0;
  std::uint64_t copies_deleted = 0;
  std::uint64_t copies_observed = 0;  // K_{t,t} count in the raw sample
  double expected_copies = 0.0;       // (1/2) C(n,2t) C(2t,t) delta^{t^2}
  double delta_pow_t = 0.0;           // delta^t; equals n^{-2} when delta = 2^{-2/c}, t = c log2 n
  std::size_t sampled_edges = 0;
};

// Deletion method: sample G(n, delta), delete one edge per K_{t,t} copy
// (copies in lexicographic vertex-set order, least surviving edge first),
// accept when the result is verified K_{t,t}-free with at least
// delta*C(n,2) - X_observed edges. Retries derive seeds as seed+index.
std::optional<KttFreeResult> random_ktt_free(int n, int t, double delta,
                                             std::uint64_t seed, int retries);

// Parameters of the dependent-random-choice sampling step.
struct DrcParams {
  double alpha = 0.0;  // density parameter in (0,1)
  int t = 0;           // number of sampled vertices
  int r = 0;           // max left degree of the pattern
  int m = 0;           // pattern order
  int u = 0;           // required candidate-set size
  double epsilon = 0.0;  // only used when deriving alpha = n^{-eps^2/2r}
};

// A connected bipartite pattern (A u B) where every A-vertex has at most r
// neighbors in B.
struct BipartitePattern {
  LabeledGraph graph;
  std::vector<int> side_a;
  std::vector<int> side_b;
  int max_left_degree = 0;
};

// A path on m vertices, split by parity; left degrees are at most 2.
BipartitePattern path_pattern(int m);

struct DrcEmbedding {
  std::vector<int> image;  // pattern vertex -> host vertex
  int retry_used = 0;
  int candidate_size = 0;  // |U| after pruning on the successful retry
};

// Dependent random choice embedding: sample t vertices, take their common
// neighborhood U, prune r-subsets with fewer than m common neighbors, then
// inject B into U and extend greedily over A through common neighborhoods.
// The returned embedding is verified edge by edge. Nullopt when all retries
// fail.
std::optional<DrcEmbedding> drc_embed(const LabeledGraph& g, const BipartitePattern& pattern,
                                      const DrcParams& params, std::uint64_t seed,
                                      int retries);

// Seeded binomial random graph G(n, p).
LabeledGraph random_graph(int n, double p, std::uint64_t seed);

}  // namespace gcode
