#include "gcode/blockers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "gcode/binary_code.hpp"
#include "gcode/rng.hpp"

namespace gcode {

BlockerReport dual_bound(const LabeledGraph& host, const std::string& predicate,
                         bool blocked, std::map<std::string, std::uint64_t> witness_checks) {
  BlockerReport report{host, predicate, host.edge_count(), 0, std::move(witness_checks),
                       blocked};
  report.dual_log_bound = host.slot_count() - report.edge_count;
  return report;
}

LabeledGraph turan_graph(int n, int parts) {
  if (parts < 1 || parts > n) throw UsageError("turan_graph: need 1 <= parts <= n");
  std::vector<int> part_of(n);
  for (int v = 0; v < n; ++v) part_of[v] = v % parts;
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v]) g.set_edge(u, v);
  return g;
}

namespace {

bool is_complete_pattern(const PatternGraph& pattern) {
  const int k = pattern.vertex_count();
  return pattern.edge_count() == static_cast<std::size_t>(k) * (k - 1) / 2;
}

// Does adding `slot` to g create a copy of the pattern through that edge?
// Enumerates embeddings that map some pattern edge onto the new edge.
bool addition_creates_copy(const LabeledGraph& g_with_edge, const PatternGraph& pattern,
                           std::size_t slot) {
  const int n = g_with_edge.vertex_count();
  const auto [eu, ev] = edge_from_index(slot, n);
  const int k = pattern.vertex_count();
  if (k > n) return false;

  AdjacencyView host(g_with_edge);
  std::vector<int> image(k, -1);
  std::vector<bool> used(n, false);

  // Anchor a pattern edge (pa, pb) on (eu, ev), then extend.
  std::function<bool(int)> extend = [&](int depth) -> bool {
    if (depth == k) return true;
    if (image[depth] != -1) return extend(depth + 1);
    for (int hv = 0; hv < n; ++hv) {
      if (used[hv]) continue;
      bool ok = true;
      for (int prev = 0; prev < k && ok; ++prev)
        if (prev != depth && image[prev] != -1 && pattern.graph().edge(prev, depth) &&
            !host.adjacent(image[prev], hv))
          ok = false;
      if (!ok) continue;
      image[depth] = hv;
      used[hv] = true;
      if (extend(depth + 1)) return true;
      used[hv] = false;
      image[depth] = -1;
    }
    return false;
  };

  for (int pa = 0; pa < k; ++pa)
    for (int pb = 0; pb < k; ++pb) {
      if (pa == pb || !pattern.graph().edge(pa, pb)) continue;
      image.assign(k, -1);
      used.assign(n, false);
      image[pa] = eu;
      image[pb] = ev;
      used[eu] = used[ev] = true;
      if (extend(0)) return true;
    }
  return false;
}

struct TuranSearch {
  const PatternGraph& pattern;
  int n;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::size_t best = 0;
  LabeledGraph best_graph;

  void run(LabeledGraph& g, std::size_t slot, std::size_t taken) {
    if (++nodes > budget) throw ResourceError("turan_ex_bruteforce: node budget exceeded");
    const std::size_t slots = g.slot_count();
    if (taken + (slots - slot) <= best) return;  // cannot beat the incumbent
    if (slot == slots) {
      if (taken > best) {
        best = taken;
        best_graph = g;
      }
      return;
    }
    // Branch: include the slot if it stays pattern-free, then exclude it.
    g.set_slot(slot, true);
    if (!addition_creates_copy(g, pattern, slot)) run(g, slot + 1, taken + 1);
    g.set_slot(slot, false);
    run(g, slot + 1, taken);
  }
};

}  // namespace

std::size_t turan_ex_bruteforce(int n, const PatternGraph& pattern, LabeledGraph* witness,
                                std::uint64_t budget) {
  if (n < 1) throw UsageError("turan_ex_bruteforce: need n >= 1");
  if (n > 10) throw UsageError("turan_ex_bruteforce: exhaustive search is limited to n <= 10");
  if (pattern.edge_count() == 0)
    throw UsageError("turan_ex_bruteforce: pattern must have at least one edge");

  if (pattern.vertex_count() > n) {
    // No copy fits: the complete graph is extremal.
    if (witness) *witness = complete_graph(n);
    return static_cast<std::size_t>(n) * (n - 1) / 2;
  }

  if (is_complete_pattern(pattern)) {
    // Turan's theorem: T(n, v(L)-1) is extremal (and unique, which the
    // brute force below would also find; the formula path is just faster).
    LabeledGraph t = turan_graph(n, pattern.vertex_count() - 1);
    if (witness) *witness = t;
    return t.edge_count();
  }

  TuranSearch search{pattern, n, budget, 0, 0, LabeledGraph(n)};
  // Warm start: greedy in slot order gives a lower bound to prune with.
  {
    LabeledGraph g(n);
    std::size_t taken = 0;
    for (std::size_t slot = 0; slot < g.slot_count(); ++slot) {
      g.set_slot(slot, true);
      if (addition_creates_copy(g, pattern, slot))
        g.set_slot(slot, false);
      else
        ++taken;
    }
    search.best = taken > 0 ? taken - 1 : 0;  // strict improvement still finds a witness
    search.best_graph = g;
  }
  LabeledGraph g(n);
  search.run(g, 0, 0);
  if (witness) *witness = search.best_graph;
  return search.best;
}

BlockerReport build_kcopy_blocker(int n, const PatternGraph& pattern, std::uint64_t k) {
  if (k == 0) throw UsageError("build_kcopy_blocker: need k >= 1");
  LabeledGraph host(n);
  if (pattern.vertex_count() <= n) {
    turan_ex_bruteforce(n, pattern, &host);
  } else {
    host = complete_graph(n);
  }

  // Greedy additions in canonical slot order; an addition survives only if
  // the copy count stays below k. One pass reaches the fixpoint: copy counts
  // are monotone in the edge set, so a rejected slot stays rejected.
  for (std::size_t slot = 0; slot < host.slot_count(); ++slot) {
    if (host.slot(slot)) continue;
    host.set_slot(slot, true);
    if (count_copies(host, pattern) >= k) host.set_slot(slot, false);
  }

  const std::uint64_t copies = count_copies(host, pattern);
  std::ostringstream name;
  name << "contains >= " << k << " copies of " << pattern.name();
  BlockerReport report = dual_bound(host, name.str(), copies < k,
                                    {{"copies_in_host", copies}, {"k", k}});
  if (copies >= k)
    throw VerificationError("build_kcopy_blocker: endpoint fails the copy bound");
  return report;
}

BlockerReport build_kdisjoint_blocker(int n, const PatternGraph& pattern, int k) {
  if (k < 1) throw UsageError("build_kdisjoint_blocker: need k >= 1");
  if (k - 1 >= n) throw UsageError("build_kdisjoint_blocker: need k-1 < n");
  const int rest = n - (k - 1);

  LabeledGraph host(n);
  // Clique on the first k-1 vertices, complete join to the rest.
  for (int u = 0; u < k - 1; ++u)
    for (int v = u + 1; v < n; ++v) host.set_edge(u, v);
  // Extremal L-free graph on the remaining vertices.
  std::size_t extremal_edges = 0;
  if (pattern.vertex_count() <= rest) {
    LabeledGraph extremal(rest);
    extremal_edges = turan_ex_bruteforce(rest, pattern, &extremal);
    for (auto [u, v] : extremal.edges()) host.set_edge(k - 1 + u, k - 1 + v);
  } else {
    for (int u = k - 1; u < n; ++u)
      for (int v = u + 1; v < n; ++v) host.set_edge(u, v);
    extremal_edges = static_cast<std::size_t>(rest) * (rest - 1) / 2;
  }

  const std::size_t expected_edges = static_cast<std::size_t>(k - 1) * (k - 2) / 2 +
                                     static_cast<std::size_t>(k - 1) * rest + extremal_edges;
  if (host.edge_count() != expected_edges)
    throw VerificationError("build_kdisjoint_blocker: edge count mismatch with the closed form");

  const DisjointCopies packing = max_disjoint_copies(host, pattern);
  std::ostringstream name;
  name << "contains >= " << k << " vertex-disjoint copies of " << pattern.name();
  BlockerReport report =
      dual_bound(host, name.str(), packing.exact && packing.count <= k - 1,
                 {{"max_disjoint_in_host", static_cast<std::uint64_t>(packing.count)},
                  {"packing_exact", packing.exact ? 1u : 0u},
                  {"k", static_cast<std::uint64_t>(k)}});
  return report;
}

LabeledGraph random_graph(int n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw UsageError("random_graph: p must be in [0, 1]");
  LabeledGraph g(n);
  Rng rng = Rng::stream(seed, 0x6e7062u /* "npb" */);
  for (std::size_t slot = 0; slot < g.slot_count(); ++slot)
    if (rng.chance(p)) g.set_slot(slot, true);
  return g;
}

namespace {

// All K_{t,t} copies of g as vertex sets (sorted 2t-tuples), the two sides
// recorded alongside; lexicographic order of the combined vertex set.
struct KttCopy {
  std::vector<int> vertices;  // sorted union of both sides
  std::vector<int> side_a, side_b;
};

void collect_ktt_copies(const LabeledGraph& g, int t, std::vector<KttCopy>& out,
                        std::uint64_t budget) {
  const int n = g.vertex_count();
  AdjacencyView adj(g);
  const std::size_t row_words = adj.row_words();
  std::vector<int> idx(t);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint64_t> common(row_words);
  std::uint64_t nodes = 0;
  if (t > n) return;
  while (true) {
    if (++nodes > budget) throw ResourceError("ktt enumeration budget exceeded");
    std::copy(adj.row(idx[0]).begin(), adj.row(idx[0]).end(), common.begin());
    for (int j = 1; j < t; ++j)
      for (std::size_t w = 0; w < row_words; ++w) common[w] &= adj.row(idx[j])[w];
    std::vector<int> candidates;
    for (int v = 0; v < n; ++v)
      if ((common[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1) candidates.push_back(v);
    if (static_cast<int>(candidates.size()) >= t) {
      // Choose the second side among the common neighbors; dedupe unordered
      // side pairs by requiring min(side_a) < min(side_b).
      std::vector<int> pick(t);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<int> side_b(t);
        for (int j = 0; j < t; ++j) side_b[j] = candidates[pick[j]];
        if (idx[0] < side_b[0]) {
          KttCopy copy;
          copy.side_a.assign(idx.begin(), idx.end());
          copy.side_b = side_b;
          copy.vertices = copy.side_a;
          copy.vertices.insert(copy.vertices.end(), side_b.begin(), side_b.end());
          std::sort(copy.vertices.begin(), copy.vertices.end());
          out.push_back(std::move(copy));
        }
        int pos = t - 1;
        while (pos >= 0 && pick[pos] == static_cast<int>(candidates.size()) - t + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int j = pos + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    int pos = t - 1;
    while (pos >= 0 && idx[pos] == n - t + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<KttFreeResult> random_ktt_free(int n, int t, double delta, std::uint64_t seed,
                                             int retries) {
  if (delta <= 0.0 || delta >= 1.0) throw UsageError("random_ktt_free: delta must be in (0,1)");
  if (2 * t > n) throw UsageError("random_ktt_free: need 2t <= n");
  if (t < 1) throw UsageError("random_ktt_free: need t >= 1");

  const double expected = 0.5 * static_cast<double>(binomial(n, 2 * t)) *
                          static_cast<double>(binomial(2 * t, t)) *
                          std::pow(delta, static_cast<double>(t) * t);
  const double edge_floor =
      delta * (static_cast<double>(n) * (n - 1) / 2.0);

  for (int retry = 0; retry < retries; ++retry) {
    LabeledGraph g = random_graph(n, delta, seed + static_cast<std::uint64_t>(retry));
    const std::size_t sampled_edges = g.edge_count();

    std::vector<KttCopy> copies;
    collect_ktt_copies(g, t, copies, 2'000'000'000ULL);
    const std::uint64_t observed = copies.size();

    // Copies in lexicographic order of their vertex sets; delete each copy's
    // lexicographically least surviving edge.
    std::sort(copies.begin(), copies.end(), [](const KttCopy& a, const KttCopy& b) {
      if (a.vertices != b.vertices) return a.vertices < b.vertices;
      if (a.side_a != b.side_a) return a.side_a < b.side_a;
      return a.side_b < b.side_b;
    });
    std::uint64_t deletions = 0;
    for (const auto& copy : copies) {
      bool intact = true;
      std::optional<std::pair<int, int>> victim;
      for (int u : copy.side_a)
        for (int v : copy.side_b) {
          const std::pair<int, int> edge{std::min(u, v), std::max(u, v)};
          if (!g.edge(edge.first, edge.second))
            intact = false;
          else if (!victim || edge < *victim)
            victim = edge;
        }
      if (!intact) continue;  // an earlier deletion already destroyed this copy
      g.set_edge(victim->first, victim->second, false);
      ++deletions;
    }

    const bool free_now = !contains_kst(g, t, t);
    const bool enough_edges =
        static_cast<double>(g.edge_count()) >= edge_floor - static_cast<double>(observed);
    if (free_now && enough_edges) {
      std::ostringstream name;
      name << "contains K_{" << t << "," << t << "}";
      KttFreeResult result{dual_bound(g, name.str(), true,
                                      {{"copies_observed", observed},
                                       {"copies_deleted", deletions},
                                       {"sampled_edges", sampled_edges}}),
                           retry,
                           deletions,
                           observed,
                           expected,
                           std::pow(delta, static_cast<double>(t)),
                           sampled_edges};
      return result;
    }
  }
  return std::nullopt;
}

BipartitePattern path_pattern(int m) {
  if (m < 2) throw UsageError("path_pattern: need m >= 2");
  BipartitePattern pattern{path_graph(m), {}, {}, 2};
  for (int v = 0; v < m; ++v)
    (v % 2 == 1 ? pattern.side_a : pattern.side_b).push_back(v);
  return pattern;
}

namespace {

int common_neighbor_count(const AdjacencyView& adj, const std::vector<int>& set) {
  const std::size_t row_words = adj.row_words();
  std::vector<std::uint64_t> common(adj.row(set[0]).begin(), adj.row(set[0]).end());
  for (std::size_t i = 1; i < set.size(); ++i)
    for (std::size_t w = 0; w < row_words; ++w) common[w] &= adj.row(set[i])[w];
  int count = 0;
  for (std::uint64_t w : common) count += std::popcount(w);
  return count;
}

}  // namespace

std::optional<DrcEmbedding> drc_embed(const LabeledGraph& g, const BipartitePattern& pattern,
                                      const DrcParams& params, std::uint64_t seed,
                                      int retries) {
  const int n = g.vertex_count();
  const int m = pattern.graph.vertex_count();
  if (params.alpha <= 0.0 || params.alpha >= 1.0)
    throw UsageError("drc_embed: alpha must be in (0,1)");
  if (params.t < 1 || params.r < 1) throw UsageError("drc_embed: need t, r >= 1");
  if (params.m != m) throw UsageError("drc_embed: params.m must match the pattern order");

  // Lemma precondition: alpha^t * n - C(n,r) * (m/n)^t >= u.
  const double lhs = std::pow(params.alpha, params.t) * n -
                     static_cast<double>(binomial(n, params.r)) *
                         std::pow(static_cast<double>(m) / n, params.t);
  if (lhs < static_cast<double>(params.u))
    throw UsageError("drc_embed: sampling precondition alpha^t n - C(n,r)(m/n)^t >= u fails");

  // Density precondition: e(G) >= (alpha/2) n^2.
  if (static_cast<double>(g.edge_count()) <
      params.alpha / 2.0 * static_cast<double>(n) * n)
    throw UsageError("drc_embed: host graph is below the required density");

  for (int v : pattern.side_a)
    if (static_cast<int>(pattern.graph.degree(v)) > params.r)
      throw UsageError("drc_embed: a left vertex exceeds degree r");

  AdjacencyView adj(g);
  const std::size_t row_words = adj.row_words();

  for (int retry = 0; retry < retries; ++retry) {
    Rng rng = Rng::stream(seed + static_cast<std::uint64_t>(retry), 0x647263u /* "drc" */);

    // Sample t vertices with replacement; U = their common neighborhood.
    std::vector<std::uint64_t> common(row_words, ~std::uint64_t{0});
    for (int s = 0; s < params.t; ++s) {
      const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      for (std::size_t w = 0; w < row_words; ++w) common[w] &= adj.row(v)[w];
    }
    std::vector<int> candidate;
    for (int v = 0; v < n; ++v)
      if ((common[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1) candidate.push_back(v);

    // Prune: while some r-subset of U has fewer than m common neighbors,
    // drop that subset's largest vertex and rescan.
    bool pruned = true;
    while (pruned && static_cast<int>(candidate.size()) >= params.r) {
      pruned = false;
      std::vector<int> pick(params.r);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<int> subset(params.r);
        for (int j = 0; j < params.r; ++j) subset[j] = candidate[pick[j]];
        if (common_neighbor_count(adj, subset) < m) {
          candidate.erase(candidate.begin() + pick[params.r - 1]);
          pruned = true;
          break;
        }
        int pos = params.r - 1;
        while (pos >= 0 && pick[pos] == static_cast<int>(candidate.size()) - params.r + pos)
          --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int j = pos + 1; j < params.r; ++j) pick[j] = pick[j - 1] + 1;
      }
    }

    const int b_size = static_cast<int>(pattern.side_b.size());
    if (static_cast<int>(candidate.size()) < std::max(params.u, b_size)) continue;

    // Inject B onto the first |B| candidates, then extend A greedily.
    std::vector<int> image(m, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < b_size; ++i) {
      image[pattern.side_b[i]] = candidate[i];
      used[candidate[i]] = true;
    }
    bool ok = true;
    for (int av : pattern.side_a) {
      std::vector<int> anchor;
      for (int bv = 0; bv < m && ok; ++bv)
        if (bv != av && pattern.graph.edge(std::min(av, bv), std::max(av, bv)))
          anchor.push_back(image[bv]);
      // Pad the anchor to an r-set inside U so the pruning guarantee applies.
      for (int c : candidate) {
        if (static_cast<int>(anchor.size()) >= params.r) break;
        if (std::find(anchor.begin(), anchor.end(), c) == anchor.end()) anchor.push_back(c);
      }
      std::vector<std::uint64_t> cn(adj.row(anchor[0]).begin(), adj.row(anchor[0]).end());
      for (std::size_t i = 1; i < anchor.size(); ++i)
        for (std::size_t w = 0; w < row_words; ++w) cn[w] &= adj.row(anchor[i])[w];
      int chosen = -1;
      for (int v = 0; v < n && chosen == -1; ++v)
        if (!used[v] && ((cn[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1)) chosen = v;
      if (chosen == -1) {
        ok = false;
        break;
      }
      image[av] = chosen;
      used[chosen] = true;
    }
    if (!ok) continue;

    // Verify every pattern edge lands on a host edge.
    for (auto [u, v] : pattern.graph.edges())
      if (!adj.adjacent(image[u], image[v]))
        throw VerificationError("drc_embed: produced embedding failed edge verification");
    return DrcEmbedding{std::move(image), retry, static_cast<int>(candidate.size())};
  }
  return std::nullopt;
}

}  // namespace gcode
