#include "gcode/pattern.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace gcode {

namespace {

bool colorable_with(const LabeledGraph& g, int k) {
  const int n = g.vertex_count();
  std::vector<int> color(n, -1);
  // Backtracking over vertices in index order; vertex 0 pinned to color 0.
  std::vector<int> next_try(n, 0);
  int v = 0;
  while (v >= 0) {
    if (v == n) return true;
    bool placed = false;
    const int cap = (v == 0) ? 1 : k;
    for (int c = next_try[v]; c < cap; ++c) {
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (color[u] == c && g.edge(u, v)) ok = false;
      if (ok) {
        color[v] = c;
        next_try[v] = c + 1;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++v;
      if (v < n) next_try[v] = 0;
    } else {
      color[v] = -1;
      --v;
    }
  }
  return false;
}

}  // namespace

int chromatic_number(const LabeledGraph& g, int max_vertices) {
  const int n = g.vertex_count();
  if (n > max_vertices)
    throw ResourceError("chromatic_number: graph exceeds the exhaustive-search budget");
  if (g.empty()) return n >= 1 ? 1 : 0;
  for (int k = 2; k <= n; ++k)
    if (colorable_with(g, k)) return k;
  return n;
}

namespace {

std::uint64_t count_automorphisms(const LabeledGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        if (g.edge(u, v) != g.edge(perm[u], perm[v])) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

PatternGraph::PatternGraph(LabeledGraph g, std::string name)
    : g_(std::move(g)), name_(std::move(name)) {
  if (g_.vertex_count() > 10)
    throw UsageError("PatternGraph: patterns are limited to 10 vertices");
  edge_count_ = g_.edge_count();
  chromatic_ = chromatic_number(g_);
  automorphisms_ = count_automorphisms(g_);
}

namespace {

// Pattern vertices reordered so that each one after the first within a
// component is adjacent to some earlier vertex; keeps the embedding search
// anchored instead of generating free cross products.
std::vector<int> search_order(const LabeledGraph& l) {
  const int k = l.vertex_count();
  std::vector<int> order;
  std::vector<bool> used(k, false);
  while (static_cast<int>(order.size()) < k) {
    int seed = -1;
    for (int v = 0; v < k; ++v)
      if (!used[v]) {
        seed = v;
        break;
      }
    order.push_back(seed);
    used[seed] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int v = 0; v < k && !grew; ++v) {
        if (used[v]) continue;
        for (int u : order)
          if (l.edge(u, v)) {
            order.push_back(v);
            used[v] = true;
            grew = true;
            break;
          }
      }
    }
  }
  return order;
}

struct EmbeddingCounter {
  const AdjacencyView& host;
  const LabeledGraph& pattern;
  const std::vector<int>& order;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::uint64_t found = 0;
  std::vector<int> image;       // pattern vertex -> host vertex, -1 if unmapped
  std::vector<bool> host_used;

  void run(std::size_t depth) {
    if (depth == order.size()) {
      ++found;
      return;
    }
    const int pv = order[depth];
    const int n = host.vertex_count();
    for (int hv = 0; hv < n; ++hv) {
      if (host_used[hv]) continue;
      if (++nodes > budget)
        throw ResourceError("count_copies: embedding enumeration budget exceeded");
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const int pu = order[d];
        if (pattern.edge(pu, pv) && !host.adjacent(image[pu], hv)) ok = false;
      }
      if (!ok) continue;
      image[pv] = hv;
      host_used[hv] = true;
      run(depth + 1);
      host_used[hv] = false;
      image[pv] = -1;
    }
  }
};

}  // namespace

std::uint64_t count_copies(const LabeledGraph& g, const PatternGraph& pattern,
                           std::uint64_t budget) {
  const int k = pattern.vertex_count();
  if (k > g.vertex_count()) return 0;
  if (pattern.edge_count() == 0)
    throw UsageError("count_copies: pattern must have at least one edge");
  AdjacencyView host(g);
  const std::vector<int> order = search_order(pattern.graph());
  EmbeddingCounter counter{host, pattern.graph(), order, budget, 0, 0,
                           std::vector<int>(k, -1),
                           std::vector<bool>(g.vertex_count(), false)};
  counter.run(0);
  return counter.found / pattern.automorphism_count();
}

namespace {

// Distinct vertex sets that support at least one copy of the pattern.
// Only vertex sets matter for disjoint packing.
std::vector<std::vector<int>> copy_vertex_sets(const LabeledGraph& g,
                                               const PatternGraph& pattern,
                                               std::uint64_t budget) {
  const int k = pattern.vertex_count();
  const int n = g.vertex_count();
  AdjacencyView host(g);
  std::vector<std::vector<int>> sets;
  std::vector<int> subset(k);
  std::uint64_t nodes = 0;

  // Enumerate k-subsets of [n]; test each for a pattern embedding.
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return sets;
  while (true) {
    if (++nodes > budget)
      throw ResourceError("max_disjoint_copies: enumeration budget exceeded");
    // Does g restricted to idx contain the pattern? Brute-force permutations
    // over k <= 5 vertices.
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    bool has_copy = false;
    do {
      bool ok = true;
      for (int a = 0; a < k && ok; ++a)
        for (int b = a + 1; b < k && ok; ++b)
          if (pattern.graph().edge(a, b) && !host.adjacent(idx[perm[a]], idx[perm[b]]))
            ok = false;
      if (ok) has_copy = true;
    } while (!has_copy && std::next_permutation(perm.begin(), perm.end()));
    if (has_copy) sets.push_back(idx);

    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return sets;
}

struct PackingSearch {
  const std::vector<std::uint64_t>& masks;  // vertex masks of candidate copies (n <= 64 path)
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  int best = 0;
  bool exhausted = true;

  void run(std::size_t next, std::uint64_t used, int taken, int remaining_cap) {
    if (taken > best) best = taken;
    if (++nodes > budget) {
      exhausted = false;
      return;
    }
    if (taken + remaining_cap <= best) return;
    for (std::size_t i = next; i < masks.size(); ++i) {
      if (masks[i] & used) continue;
      run(i + 1, used | masks[i], taken + 1, remaining_cap - 1);
      if (!exhausted) return;
    }
  }
};

}  // namespace

DisjointCopies max_disjoint_copies(const LabeledGraph& g, const PatternGraph& pattern,
                                   std::uint64_t exact_budget) {
  const int k = pattern.vertex_count();
  const int n = g.vertex_count();
  if (k > n) return {0, true};
  if (pattern.edge_count() == 0)
    throw UsageError("max_disjoint_copies: pattern must have at least one edge");

  std::vector<std::vector<int>> sets = copy_vertex_sets(g, pattern, exact_budget);
  if (sets.empty()) return {0, true};

  if (n <= 64) {
    std::vector<std::uint64_t> masks;
    masks.reserve(sets.size());
    for (const auto& s : sets) {
      std::uint64_t m = 0;
      for (int v : s) m |= std::uint64_t{1} << v;
      masks.push_back(m);
    }
    PackingSearch search{masks, exact_budget, 0, 0, true};
    search.run(0, 0, 0, n / k);
    if (search.exhausted) return {search.best, true};
  }

  // Greedy lower bound: first-fit over the candidate sets.
  std::vector<bool> used(n, false);
  int greedy = 0;
  for (const auto& s : sets) {
    bool free = true;
    for (int v : s)
      if (used[v]) {
        free = false;
        break;
      }
    if (free) {
      for (int v : s) used[v] = true;
      ++greedy;
    }
  }
  return {greedy, false};
}

bool contains_kst(const LabeledGraph& g, int s, int t, std::uint64_t budget) {
  if (s < 1 || t < s) throw UsageError("contains_kst: need 1 <= s <= t");
  const int n = g.vertex_count();
  if (s + t > n) return false;
  AdjacencyView adj(g);
  const std::size_t row_words = adj.row_words();

  std::vector<int> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint64_t> common(row_words);
  std::uint64_t nodes = 0;
  while (true) {
    if (++nodes > budget)
      throw ResourceError("contains_kst: subset enumeration budget exceeded");
    std::copy(adj.row(idx[0]).begin(), adj.row(idx[0]).end(), common.begin());
    for (int j = 1; j < s; ++j)
      for (std::size_t w = 0; w < row_words; ++w) common[w] &= adj.row(idx[j])[w];
    int cn = 0;
    for (std::uint64_t w : common) cn += std::popcount(w);
    // A common neighbor of an s-set is never inside the set (no loops), so
    // cn >= t certifies a K_{s,t}.
    if (cn >= t) return true;

    int pos = s - 1;
    while (pos >= 0 && idx[pos] == n - s + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return false;
}

PatternGraph pattern_by_name(const std::string& name) {
  auto fail = [&]() -> PatternGraph {
    throw UsageError("unknown pattern name: " + name +
                     " (expected K<r>, C<r>, P<r>, K<a>,<b>, or star<r>)");
  };
  if (name.size() < 2) return fail();
  const auto comma = name.find(',');
  try {
    if (name[0] == 'K' && comma != std::string::npos) {
      const int a = std::stoi(name.substr(1, comma - 1));
      const int b = std::stoi(name.substr(comma + 1));
      return PatternGraph(complete_bipartite(a, b), name);
    }
    if (name.rfind("star", 0) == 0) {
      const int r = std::stoi(name.substr(4));
      return PatternGraph(star_graph(r + 1), name);
    }
    const int r = std::stoi(name.substr(1));
    switch (name[0]) {
      case 'K': return PatternGraph(complete_graph(r), name);
      case 'C': return PatternGraph(cycle_graph(r), name);
      case 'P': return PatternGraph(path_graph(r), name);
      default: return fail();
    }
  } catch (const std::invalid_argument&) {
    return fail();
  }
}

}  // namespace gcode
