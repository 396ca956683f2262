#include "gcode/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace gcode {

std::size_t edge_index(int u, int v, int n) {
  if (u < 0 || v < 0 || u >= n || v >= n || u == v)
    throw UsageError("edge_index: need 0 <= u != v < n");
  if (u > v) std::swap(u, v);
  const std::size_t un = static_cast<std::size_t>(u);
  return un * (2 * static_cast<std::size_t>(n) - un - 1) / 2 +
         static_cast<std::size_t>(v - u - 1);
}

std::pair<int, int> edge_from_index(std::size_t idx, int n) {
  const std::size_t slots = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (idx >= slots) throw UsageError("edge_from_index: slot out of range");
  std::size_t row_start = 0;
  for (int u = 0; u < n - 1; ++u) {
    const std::size_t row_len = static_cast<std::size_t>(n - 1 - u);
    if (idx < row_start + row_len)
      return {u, u + 1 + static_cast<int>(idx - row_start)};
    row_start += row_len;
  }
  throw UsageError("edge_from_index: unreachable");
}

LabeledGraph::LabeledGraph(int n) : n_(n) {
  if (n < 1) throw UsageError("LabeledGraph: vertex count must be >= 1");
  slots_ = static_cast<std::size_t>(n) * (n - 1) / 2;
  words_.assign((slots_ + 63) / 64, 0);
}

bool LabeledGraph::edge(int u, int v) const { return slot(edge_index(u, v, n_)); }

void LabeledGraph::set_edge(int u, int v, bool present) {
  set_slot(edge_index(u, v, n_), present);
}

void LabeledGraph::toggle_edge(int u, int v) {
  const std::size_t idx = edge_index(u, v, n_);
  words_[idx >> 6] ^= std::uint64_t{1} << (idx & 63);
}

bool LabeledGraph::slot(std::size_t idx) const {
  if (idx >= slots_) throw UsageError("LabeledGraph::slot: out of range");
  return (words_[idx >> 6] >> (idx & 63)) & 1;
}

void LabeledGraph::set_slot(std::size_t idx, bool present) {
  if (idx >= slots_) throw UsageError("LabeledGraph::set_slot: out of range");
  const std::uint64_t mask = std::uint64_t{1} << (idx & 63);
  if (present)
    words_[idx >> 6] |= mask;
  else
    words_[idx >> 6] &= ~mask;
}

std::size_t LabeledGraph::edge_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::pair<int, int>> LabeledGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count());
  std::size_t row_start = 0;
  for (int u = 0; u < n_ - 1; ++u) {
    const std::size_t row_len = static_cast<std::size_t>(n_ - 1 - u);
    for (std::size_t j = 0; j < row_len; ++j) {
      const std::size_t idx = row_start + j;
      if ((words_[idx >> 6] >> (idx & 63)) & 1)
        out.emplace_back(u, u + 1 + static_cast<int>(j));
    }
    row_start += row_len;
  }
  return out;
}

std::vector<int> LabeledGraph::degrees() const {
  std::vector<int> deg(n_, 0);
  std::size_t row_start = 0;
  for (int u = 0; u < n_ - 1; ++u) {
    const std::size_t row_len = static_cast<std::size_t>(n_ - 1 - u);
    for (std::size_t j = 0; j < row_len; ++j) {
      const std::size_t idx = row_start + j;
      if ((words_[idx >> 6] >> (idx & 63)) & 1) {
        ++deg[u];
        ++deg[u + 1 + static_cast<int>(j)];
      }
    }
    row_start += row_len;
  }
  return deg;
}

int LabeledGraph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < n_; ++u)
    if (u != v && edge(u, v)) ++d;
  return d;
}

bool LabeledGraph::empty() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

void LabeledGraph::check_same_shape(const LabeledGraph& other) const {
  if (n_ != other.n_)
    throw UsageError("graph operation: operands have different vertex counts");
}

LabeledGraph& LabeledGraph::operator^=(const LabeledGraph& other) {
  check_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

LabeledGraph& LabeledGraph::operator|=(const LabeledGraph& other) {
  check_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

LabeledGraph& LabeledGraph::operator&=(const LabeledGraph& other) {
  check_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool LabeledGraph::subgraph_of(const LabeledGraph& host) const {
  check_same_shape(host);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~host.words_[i]) return false;
  return true;
}

bool LabeledGraph::intersects(const LabeledGraph& other) const {
  check_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

LabeledGraph symdiff(const LabeledGraph& g, const LabeledGraph& h) {
  LabeledGraph out = g;
  out ^= h;
  return out;
}

LabeledGraph graph_union(const LabeledGraph& g, const LabeledGraph& h) {
  LabeledGraph out = g;
  out |= h;
  return out;
}

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<int> parent;
};

}  // namespace

int component_count(const LabeledGraph& g) {
  const int n = g.vertex_count();
  UnionFind uf(n);
  int comps = n;
  std::size_t row_start = 0;
  for (int u = 0; u < n - 1; ++u) {
    const std::size_t row_len = static_cast<std::size_t>(n - 1 - u);
    for (std::size_t j = 0; j < row_len; ++j) {
      const std::size_t idx = row_start + j;
      if ((g.words()[idx >> 6] >> (idx & 63)) & 1)
        if (uf.merge(u, u + 1 + static_cast<int>(j))) --comps;
    }
    row_start += row_len;
  }
  return comps;
}

bool is_spanning_connected(const LabeledGraph& g) { return component_count(g) == 1; }

std::optional<int> spanning_tree_leaf_count(const LabeledGraph& t) {
  const int n = t.vertex_count();
  if (t.edge_count() != static_cast<std::size_t>(n - 1)) return std::nullopt;
  if (!is_spanning_connected(t)) return std::nullopt;
  int leaves = 0;
  for (int d : t.degrees())
    if (d == 1) ++leaves;
  return leaves;
}

AdjacencyView::AdjacencyView(const LabeledGraph& g)
    : n_(g.vertex_count()), row_words_((static_cast<std::size_t>(n_) + 63) / 64) {
  rows_.assign(static_cast<std::size_t>(n_) * row_words_, 0);
  std::size_t row_start = 0;
  for (int u = 0; u < n_ - 1; ++u) {
    const std::size_t row_len = static_cast<std::size_t>(n_ - 1 - u);
    for (std::size_t j = 0; j < row_len; ++j) {
      const std::size_t idx = row_start + j;
      if ((g.words()[idx >> 6] >> (idx & 63)) & 1) {
        const int v = u + 1 + static_cast<int>(j);
        rows_[static_cast<std::size_t>(u) * row_words_ + (v >> 6)] |=
            std::uint64_t{1} << (v & 63);
        rows_[static_cast<std::size_t>(v) * row_words_ + (u >> 6)] |=
            std::uint64_t{1} << (u & 63);
      }
    }
    row_start += row_len;
  }
}

LabeledGraph empty_graph(int n) { return LabeledGraph(n); }

LabeledGraph complete_graph(int n) {
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set_edge(u, v);
  return g;
}

LabeledGraph path_graph(int n) {
  LabeledGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1);
  return g;
}

LabeledGraph cycle_graph(int n) {
  if (n < 3) throw UsageError("cycle_graph: need n >= 3");
  LabeledGraph g = path_graph(n);
  g.set_edge(n - 1, 0);
  return g;
}

LabeledGraph complete_bipartite(int a, int b) {
  LabeledGraph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) g.set_edge(u, v);
  return g;
}

LabeledGraph star_graph(int n) {
  if (n < 2) throw UsageError("star_graph: need n >= 2");
  LabeledGraph g(n);
  for (int v = 1; v < n; ++v) g.set_edge(0, v);
  return g;
}

LabeledGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  LabeledGraph g(n);
  for (auto [u, v] : edges) g.set_edge(u, v);
  return g;
}

}  // namespace gcode
