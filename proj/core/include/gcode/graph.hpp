#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gcode/errors.hpp"

namespace gcode {

// Canonical slot of the pair {u,v} among the C(n,2) unordered pairs of
// {0..n-1}, lexicographic by (min,max):
//   idx(u,v) = u*(2n-u-1)/2 + (v-u-1)   for u < v.
std::size_t edge_index(int u, int v, int n);

// Inverse of edge_index: the unique pair (u,v), u < v, at slot idx.
std::pair<int, int> edge_from_index(std::size_t idx, int n);

// A graph on the labeled vertex set {0..n-1}, stored as a bitset over the
// C(n,2) canonical edge slots (64-bit words, slot 0 in the lowest bit of
// word 0). Value type: copyable, comparable, immutable in spirit once built.
class LabeledGraph {
 public:
  LabeledGraph() : LabeledGraph(1) {}
  explicit LabeledGraph(int n);

  int vertex_count() const { return n_; }
  std::size_t slot_count() const { return slots_; }

  bool edge(int u, int v) const;
  void set_edge(int u, int v, bool present = true);
  void toggle_edge(int u, int v);

  bool slot(std::size_t idx) const;
  void set_slot(std::size_t idx, bool present = true);

  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> degrees() const;
  int degree(int v) const;

  bool empty() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t word(std::size_t i) const { return words_[i]; }

  // In-place XOR with another graph on the same vertex set.
  LabeledGraph& operator^=(const LabeledGraph& other);
  LabeledGraph& operator|=(const LabeledGraph& other);
  LabeledGraph& operator&=(const LabeledGraph& other);

  bool operator==(const LabeledGraph& other) const = default;

  // True if every edge of this graph is also an edge of `host`.
  bool subgraph_of(const LabeledGraph& host) const;

  bool intersects(const LabeledGraph& other) const;

 private:
  void check_same_shape(const LabeledGraph& other) const;

  int n_;
  std::size_t slots_;
  std::vector<std::uint64_t> words_;
};

// Edge-set XOR of two graphs on the same vertex set.
LabeledGraph symdiff(const LabeledGraph& g, const LabeledGraph& h);
LabeledGraph graph_union(const LabeledGraph& g, const LabeledGraph& h);

// True iff all n vertices lie in one component. An isolated vertex means
// false (the spanning convention used throughout; a single vertex is
// connected). Follows from treating members as spanning subgraphs.
bool is_spanning_connected(const LabeledGraph& g);

// Number of connected components, counting isolated vertices.
int component_count(const LabeledGraph& g);

// If t is a spanning tree (exactly n-1 edges, spanning connected), the
// number of degree-1 vertices; otherwise nullopt ("not a tree" is a normal
// outcome, not an error).
std::optional<int> spanning_tree_leaf_count(const LabeledGraph& t);

// Per-vertex neighbor bitsets (ceil(n/64) words per row), built on demand
// from the edge bitset. Used by the subgraph-search and embedding code.
class AdjacencyView {
 public:
  explicit AdjacencyView(const LabeledGraph& g);

  int vertex_count() const { return n_; }
  std::size_t row_words() const { return row_words_; }
  std::span<const std::uint64_t> row(int v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * row_words_, row_words_};
  }
  bool adjacent(int u, int v) const {
    return (row(u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1;
  }

 private:
  int n_;
  std::size_t row_words_;
  std::vector<std::uint64_t> rows_;
};

// Small constructors used across the library and its tests.
LabeledGraph empty_graph(int n);
LabeledGraph complete_graph(int n);
LabeledGraph path_graph(int n);                  // 0-1-2-...-(n-1)
LabeledGraph cycle_graph(int n);                 // n >= 3
LabeledGraph complete_bipartite(int a, int b);   // sides {0..a-1}, {a..a+b-1}
LabeledGraph star_graph(int n);                  // center 0, n >= 2
LabeledGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace gcode
