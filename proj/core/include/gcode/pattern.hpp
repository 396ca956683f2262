#pragma once

#include <cstdint>
#include <string>

#include "gcode/graph.hpp"

namespace gcode {

// Exact chromatic number by exhaustive k-coloring, k increasing from 1.
// Intended for small graphs; guarded by a vertex-count budget.
int chromatic_number(const LabeledGraph& g, int max_vertices = 10);

// A small fixed pattern L together with its cached invariants. The
// chromatic number and automorphism count are computed exhaustively at
// construction, so they are exact wherever a PatternGraph exists at all.
class PatternGraph {
 public:
  explicit PatternGraph(LabeledGraph g, std::string name = "");

  const LabeledGraph& graph() const { return g_; }
  int vertex_count() const { return g_.vertex_count(); }
  std::size_t edge_count() const { return edge_count_; }
  int chromatic() const { return chromatic_; }
  std::uint64_t automorphism_count() const { return automorphisms_; }
  const std::string& name() const { return name_; }

 private:
  LabeledGraph g_;
  std::size_t edge_count_;
  int chromatic_;
  std::uint64_t automorphisms_;
  std::string name_;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 200'000'000;

// Exact number of subgraphs of g isomorphic to the pattern: injective
// embeddings divided by |Aut(L)|. Non-induced (extra edges of g are fine).
std::uint64_t count_copies(const LabeledGraph& g, const PatternGraph& pattern,
                           std::uint64_t budget = kDefaultEnumerationBudget);

struct DisjointCopies {
  int count = 0;
  bool exact = false;  // false: branch-and-bound hit its budget, count is a greedy lower bound
};

// Maximum number of pairwise vertex-disjoint copies of the pattern in g.
DisjointCopies max_disjoint_copies(const LabeledGraph& g, const PatternGraph& pattern,
                                   std::uint64_t exact_budget = 20'000'000);

// True iff g contains K_{s,t} as a subgraph (s <= t): some s-set of
// vertices has at least t common neighbors.
bool contains_kst(const LabeledGraph& g, int s, int t,
                  std::uint64_t budget = kDefaultEnumerationBudget);

// Pattern lookup by name: "K3", "C5", "P4", "K2,3", "star5" (K_{1,5}).
PatternGraph pattern_by_name(const std::string& name);

}  // namespace gcode
