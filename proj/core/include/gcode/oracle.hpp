#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcode/graph.hpp"
#include "gcode/pattern.hpp"

namespace gcode {

// A membership test for the graph class F, evaluable on any graph of the
// session's vertex count.
struct PredicateSpec {
  enum class Kind {
    connected,            // spanning connected
    contains_pattern,     // >= 1 copy of L
    k_copies,             // >= k copies of L
    k_disjoint,           // >= k vertex-disjoint copies of L
    spanning_tree_leaves, // contains a spanning tree with exactly l leaves
    contains_ktt,         // contains K_{t,t}
  };
  Kind kind = Kind::connected;
  std::optional<PatternGraph> pattern;
  std::uint64_t k = 1;
  int leaves = 2;
  int t = 2;

  std::string describe() const;
  bool evaluate(const LabeledGraph& g) const;
};

// Parse "connected", "contains:K3", "kcopies:K3:2", "kdisjoint:K3:2",
// "leaves:3", "ktt:2".
PredicateSpec parse_predicate(const std::string& text);

struct OracleResult {
  int n = 0;
  std::string predicate;
  std::uint64_t m_exact = 0;
  std::vector<LabeledGraph> witness_family;
  std::optional<std::uint64_t> d_exact;
  std::optional<std::uint64_t> bad_count;
};

// Exact M_F(n) with an optimal witness family: maximum clique in the graph
// on all 2^{C(n,2)} graphs whose edges join pairs with predicate-satisfying
// XOR. The compatibility relation depends only on the XOR value, so the
// predicate is evaluated once per XOR class. n <= 4 is immediate; n = 5 is
// allowed and pays with time.
OracleResult exact_MF(int n, const PredicateSpec& predicate,
                      std::uint64_t budget = 4'000'000'000ULL);

// Exact D_F(n): maximum family with no predicate-satisfying XOR (clique in
// the complement compatibility graph).
std::uint64_t exact_DF(int n, const PredicateSpec& predicate,
                       std::uint64_t budget = 4'000'000'000ULL);

// Number of graphs on [n] NOT satisfying the predicate. n <= 6.
std::uint64_t count_bad_graphs(int n, const PredicateSpec& predicate);

// The independence-bound rate floor C(n,2) - log2(bad_count + 1).
double greedy_rate_lower_bound(int n, const PredicateSpec& predicate);

// Decode a graph code in [0, 2^{C(n,2)}) into its graph.
LabeledGraph graph_from_code(std::uint64_t code, int n);
std::uint64_t code_from_graph(const LabeledGraph& g);

}  // namespace gcode
