#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcode/graph.hpp"

namespace gcode {

// A 1-factorization of K_m (m even): m-1 perfect matchings partitioning the
// edge set. It is perfect when the union of any two factors is a
// Hamiltonian cycle; that is what verify_perfect certifies.
struct OneFactorization {
  int order = 0;                      // m, even, >= 4
  std::vector<LabeledGraph> factors;  // m-1 graphs on m vertices
};

struct P1fCheck {
  bool ok = true;
  std::string violation;              // empty when ok
  int factor_a = -1;                  // offending factor (pair) when !ok
  int factor_b = -1;
  explicit operator bool() const { return ok; }
};

// Kotzig's starter construction on Z_p u {inf} for an odd prime p; the
// infinity vertex is labeled p. Factor i = {inf,i} u {{i+k, i-k} mod p}.
// The result is re-verified, never trusted.
OneFactorization kotzig_p1f(int p);

// Classical circle method for any even m >= 4 (hub = vertex m-1, others on
// a cycle). Produces a valid 1-factorization always; it is *perfect* only
// for some orders, which makes it a natural verify_perfect test subject.
OneFactorization round_robin_factorization(int m);

// Backtracking search for a perfect 1-factorization of K_m, 4 <= m <= 14.
// Factor 0 is pinned to {01, 23, ...} and factors are kept lexicographically
// increasing to cut symmetry. Returns nullopt when the node budget runs out.
std::optional<OneFactorization> search_p1f(int m, std::uint64_t node_budget = 50'000'000);

// Checks all three invariants: every factor a perfect matching, factors
// partition E(K_m), and every pair-union a Hamiltonian cycle. Reports the
// first failure by name and offending factor pair (lowest indices win).
P1fCheck verify_perfect(const OneFactorization& f);

// The n = m-1 near-perfect matchings obtained by deleting the edge at the
// highest-labeled vertex from each factor of a perfect 1-factorization.
// The union of any two distinct matchings is a Hamiltonian path on [n].
struct RestrictedMatchingSystem {
  int n = 0;                            // odd
  std::vector<LabeledGraph> matchings;  // n graphs on n vertices, (n-1)/2 edges each
  std::vector<int> missed_vertex;       // the vertex matching i leaves uncovered
};

// Requires a factorization passing verify_perfect (usage error otherwise);
// certifies the Hamiltonian-path property of every pair before returning.
RestrictedMatchingSystem restrict_to_n(const OneFactorization& f);

// Recover the vertex sequence of the Hamiltonian path formed by the union
// of two near-perfect matchings. Starts at the lower-labeled endpoint.
std::vector<int> hamiltonian_path_sequence(const LabeledGraph& path_union);

}  // namespace gcode
