#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcode/binary_code.hpp"
#include "gcode/factorization.hpp"
#include "gcode/graph.hpp"

namespace gcode {

// An implicit family of graphs on [n] whose pairwise symmetric differences
// each contain a spanning tree with exactly `leaves` leaves.
//
// gv_partition variant: members are unions of an even number of the index
// matchings M_0..M_{n-2}, each overlaid with a subgraph H_part of the
// reserved matching M_{n-1}; the part assignment guarantees that members
// sharing an H layer differ in at least 4 matchings, and distinct H layers
// differ in at least 3*leaves-5 reserved-matching edges.
//
// hamming variant: members are unions of matchings selected by the
// even-weight codewords of the distance-3 Hamming code of length n = 2^k-1;
// any two differ in at least 4 matchings, so a third matching supplies the
// (n-1)/2 extra edges.
enum class TreeCodeVariant { gv_partition, hamming };
enum class PartColoring { greedy, syndrome };

struct TreeCodeParams {
  TreeCodeVariant variant = TreeCodeVariant::gv_partition;
  int n = 0;       // odd vertex count
  int leaves = 0;  // target leaf count (>= 2; 2 is the degenerate no-H-layer family)
  RestrictedMatchingSystem matchings;  // n near-perfect matchings on [n]
  int reserved = 0;                    // index of the reserved matching (gv variant)

  // gv variant part machinery (absent when leaves == 2).
  PartColoring coloring = PartColoring::syndrome;
  std::optional<BinaryCode> part_code;       // even_d4_linear(n-1), syndrome coloring
  std::vector<std::uint32_t> greedy_colors;  // ordinal -> color, greedy coloring
  std::vector<std::uint32_t> part_ids;       // sorted achievable part ids
  BinaryCode h_code;                         // one word per part, distance >= 3*leaves-5
  std::vector<std::size_t> reserved_edge_slots;  // canonical slots of M_reserved's edges

  // hamming variant member index space.
  int hamming_k = 0;
  std::vector<Word> member_words;  // basis of the even-weight Hamming subcode

  int index_bits() const {
    return variant == TreeCodeVariant::gv_partition ? n - 2
                                                    : n - hamming_k - 1;
  }
  std::uint64_t family_size() const { return std::uint64_t{1} << index_bits(); }
};

// Per-pair witness: a spanning tree with exactly `leaves` leaves contained
// in the symmetric difference of the two members.
struct PairCertificate {
  LabeledGraph tree;
  int path_matching_a = -1;  // matchings whose union formed the Hamiltonian path
  int path_matching_b = -1;
  std::vector<std::pair<int, int>> extra_edges_used;  // added by augmentation
};

struct PairCheck {
  bool ok = false;
  std::string transcript;  // failure details; certificates never fail silently
};

// --- construction ---------------------------------------------------------

// Builds the gv-partition family of size 2^{n-2} on n = order-1 vertices
// from a verified perfect 1-factorization of K_{n+1}. For leaves >= 3 an
// H-assignment code with distance 3*leaves-5 and one word per part must
// exist; that is computed and checked, never assumed. Greedy coloring walks
// the explicit index space and is limited to n <= 17.
TreeCodeParams build_treecode(int n, int leaves, const OneFactorization& factorization,
                              PartColoring coloring = PartColoring::syndrome,
                              ScanOrder h_order = ScanOrder::lexicographic,
                              std::uint64_t seed = 0);

// Builds the Hamming-variant family of size 2^{n-k-1} for n = 2^k-1,
// 3 <= leaves <= (n+9)/6, from a verified perfect 1-factorization of K_{n+1}.
TreeCodeParams build_hamming_treecode(int k, int leaves,
                                      const OneFactorization& factorization);

// --- evaluation -----------------------------------------------------------

// Member graph for an ordinal index in [0, family_size()). Deterministic:
// equal indices give bit-identical graphs.
LabeledGraph member(const TreeCodeParams& params, std::uint64_t index);

// The index matchings of a member, as a bitmask over matching indices.
std::uint64_t member_matching_mask(const TreeCodeParams& params, std::uint64_t index);

// Part id of a member (gv variant with an H layer).
std::uint32_t member_part(const TreeCodeParams& params, std::uint64_t index);

// --- the augmentation operation ------------------------------------------

struct AugmentRound {
  std::pair<int, int> added_edge;    // the extra edge joined into the tree
  std::pair<int, int> deleted_edge;  // the path edge removed
  int extra_edges_consumed = 0;      // removed from the pool this round (incl. the added one)
  int leaves_after = 0;
};

struct AugmentResult {
  LabeledGraph tree;
  std::vector<AugmentRound> rounds;
  std::vector<std::pair<int, int>> extra_edges_used;
};

// Turns a Hamiltonian path (given as its vertex sequence) into a spanning
// tree with exactly `leaves` leaves, consuming pairwise vertex-disjoint
// extra edges none of which lies on the path. First discards the extra edge
// at the path's final vertex if present, then runs leaves-2 rounds: take the
// pool edge {v_i, v_j} (i < j, smallest i, then smallest j), add it, delete
// path edge {v_i, v_{i+1}}, and drop pool edges touching v_{i+1} or v_{j-1}.
// Each round adds exactly one leaf and consumes at most 3 pool edges.
AugmentResult augment_to_leaves(const std::vector<int>& path_sequence,
                                std::vector<std::pair<int, int>> extra_edges, int leaves);

// --- verification ---------------------------------------------------------

// Builds and checks the certificate for a member pair: locates the
// matchings of the difference, forms the Hamiltonian path from two of them,
// collects >= 3*leaves-5 disjoint extra edges (H-layer difference across
// parts, a third matching otherwise), augments, and re-checks the result
// against the actual symmetric difference with an independent verifier.
PairCertificate verify_pair(const TreeCodeParams& params, std::uint64_t index_i,
                            std::uint64_t index_j);

// The independent check used on every certificate: tree inside the XOR,
// exactly n-1 edges, spanning connected, leaf count exactly params.leaves.
PairCheck check_certificate(const TreeCodeParams& params, std::uint64_t index_i,
                            std::uint64_t index_j, const PairCertificate& certificate);

}  // namespace gcode
