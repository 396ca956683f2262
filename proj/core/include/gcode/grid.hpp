#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcode/graph.hpp"

namespace gcode {

// The m x n torus grid: vertex (r,c) is r*n + c; (r,c) ~ (r',c') iff the
// rows match and the columns differ by 1 mod n, or vice versa. 4-regular
// with 2mn edges for m, n >= 3.
struct GridSpec {
  int rows = 0;
  int cols = 0;
  int vertex(int r, int c) const {
    return ((r % rows + rows) % rows) * cols + ((c % cols + cols) % cols);
  }
};

LabeledGraph grid_graph(int m, int n);

// A family of spanning subgraphs of the host whose pairwise symmetric
// differences are all spanning connected. When generators are present the
// members are exactly the XOR combinations of the generators (the zero
// graph included).
struct GridFamily {
  GridSpec spec;
  LabeledGraph host;
  std::vector<LabeledGraph> members;
  std::vector<LabeledGraph> generators;  // empty for roster-only families
};

struct GridCheck {
  bool ok = true;
  std::string transcript;
  int pair_a = -1;
  int pair_b = -1;
  explicit operator bool() const { return ok; }
};

// Every member inside the host, every pairwise XOR spanning connected;
// exhaustive transcript (at most C(16,2) = 120 pairs for a full family).
GridCheck verify_grid_family(const GridFamily& family);

// The neighborhood argument at a probe vertex: each member's edge trace
// among the probe's 4 host neighbors must be distinct across the family
// (two equal traces would isolate the probe in their XOR), which caps any
// valid family at 2^4 = 16 members.
GridCheck neighborhood_bound_check(const GridFamily& family, int probe_row = 0,
                                   int probe_col = 0);

// Randomized hill-climb for `dim` generator subgraphs whose 2^dim - 1
// nonzero XOR combinations are all spanning connected; returns the full
// 2^dim-member coset family on success. dim <= 4 (17+ members are
// impossible). Budget counts combination evaluations across restarts.
std::optional<GridFamily> search_grid_family(const GridSpec& spec, int dim,
                                             std::uint64_t seed,
                                             std::uint64_t budget = 50'000'000);

}  // namespace gcode
