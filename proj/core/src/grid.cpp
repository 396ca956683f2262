#include "gcode/grid.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "gcode/rng.hpp"

namespace gcode {

LabeledGraph grid_graph(int m, int n) {
  if (m < 3 || n < 3)
    throw UsageError("grid_graph: need m, n >= 3 (wraparound degenerates below that)");
  GridSpec spec{m, n};
  LabeledGraph g(m * n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) {
      g.set_edge(spec.vertex(r, c), spec.vertex(r, c + 1));
      g.set_edge(spec.vertex(r, c), spec.vertex(r + 1, c));
    }
  return g;
}

GridCheck verify_grid_family(const GridFamily& family) {
  std::ostringstream transcript;
  for (std::size_t i = 0; i < family.members.size(); ++i)
    if (!family.members[i].subgraph_of(family.host)) {
      transcript << "member " << i << " is not a spanning subgraph of the host";
      return {false, transcript.str(), static_cast<int>(i), -1};
    }
  for (std::size_t i = 0; i < family.members.size(); ++i)
    for (std::size_t j = i + 1; j < family.members.size(); ++j) {
      if (family.members[i] == family.members[j]) {
        transcript << "members " << i << " and " << j << " are identical";
        return {false, transcript.str(), static_cast<int>(i), static_cast<int>(j)};
      }
      if (!is_spanning_connected(symdiff(family.members[i], family.members[j]))) {
        transcript << "symmetric difference of members " << i << " and " << j
                   << " is not spanning connected";
        return {false, transcript.str(), static_cast<int>(i), static_cast<int>(j)};
      }
    }
  transcript << family.members.size() << " members, "
             << family.members.size() * (family.members.size() - 1) / 2
             << " pairwise differences all spanning connected";
  return {true, transcript.str(), -1, -1};
}

GridCheck neighborhood_bound_check(const GridFamily& family, int probe_row, int probe_col) {
  const GridSpec& spec = family.spec;
  const int probe = spec.vertex(probe_row, probe_col);
  const int host_neighbors[4] = {
      spec.vertex(probe_row, probe_col + 1), spec.vertex(probe_row, probe_col - 1),
      spec.vertex(probe_row + 1, probe_col), spec.vertex(probe_row - 1, probe_col)};

  std::ostringstream transcript;
  if (family.members.size() > 16) {
    transcript << "family has " << family.members.size()
               << " members; more than 2^4 = 16 is impossible by pigeonhole on probe traces";
    return {false, transcript.str(), -1, -1};
  }
  std::vector<unsigned> traces;
  traces.reserve(family.members.size());
  for (const auto& member : family.members) {
    unsigned trace = 0;
    for (int b = 0; b < 4; ++b)
      if (member.edge(probe, host_neighbors[b])) trace |= 1u << b;
    traces.push_back(trace);
  }
  for (std::size_t i = 0; i < traces.size(); ++i)
    for (std::size_t j = i + 1; j < traces.size(); ++j)
      if (traces[i] == traces[j]) {
        transcript << "members " << i << " and " << j
                   << " have equal neighbor traces at the probe; their difference isolates it";
        return {false, transcript.str(), static_cast<int>(i), static_cast<int>(j)};
      }
  transcript << traces.size() << " distinct probe traces";
  return {true, transcript.str(), -1, -1};
}

namespace {

// Generators and combinations as bitmasks over the host's edge list.
struct MaskWorkspace {
  std::vector<std::pair<int, int>> host_edges;
  int vertex_count;

  bool spanning_connected(std::uint64_t mask) const {
    std::vector<int> parent(vertex_count);
    for (int i = 0; i < vertex_count; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int comps = vertex_count;
    for (std::size_t e = 0; e < host_edges.size(); ++e)
      if ((mask >> e) & 1) {
        const int a = find(host_edges[e].first), b = find(host_edges[e].second);
        if (a != b) {
          parent[a] = b;
          --comps;
        }
      }
    return comps == 1;
  }

  int score(const std::vector<std::uint64_t>& generators) const {
    const int dim = static_cast<int>(generators.size());
    int good = 0;
    for (int combo = 1; combo < (1 << dim); ++combo) {
      std::uint64_t mask = 0;
      for (int b = 0; b < dim; ++b)
        if ((combo >> b) & 1) mask ^= generators[b];
      if (spanning_connected(mask)) ++good;
    }
    return good;
  }

  LabeledGraph to_graph(std::uint64_t mask) const {
    LabeledGraph g(vertex_count);
    for (std::size_t e = 0; e < host_edges.size(); ++e)
      if ((mask >> e) & 1) g.set_edge(host_edges[e].first, host_edges[e].second);
    return g;
  }
};

}  // namespace

std::optional<GridFamily> search_grid_family(const GridSpec& spec, int dim,
                                             std::uint64_t seed, std::uint64_t budget) {
  if (spec.rows < 3 || spec.cols < 3) throw UsageError("search_grid_family: need m, n >= 3");
  if (dim < 0) throw UsageError("search_grid_family: dimension must be nonnegative");
  const LabeledGraph host = grid_graph(spec.rows, spec.cols);

  GridFamily family{spec, host, {}, {}};
  if (dim == 0) {
    family.members.push_back(empty_graph(host.vertex_count()));
    return family;
  }
  // 2^dim members need 2^dim distinct probe traces over 4 host neighbors.
  if (dim > 4) return std::nullopt;

  MaskWorkspace ws{host.edges(), host.vertex_count()};
  const int edge_count = static_cast<int>(ws.host_edges.size());
  if (edge_count > 63)
    throw UsageError("search_grid_family: hosts beyond 63 edges are not supported");
  const std::uint64_t full = (std::uint64_t{1} << edge_count) - 1;
  const int target = (1 << dim) - 1;

  std::uint64_t evaluations = 0;
  for (std::uint64_t restart = 0; evaluations < budget; ++restart) {
    Rng rng = Rng::stream(seed, restart);
    std::vector<std::uint64_t> generators(dim);
    for (auto& g : generators) {
      do {
        g = rng.next() & full;
      } while (!ws.spanning_connected(g));
    }
    int best = ws.score(generators);
    evaluations += target;

    const std::uint64_t max_steps = 40'000;
    for (std::uint64_t step = 0; step < max_steps && best < target; ++step) {
      if (evaluations >= budget) break;
      const int gi = static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)));
      const int ei = static_cast<int>(rng.below(static_cast<std::uint64_t>(edge_count)));
      generators[gi] ^= std::uint64_t{1} << ei;
      const int s = ws.score(generators);
      evaluations += target;
      if (s >= best)
        best = s;  // accept sideways moves; plateaus are common here
      else
        generators[gi] ^= std::uint64_t{1} << ei;
    }

    if (best == target) {
      for (std::uint64_t g : generators) family.generators.push_back(ws.to_graph(g));
      for (int combo = 0; combo < (1 << dim); ++combo) {
        std::uint64_t mask = 0;
        for (int b = 0; b < dim; ++b)
          if ((combo >> b) & 1) mask ^= generators[b];
        family.members.push_back(ws.to_graph(mask));
      }
      GridCheck check = verify_grid_family(family);
      if (!check)
        throw VerificationError("search_grid_family: accepted family failed re-verification: " +
                                check.transcript);
      return family;
    }
  }
  return std::nullopt;
}

}  // namespace gcode
