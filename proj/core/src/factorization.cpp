#include "gcode/factorization.hpp"

#include <algorithm>
#include <functional>

namespace gcode {

namespace {

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

bool is_perfect_matching(const LabeledGraph& g) {
  for (int d : g.degrees())
    if (d != 1) return false;
  return true;
}

// A union of two perfect matchings is a Hamiltonian cycle iff it is
// connected with m edges (2-regularity is automatic).
bool pair_union_is_hamiltonian_cycle(const LabeledGraph& a, const LabeledGraph& b) {
  LabeledGraph u = graph_union(a, b);
  if (u.edge_count() != static_cast<std::size_t>(u.vertex_count())) return false;
  return is_spanning_connected(u);
}

}  // namespace

OneFactorization kotzig_p1f(int p) {
  if (!is_odd_prime(p)) throw UsageError("kotzig_p1f: p must be an odd prime");
  if (p + 1 > 64) throw UsageError("kotzig_p1f: order p+1 exceeds 64");
  const int m = p + 1;
  const int inf = p;
  OneFactorization f;
  f.order = m;
  f.factors.reserve(p);
  for (int i = 0; i < p; ++i) {
    LabeledGraph factor(m);
    factor.set_edge(inf, i);
    for (int k = 1; k <= (p - 1) / 2; ++k)
      factor.set_edge((i + k) % p, ((i - k) % p + p) % p);
    f.factors.push_back(std::move(factor));
  }
  P1fCheck check = verify_perfect(f);
  if (!check)
    throw VerificationError("kotzig_p1f: construction failed verification: " + check.violation);
  return f;
}

OneFactorization round_robin_factorization(int m) {
  if (m < 4 || m % 2 != 0) throw UsageError("round_robin_factorization: m must be even, >= 4");
  if (m > 64) throw UsageError("round_robin_factorization: m exceeds 64");
  const int cycle = m - 1;
  OneFactorization f;
  f.order = m;
  f.factors.reserve(cycle);
  for (int i = 0; i < cycle; ++i) {
    LabeledGraph factor(m);
    factor.set_edge(m - 1, i);
    for (int k = 1; k <= (cycle - 1) / 2; ++k)
      factor.set_edge((i + k) % cycle, ((i - k) % cycle + cycle) % cycle);
    f.factors.push_back(std::move(factor));
  }
  return f;
}

P1fCheck verify_perfect(const OneFactorization& f) {
  const int m = f.order;
  if (m < 4 || m % 2 != 0)
    return {false, "order must be even and >= 4", -1, -1};
  if (f.factors.size() != static_cast<std::size_t>(m - 1))
    return {false, "factor count must be order-1", -1, -1};
  for (int i = 0; i < m - 1; ++i) {
    if (f.factors[i].vertex_count() != m)
      return {false, "factor on wrong vertex set", i, -1};
    if (!is_perfect_matching(f.factors[i]))
      return {false, "factor is not a perfect matching", i, -1};
  }
  for (int i = 0; i < m - 1; ++i)
    for (int j = i + 1; j < m - 1; ++j)
      if (f.factors[i].intersects(f.factors[j]))
        return {false, "factors share an edge (not a partition)", i, j};
  LabeledGraph all(m);
  for (const auto& factor : f.factors) all |= factor;
  if (all != complete_graph(m))
    return {false, "factors do not cover E(K_m)", -1, -1};
  for (int i = 0; i < m - 1; ++i)
    for (int j = i + 1; j < m - 1; ++j)
      if (!pair_union_is_hamiltonian_cycle(f.factors[i], f.factors[j]))
        return {false, "pair union is not a Hamiltonian cycle", i, j};
  return {};
}

namespace {

// ---- search_p1f ----------------------------------------------------------

struct P1fSearch {
  int m;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  std::vector<LabeledGraph> factors;

  // All perfect matchings of K_m that avoid `used` edges, lexicographically
  // ordered as edge-slot bitsets are generated in increasing vertex order.
  void matchings_from(const LabeledGraph& used, LabeledGraph& current,
                      std::vector<int>& covered, int covered_count,
                      const std::function<bool(const LabeledGraph&)>& emit, bool& stop) {
    if (stop) return;
    if (covered_count == m) {
      if (!emit(current)) stop = true;
      return;
    }
    if (++nodes > budget) {
      out_of_budget = true;
      stop = true;
      return;
    }
    int u = 0;
    while (covered[u]) ++u;
    covered[u] = 1;
    for (int v = u + 1; v < m; ++v) {
      if (covered[v] || used.edge(u, v)) continue;
      covered[v] = 1;
      current.set_edge(u, v);
      matchings_from(used, current, covered, covered_count + 2, emit, stop);
      current.set_edge(u, v, false);
      covered[v] = 0;
      if (stop) break;
    }
    covered[u] = 0;
  }

  bool extend(LabeledGraph& used) {
    if (static_cast<int>(factors.size()) == m - 1) return true;
    LabeledGraph current(m);
    std::vector<int> covered(m, 0);
    bool stop = false;
    bool found = false;
    auto emit = [&](const LabeledGraph& candidate) -> bool {
      // Keep factors lexicographically increasing (set-of-factors symmetry).
      if (!factors.empty() && !lex_less(factors.back(), candidate)) return true;
      for (const auto& prev : factors)
        if (!pair_union_is_hamiltonian_cycle(prev, candidate)) return true;
      factors.push_back(candidate);
      used |= candidate;
      if (extend(used)) {
        found = true;
        return false;  // unwind
      }
      used ^= candidate;
      factors.pop_back();
      return !out_of_budget;
    };
    matchings_from(used, current, covered, 0, emit, stop);
    return found;
  }

  static bool lex_less(const LabeledGraph& a, const LabeledGraph& b) {
    // Compare as edge-slot bitsets, lowest slot most significant so that the
    // matching containing edge {0,1} sorts before one containing {0,2}.
    for (std::size_t i = 0; i < a.slot_count(); ++i) {
      const bool x = a.slot(i), y = b.slot(i);
      if (x != y) return x > y;
    }
    return false;
  }
};

}  // namespace

std::optional<OneFactorization> search_p1f(int m, std::uint64_t node_budget) {
  if (m % 2 != 0) throw UsageError("search_p1f: order must be even");
  if (m < 4 || m > 14) throw UsageError("search_p1f: order must be in [4, 14]");
  P1fSearch search{m, node_budget};

  // Factor 0 pinned to the lexicographically least perfect matching: any
  // 1-factorization can be relabeled so its first factor is {01, 23, ...}.
  LabeledGraph first(m);
  for (int v = 0; v < m; v += 2) first.set_edge(v, v + 1);
  search.factors.push_back(first);
  LabeledGraph used = first;

  if (!search.extend(used)) return std::nullopt;
  OneFactorization f{m, std::move(search.factors)};
  P1fCheck check = verify_perfect(f);
  if (!check)
    throw VerificationError("search_p1f: search result failed verification: " + check.violation);
  return f;
}

RestrictedMatchingSystem restrict_to_n(const OneFactorization& f) {
  P1fCheck check = verify_perfect(f);
  if (!check)
    throw UsageError("restrict_to_n: input is not a verified perfect 1-factorization: " +
                     check.violation);
  const int m = f.order;
  const int n = m - 1;
  const int dropped = m - 1;  // highest-labeled vertex
  RestrictedMatchingSystem sys;
  sys.n = n;
  sys.matchings.reserve(n);
  sys.missed_vertex.reserve(n);
  for (const auto& factor : f.factors) {
    LabeledGraph restricted(n);
    int missed = -1;
    for (auto [u, v] : factor.edges()) {
      if (v == dropped) {
        missed = u;
        continue;
      }
      restricted.set_edge(u, v);
    }
    sys.matchings.push_back(std::move(restricted));
    sys.missed_vertex.push_back(missed);
  }
  // Certify the Hamiltonian-path property for every pair.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      LabeledGraph u = graph_union(sys.matchings[i], sys.matchings[j]);
      if (u.edge_count() != static_cast<std::size_t>(n - 1) || !is_spanning_connected(u))
        throw VerificationError("restrict_to_n: pair union is not a Hamiltonian path");
    }
  return sys;
}

std::vector<int> hamiltonian_path_sequence(const LabeledGraph& path_union) {
  const int n = path_union.vertex_count();
  std::vector<std::vector<int>> nbr(n);
  for (auto [u, v] : path_union.edges()) {
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }
  int start = -1;
  for (int v = 0; v < n; ++v) {
    if (nbr[v].size() > 2)
      throw UsageError("hamiltonian_path_sequence: a vertex has degree > 2");
    if (nbr[v].size() == 1 && start == -1) start = v;  // lower endpoint first
  }
  if (start == -1) throw UsageError("hamiltonian_path_sequence: no endpoint found");
  std::vector<int> seq;
  seq.reserve(n);
  int prev = -1, cur = start;
  while (true) {
    seq.push_back(cur);
    int next = -1;
    for (int w : nbr[cur])
      if (w != prev) {
        next = w;
        break;
      }
    if (next == -1) break;
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(seq.size()) != n)
    throw UsageError("hamiltonian_path_sequence: union does not cover all vertices");
  return seq;
}

}  // namespace gcode
