#include "gcode/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace gcode {

std::string PredicateSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::connected: return "connected";
    case Kind::contains_pattern:
      out << "contains:" << pattern->name();
      break;
    case Kind::k_copies:
      out << "kcopies:" << pattern->name() << ":" << k;
      break;
    case Kind::k_disjoint:
      out << "kdisjoint:" << pattern->name() << ":" << k;
      break;
    case Kind::spanning_tree_leaves:
      out << "leaves:" << leaves;
      break;
    case Kind::contains_ktt:
      out << "ktt:" << t;
      break;
  }
  return out.str();
}

namespace {

// Does g contain a spanning tree with exactly `leaves` leaves? Exhaustive
// over (n-1)-subsets of g's edges; tiny-n use only.
bool has_spanning_tree_with_leaves(const LabeledGraph& g, int leaves) {
  const int n = g.vertex_count();
  const auto edge_list = g.edges();
  const int e = static_cast<int>(edge_list.size());
  if (e < n - 1) return false;
  if (n == 1) return leaves == 0;  // the empty tree on one vertex has no leaf
  std::vector<int> pick(n - 1);
  for (int i = 0; i < n - 1; ++i) pick[i] = i;
  while (true) {
    LabeledGraph t(n);
    for (int i : pick) t.set_edge(edge_list[i].first, edge_list[i].second);
    if (auto count = spanning_tree_leaf_count(t); count && *count == leaves) return true;
    int pos = n - 2;
    while (pos >= 0 && pick[pos] == e - (n - 1) + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int j = pos + 1; j < n - 1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return false;
}

}  // namespace

bool PredicateSpec::evaluate(const LabeledGraph& g) const {
  switch (kind) {
    case Kind::connected:
      return is_spanning_connected(g);
    case Kind::contains_pattern:
      return count_copies(g, *pattern) >= 1;
    case Kind::k_copies:
      return count_copies(g, *pattern) >= k;
    case Kind::k_disjoint: {
      const DisjointCopies packing = max_disjoint_copies(g, *pattern);
      if (!packing.exact && packing.count < static_cast<int>(k))
        throw ResourceError("predicate: disjoint packing was not solved exactly");
      return packing.count >= static_cast<int>(k);
    }
    case Kind::spanning_tree_leaves:
      return has_spanning_tree_with_leaves(g, leaves);
    case Kind::contains_ktt:
      return contains_kst(g, t, t);
  }
  throw UsageError("predicate: unknown kind");
}

PredicateSpec parse_predicate(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  PredicateSpec spec;
  const std::string& head = parts[0];
  if (head == "connected") {
    spec.kind = PredicateSpec::Kind::connected;
  } else if (head == "contains" && parts.size() == 2) {
    spec.kind = PredicateSpec::Kind::contains_pattern;
    spec.pattern = pattern_by_name(parts[1]);
  } else if (head == "kcopies" && parts.size() == 3) {
    spec.kind = PredicateSpec::Kind::k_copies;
    spec.pattern = pattern_by_name(parts[1]);
    spec.k = std::stoull(parts[2]);
  } else if (head == "kdisjoint" && parts.size() == 3) {
    spec.kind = PredicateSpec::Kind::k_disjoint;
    spec.pattern = pattern_by_name(parts[1]);
    spec.k = std::stoull(parts[2]);
  } else if (head == "leaves" && parts.size() == 2) {
    spec.kind = PredicateSpec::Kind::spanning_tree_leaves;
    spec.leaves = std::stoi(parts[1]);
  } else if (head == "ktt" && parts.size() == 2) {
    spec.kind = PredicateSpec::Kind::contains_ktt;
    spec.t = std::stoi(parts[1]);
  } else {
    throw UsageError("parse_predicate: unrecognized predicate: " + text);
  }
  return spec;
}

LabeledGraph graph_from_code(std::uint64_t code, int n) {
  LabeledGraph g(n);
  for (std::size_t slot = 0; slot < g.slot_count(); ++slot)
    if ((code >> slot) & 1) g.set_slot(slot);
  return g;
}

std::uint64_t code_from_graph(const LabeledGraph& g) {
  if (g.slot_count() > 63) throw UsageError("code_from_graph: graph too large");
  return g.words().empty() ? 0 : g.words()[0];
}

namespace {

// good[x] = predicate(graph of code x); the compatibility relation between
// codes a and b depends only on a ^ b (the observation that makes the
// paper's compatibility graph regular).
std::vector<char> predicate_table(int n, const PredicateSpec& predicate) {
  const std::size_t slots = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (slots > 20) throw UsageError("oracle: n is limited to C(n,2) <= 20 slots");
  const std::uint64_t total = std::uint64_t{1} << slots;
  std::vector<char> good(total, 0);
  for (std::uint64_t x = 0; x < total; ++x)
    good[x] = predicate.evaluate(graph_from_code(x, n)) ? 1 : 0;
  return good;
}

// Dense bitset max-clique (Tomita-style greedy coloring bound) over the
// Cayley graph adjacency(a, b) = table[a ^ b]. Vertex count <= 1024.
class CliqueSolver {
 public:
  CliqueSolver(const std::vector<char>& table, std::uint64_t budget)
      : table_(table), vertex_count_(table.size()), budget_(budget),
        row_words_((vertex_count_ + 63) / 64) {
    // Materialized neighbor rows keep the hot path word-parallel.
    rows_.assign(vertex_count_ * row_words_, 0);
    for (std::size_t a = 0; a < vertex_count_; ++a)
      for (std::size_t b = 0; b < vertex_count_; ++b)
        if (table_[a ^ b])
          rows_[a * row_words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  }

  std::uint64_t solve(std::vector<std::uint32_t>& best_clique) {
    std::vector<std::uint64_t> candidates(row_words_, 0);
    for (std::size_t v = 0; v < vertex_count_; ++v)
      candidates[v >> 6] |= std::uint64_t{1} << (v & 63);

    // Greedy warm start from 0 (every translate of a clique is a clique, so
    // rooting the seed there loses nothing) to arm the color bound early.
    best_clique = {0};
    {
      std::vector<std::uint64_t> open(rows_.begin(), rows_.begin() + row_words_);
      while (true) {
        const std::uint32_t v = first_bit(open);
        if (v == kNone) break;
        best_clique.push_back(v);
        std::vector<std::uint64_t> next(row_words_);
        mask_row(v, open, next);
        open = std::move(next);
      }
    }

    std::vector<std::uint32_t> current;
    expand(candidates, current, best_clique);
    return best_clique.size();
  }

  bool truncated() const { return truncated_; }

 private:
  void mask_row(std::uint32_t v, const std::vector<std::uint64_t>& in,
                std::vector<std::uint64_t>& out) const {
    const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * row_words_;
    for (std::size_t w = 0; w < row_words_; ++w) out[w] = in[w] & row[w];
  }

  void expand(std::vector<std::uint64_t>& candidates, std::vector<std::uint32_t>& current,
              std::vector<std::uint32_t>& best) {
    if (truncated_) return;
    if (++nodes_ > budget_) {
      truncated_ = true;  // unwind; `best` stays a valid lower bound
      return;
    }

    // Greedy coloring upper bound; vertices ordered by color descending.
    std::vector<std::uint32_t> order;
    std::vector<int> color_of;
    {
      std::vector<std::uint64_t> uncolored = candidates;
      int color = 0;
      while (true) {
        bool any = false;
        for (std::size_t w = 0; w < row_words_; ++w)
          if (uncolored[w]) any = true;
        if (!any) break;
        ++color;
        std::vector<std::uint64_t> available = uncolored;
        while (true) {
          std::uint32_t v = first_bit(available);
          if (v == kNone) break;
          clear_bit(uncolored, v);
          clear_bit(available, v);
          order.push_back(v);
          color_of.push_back(color);
          // Remove v's neighbors from this color class.
          const std::uint64_t* row = rows_.data() + static_cast<std::size_t>(v) * row_words_;
          for (std::size_t w = 0; w < row_words_; ++w) available[w] &= ~row[w];
        }
      }
    }

    for (std::size_t i = order.size(); i-- > 0;) {
      const std::uint32_t v = order[i];
      if (current.size() + color_of[i] <= best.size()) return;
      current.push_back(v);
      std::vector<std::uint64_t> next(row_words_);
      mask_row(v, candidates, next);
      // Only vertices later in the order remain eligible.
      for (std::size_t j = i; j < order.size(); ++j) clear_bit(next, order[j]);
      bool any = false;
      for (std::size_t w = 0; w < row_words_; ++w)
        if (next[w]) any = true;
      if (any)
        expand(next, current, best);
      else if (current.size() > best.size())
        best = current;
      current.pop_back();
      clear_bit(candidates, v);
      if (truncated_) return;
    }
  }

  static constexpr std::uint32_t kNone = ~std::uint32_t{0};

  std::uint32_t first_bit(const std::vector<std::uint64_t>& bits) const {
    for (std::size_t w = 0; w < row_words_; ++w)
      if (bits[w]) return static_cast<std::uint32_t>((w << 6) + std::countr_zero(bits[w]));
    return kNone;
  }

  static void clear_bit(std::vector<std::uint64_t>& bits, std::uint32_t v) {
    bits[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  const std::vector<char>& table_;
  std::size_t vertex_count_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> rows_;
  std::size_t row_words_;
  std::uint64_t nodes_ = 0;
  bool truncated_ = false;
};

std::uint64_t max_clique_cayley(const std::vector<char>& table, std::uint64_t budget,
                                std::vector<std::uint32_t>* witness,
                                const std::string& what) {
  std::vector<std::uint32_t> best;
  CliqueSolver solver(table, budget);
  solver.solve(best);
  if (solver.truncated())
    throw ResourceError(what + ": budget exceeded; best-found lower bound = " +
                        std::to_string(best.size()));
  if (witness) *witness = best;
  return best.size();
}

void check_oracle_n(int n) {
  if (n < 2) throw UsageError("oracle: need n >= 2");
  if (n > 5) throw UsageError("oracle: exact search is limited to n <= 5");
}

}  // namespace

OracleResult exact_MF(int n, const PredicateSpec& predicate, std::uint64_t budget) {
  check_oracle_n(n);
  std::vector<char> good = predicate_table(n, predicate);
  good[0] = 0;  // a family never pairs a graph with itself; 0 must not be an edge

  std::vector<std::uint32_t> witness;
  const std::uint64_t m = max_clique_cayley(good, budget, &witness, "exact_MF");

  OracleResult result;
  result.n = n;
  result.predicate = predicate.describe();
  result.m_exact = m;
  std::sort(witness.begin(), witness.end());
  for (std::uint32_t code : witness)
    result.witness_family.push_back(graph_from_code(code, n));

  // Re-verify the witness pair by pair, independently of the clique search.
  for (std::size_t i = 0; i < result.witness_family.size(); ++i)
    for (std::size_t j = i + 1; j < result.witness_family.size(); ++j)
      if (!predicate.evaluate(symdiff(result.witness_family[i], result.witness_family[j])))
        throw VerificationError("exact_MF: witness family failed re-verification");
  return result;
}

std::uint64_t exact_DF(int n, const PredicateSpec& predicate, std::uint64_t budget) {
  check_oracle_n(n);
  std::vector<char> good = predicate_table(n, predicate);
  std::vector<char> bad(good.size());
  for (std::size_t i = 0; i < good.size(); ++i) bad[i] = good[i] ? 0 : 1;
  bad[0] = 0;
  return max_clique_cayley(bad, budget, nullptr, "exact_DF");
}

std::uint64_t count_bad_graphs(int n, const PredicateSpec& predicate) {
  if (n < 1) throw UsageError("count_bad_graphs: need n >= 1");
  if (n > 6) throw UsageError("count_bad_graphs: limited to n <= 6");
  const std::size_t slots = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << slots;
  std::uint64_t bad = 0;
  for (std::uint64_t x = 0; x < total; ++x)
    if (!predicate.evaluate(graph_from_code(x, n))) ++bad;
  return bad;
}

double greedy_rate_lower_bound(int n, const PredicateSpec& predicate) {
  const std::uint64_t bad = count_bad_graphs(n, predicate);
  const double slots = static_cast<double>(n) * (n - 1) / 2.0;
  return slots - std::log2(static_cast<double>(bad) + 1.0);
}

}  // namespace gcode
