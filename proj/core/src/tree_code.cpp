#include "gcode/tree_code.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace gcode {

namespace {

int popcount64(std::uint64_t x) { return std::popcount(x); }

// Ordinal <-> even-weight index mask over the n-1 index matchings: the low
// n-2 bits are the ordinal, the top bit fixes the parity.
std::uint64_t ordinal_to_mask(std::uint64_t ordinal, int n) {
  const int bits = n - 2;
  std::uint64_t mask = ordinal;
  if (popcount64(ordinal) % 2 == 1) mask |= std::uint64_t{1} << bits;
  return mask;
}

std::uint32_t syndrome_part(const TreeCodeParams& params, std::uint64_t mask) {
  return syndrome(*params.part_code, mask);
}

std::uint32_t part_of_mask(const TreeCodeParams& params, std::uint64_t mask,
                           std::uint64_t ordinal) {
  if (params.coloring == PartColoring::syndrome) return syndrome_part(params, mask);
  return params.greedy_colors[ordinal];
}

std::size_t part_rank(const TreeCodeParams& params, std::uint32_t part) {
  const auto it = std::lower_bound(params.part_ids.begin(), params.part_ids.end(), part);
  if (it == params.part_ids.end() || *it != part)
    throw VerificationError("tree code: member produced an unmapped part id");
  return static_cast<std::size_t>(it - params.part_ids.begin());
}

LabeledGraph h_layer(const TreeCodeParams& params, std::uint32_t part) {
  LabeledGraph layer(params.n);
  const Word word = params.h_code.words.at(part_rank(params, part));
  for (std::size_t j = 0; j < params.reserved_edge_slots.size(); ++j)
    if ((word >> j) & 1) layer.set_slot(params.reserved_edge_slots[j]);
  return layer;
}

}  // namespace

std::uint64_t member_matching_mask(const TreeCodeParams& params, std::uint64_t index) {
  if (index >= params.family_size())
    throw UsageError("tree code: member index out of range");
  if (params.variant == TreeCodeVariant::gv_partition)
    return ordinal_to_mask(index, params.n);
  Word cw = 0;
  for (int b = 0; b < params.index_bits(); ++b)
    if ((index >> b) & 1) cw ^= params.member_words[b];
  return cw;
}

std::uint32_t member_part(const TreeCodeParams& params, std::uint64_t index) {
  if (params.variant != TreeCodeVariant::gv_partition || params.leaves < 3)
    throw UsageError("member_part: family has no part layer");
  return part_of_mask(params, member_matching_mask(params, index), index);
}

LabeledGraph member(const TreeCodeParams& params, std::uint64_t index) {
  const std::uint64_t mask = member_matching_mask(params, index);
  LabeledGraph g(params.n);
  for (int i = 0; i < params.n; ++i)
    if ((mask >> i) & 1) g |= params.matchings.matchings[i];
  if (params.variant == TreeCodeVariant::gv_partition && params.leaves >= 3)
    g |= h_layer(params, part_of_mask(params, mask, index));
  return g;
}

AugmentResult augment_to_leaves(const std::vector<int>& path_sequence,
                                std::vector<std::pair<int, int>> extra_edges, int leaves) {
  const int n = static_cast<int>(path_sequence.size());
  if (n < 2) throw UsageError("augment_to_leaves: path must cover at least 2 vertices");
  if (leaves < 2) throw UsageError("augment_to_leaves: need leaves >= 2");
  if (leaves > n - 1) throw UsageError("augment_to_leaves: a spanning tree on n vertices has at most n-1 leaves");

  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) {
    const int v = path_sequence[i];
    if (v < 0 || v >= n || position[v] != -1)
      throw UsageError("augment_to_leaves: path sequence is not a permutation of [n]");
    position[v] = i;
  }

  // Pool edges as path-position pairs (i, j), i < j.
  struct PoolEdge {
    int i, j;
  };
  std::vector<PoolEdge> pool;
  std::vector<bool> endpoint_seen(n, false);
  for (auto [u, v] : extra_edges) {
    int i = position.at(u), j = position.at(v);
    if (i > j) std::swap(i, j);
    if (j == i + 1)
      throw UsageError("augment_to_leaves: extra edge coincides with a path edge");
    if (endpoint_seen[i] || endpoint_seen[j])
      throw UsageError("augment_to_leaves: extra edges are not vertex-disjoint");
    endpoint_seen[i] = endpoint_seen[j] = true;
    pool.push_back({i, j});
  }
  // A pool of >= 3*leaves-5 edges guarantees completion; smaller pools may
  // still succeed (each round consumes at most 3) and fail loudly otherwise.

  LabeledGraph tree(n);
  for (int i = 0; i + 1 < n; ++i) tree.set_edge(path_sequence[i], path_sequence[i + 1]);
  AugmentResult result{std::move(tree), {}, {}};

  // Discard the pool edge at the path's last vertex, if any (at most one,
  // since pool edges are vertex-disjoint).
  std::erase_if(pool, [n](const PoolEdge& e) { return e.j == n - 1; });

  int current_leaves = 2;
  for (int round = 0; round < leaves - 2; ++round) {
    if (pool.empty())
      throw VerificationError("augment_to_leaves: pool exhausted before reaching the leaf target");
    // Smallest i, then smallest j.
    std::size_t pick = 0;
    for (std::size_t t = 1; t < pool.size(); ++t)
      if (pool[t].i < pool[pick].i || (pool[t].i == pool[pick].i && pool[t].j < pool[pick].j))
        pick = t;
    const PoolEdge e = pool[pick];

    result.tree.set_edge(path_sequence[e.i], path_sequence[e.j]);
    result.tree.set_edge(path_sequence[e.i], path_sequence[e.i + 1], false);
    result.extra_edges_used.emplace_back(path_sequence[e.i], path_sequence[e.j]);

    int consumed = 0;
    std::erase_if(pool, [&](const PoolEdge& p) {
      const bool hit = (p.i == e.i && p.j == e.j) || p.i == e.i + 1 || p.j == e.i + 1 ||
                       p.i == e.j - 1 || p.j == e.j - 1;
      if (hit) ++consumed;
      return hit;
    });

    ++current_leaves;
    const auto verified = spanning_tree_leaf_count(result.tree);
    if (!verified || *verified != current_leaves)
      throw VerificationError("augment_to_leaves: round invariant violated (leaf count)");
    if (consumed > 3)
      throw VerificationError("augment_to_leaves: round invariant violated (pool consumption)");
    result.rounds.push_back({{path_sequence[e.i], path_sequence[e.j]},
                             {path_sequence[e.i], path_sequence[e.i + 1]},
                             consumed,
                             current_leaves});
  }
  return result;
}

namespace {

std::vector<std::uint32_t> greedy_distance2_coloring(int n) {
  // Vertices: ordinals of the 2^{n-2} even-weight masks; neighbors differ in
  // exactly two mask bits. Sequential greedy in ordinal order.
  const int bits = n - 2;
  const std::uint64_t count = std::uint64_t{1} << bits;
  std::vector<std::uint32_t> color(count, 0);
  std::vector<char> used;  // scratch: colors seen among earlier neighbors
  for (std::uint64_t ord = 1; ord < count; ++ord) {
    const std::uint64_t mask = ordinal_to_mask(ord, n);
    used.assign(used.size(), 0);
    auto mark = [&](std::uint32_t c) {
      if (c >= used.size()) used.resize(c + 1, 0);
      used[c] = 1;
    };
    for (int a = 0; a < n - 1; ++a)
      for (int b = a + 1; b < n - 1; ++b) {
        const std::uint64_t other =
            mask ^ (std::uint64_t{1} << a) ^ (std::uint64_t{1} << b);
        const std::uint64_t other_ord = other & ((std::uint64_t{1} << bits) - 1);
        if (other_ord < ord) mark(color[other_ord]);
      }
    std::uint32_t c = 0;
    while (c < used.size() && used[c]) ++c;
    color[ord] = c;
  }
  return color;
}

std::vector<std::uint32_t> achievable_syndromes(const BinaryCode& part_code, int n) {
  // Image of the even-weight index space under the syndrome map: the span of
  // the syndromes of e_0 ^ e_j, enumerated explicitly (it is tiny).
  const int bits = n - 1;
  std::vector<std::uint32_t> gens;
  for (int j = 1; j < bits; ++j)
    gens.push_back(syndrome(part_code, (Word{1} << 0) ^ (Word{1} << j)));
  std::vector<std::uint32_t> reduced;
  for (std::uint32_t g : gens) {
    std::uint32_t cur = g;
    for (std::uint32_t b : reduced) cur = std::min(cur, cur ^ b);
    if (cur) reduced.push_back(cur);
  }
  // One pass of the min trick is not a full reduction; redo until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& v : reduced)
      for (auto& w : reduced)
        if (&v != &w && (v ^ w) < v) {
          v ^= w;
          changed = true;
        }
    std::erase(reduced, 0u);
  }
  std::vector<std::uint32_t> image{0};
  for (std::uint32_t b : reduced) {
    const std::size_t sz = image.size();
    for (std::size_t i = 0; i < sz; ++i) image.push_back(image[i] ^ b);
  }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image;
}

std::vector<std::size_t> matching_slots(const LabeledGraph& matching) {
  std::vector<std::size_t> slots;
  const int n = matching.vertex_count();
  for (auto [u, v] : matching.edges()) slots.push_back(edge_index(u, v, n));
  std::sort(slots.begin(), slots.end());
  return slots;
}

}  // namespace

TreeCodeParams build_treecode(int n, int leaves, const OneFactorization& factorization,
                              PartColoring coloring, ScanOrder h_order, std::uint64_t seed) {
  if (n < 3 || n % 2 == 0) throw UsageError("build_treecode: n must be odd and >= 3");
  if (n > 63) throw UsageError("build_treecode: n exceeds 63");
  if (leaves < 2) throw UsageError("build_treecode: need leaves >= 2");
  if (factorization.order != n + 1)
    throw UsageError("build_treecode: factorization order must be n+1");

  TreeCodeParams params;
  params.variant = TreeCodeVariant::gv_partition;
  params.n = n;
  params.leaves = leaves;
  params.matchings = restrict_to_n(factorization);  // verifies the factorization
  params.reserved = n - 1;
  params.coloring = coloring;

  if (leaves == 2) return params;  // degenerate family: matching unions only

  // Same-part pairs draw their extra edges from a third matching of the
  // difference, so the matching size must cover the requirement.
  const int needed_extras = 3 * leaves - 5;
  if ((n - 1) / 2 < needed_extras) {
    std::ostringstream msg;
    msg << "build_treecode: infeasible: a matching has " << (n - 1) / 2
        << " edges but " << needed_extras << " disjoint extras are required (leaves="
        << leaves << " needs n >= " << 6 * leaves - 9 << ")";
    throw UsageError(msg.str());
  }

  if (coloring == PartColoring::syndrome) {
    params.part_code = even_d4_linear(n - 1);
    params.part_ids = achievable_syndromes(*params.part_code, n);
  } else {
    if (n > 17)
      throw UsageError("build_treecode: greedy coloring walks the whole index space; use syndrome coloring for n > 17");
    params.greedy_colors = greedy_distance2_coloring(n);
    std::uint32_t max_color = 0;
    for (std::uint32_t c : params.greedy_colors) max_color = std::max(max_color, c);
    params.part_ids.resize(max_color + 1);
    for (std::uint32_t c = 0; c <= max_color; ++c) params.part_ids[c] = c;
  }

  const std::uint64_t parts_needed = params.part_ids.size();
  GvResult gv = gv_greedy((n - 1) / 2, needed_extras, h_order, parts_needed, seed);
  if (gv.shortfall) {
    std::ostringstream msg;
    msg << "build_treecode: infeasible: part assignment needs " << parts_needed
        << " codewords of length " << (n - 1) / 2 << " at distance " << needed_extras
        << " but the greedy scan found only " << gv.code.words.size();
    throw UsageError(msg.str());
  }
  params.h_code = std::move(gv.code);
  params.reserved_edge_slots = matching_slots(params.matchings.matchings[params.reserved]);
  return params;
}

TreeCodeParams build_hamming_treecode(int k, int leaves,
                                      const OneFactorization& factorization) {
  if (k < 2) throw UsageError("build_hamming_treecode: need k >= 2");
  const int n = (1 << k) - 1;
  if (leaves < 3 || 6 * leaves > n + 9) {
    std::ostringstream msg;
    msg << "build_hamming_treecode: leaves must lie in [3, (n+9)/6] = [3, " << (n + 9) / 6
        << "] for n = " << n;
    throw UsageError(msg.str());
  }
  if (factorization.order != n + 1)
    throw UsageError("build_hamming_treecode: factorization order must be n+1 = 2^k");

  TreeCodeParams params;
  params.variant = TreeCodeVariant::hamming;
  params.n = n;
  params.leaves = leaves;
  params.hamming_k = k;
  params.matchings = restrict_to_n(factorization);
  params.reserved = -1;  // all n matchings are indexable

  const BinaryCode hamming = hamming_code(k);
  params.member_words = even_weight_subbasis(hamming.linear->basis);
  if (static_cast<int>(params.member_words.size()) != n - k - 1)
    throw VerificationError("build_hamming_treecode: even subcode has unexpected dimension");
  return params;
}

namespace {

std::vector<int> set_bits(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

PairCertificate verify_pair(const TreeCodeParams& params, std::uint64_t index_i,
                            std::uint64_t index_j) {
  if (index_i == index_j) throw UsageError("verify_pair: indices must differ");
  const std::uint64_t mask_i = member_matching_mask(params, index_i);
  const std::uint64_t mask_j = member_matching_mask(params, index_j);
  const std::uint64_t diff = mask_i ^ mask_j;
  const std::vector<int> diff_matchings = set_bits(diff);

  if (diff_matchings.size() < 2)
    throw VerificationError("verify_pair: member pair differs in fewer than 2 matchings");

  const int a = diff_matchings[0];
  const int b = diff_matchings[1];
  const LabeledGraph path_union =
      graph_union(params.matchings.matchings[a], params.matchings.matchings[b]);
  const std::vector<int> sequence = hamiltonian_path_sequence(path_union);

  // Extra edges: H-layer difference when the parts differ, a third matching
  // of the difference otherwise (the part contract guarantees one exists).
  std::vector<std::pair<int, int>> extras;
  if (params.variant == TreeCodeVariant::gv_partition && params.leaves >= 3) {
    const std::uint32_t part_i = part_of_mask(params, mask_i, index_i);
    const std::uint32_t part_j = part_of_mask(params, mask_j, index_j);
    if (part_i != part_j) {
      const LabeledGraph h = symdiff(h_layer(params, part_i), h_layer(params, part_j));
      extras = h.edges();
    } else {
      if (diff_matchings.size() < 4)
        throw VerificationError(
            "verify_pair: same-part members differ in fewer than 4 matchings");
      extras = params.matchings.matchings[diff_matchings[2]].edges();
    }
  } else if (params.variant == TreeCodeVariant::hamming) {
    if (diff_matchings.size() < 3)
      throw VerificationError("verify_pair: hamming members differ in fewer than 3 matchings");
    extras = params.matchings.matchings[diff_matchings[2]].edges();
  }

  AugmentResult augmented = augment_to_leaves(sequence, extras, params.leaves);

  PairCertificate certificate{std::move(augmented.tree), a, b,
                              std::move(augmented.extra_edges_used)};
  PairCheck check = check_certificate(params, index_i, index_j, certificate);
  if (!check.ok)
    throw VerificationError("verify_pair: certificate failed the independent check:\n" +
                            check.transcript);
  return certificate;
}

PairCheck check_certificate(const TreeCodeParams& params, std::uint64_t index_i,
                            std::uint64_t index_j, const PairCertificate& certificate) {
  std::ostringstream transcript;
  transcript << "pair (" << index_i << ", " << index_j << ")";
  const LabeledGraph difference = symdiff(member(params, index_i), member(params, index_j));
  if (!certificate.tree.subgraph_of(difference)) {
    transcript << ": tree is not contained in the symmetric difference";
    return {false, transcript.str()};
  }
  const auto leaf_count = spanning_tree_leaf_count(certificate.tree);
  if (!leaf_count) {
    transcript << ": certificate graph is not a spanning tree (edges="
               << certificate.tree.edge_count() << ", connected="
               << is_spanning_connected(certificate.tree) << ")";
    return {false, transcript.str()};
  }
  if (*leaf_count != params.leaves) {
    transcript << ": tree has " << *leaf_count << " leaves, expected " << params.leaves;
    return {false, transcript.str()};
  }
  transcript << ": ok (" << *leaf_count << " leaves)";
  return {true, transcript.str()};
}

}  // namespace gcode
