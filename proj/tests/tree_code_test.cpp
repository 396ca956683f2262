#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "gcode/rng.hpp"
#include "gcode/tree_code.hpp"

using namespace gcode;

TEST_CASE("augment_to_leaves: hand-simulated single round") {
  // path v0..v4, pool = {{v0, v2}}, target 3 leaves:
  // add v0v2, delete v0v1 -> tree {v0v2, v1v2, v2v3, v3v4}, leaves {v0, v1, v4}
  const std::vector<int> path{0, 1, 2, 3, 4};
  const AugmentResult r = augment_to_leaves(path, {{0, 2}}, 3);
  CHECK(r.tree == graph_from_edges(5, {{0, 2}, {1, 2}, {2, 3}, {3, 4}}));
  CHECK(spanning_tree_leaf_count(r.tree) == 3);
  REQUIRE(r.rounds.size() == 1);
  CHECK(r.rounds[0].added_edge == std::pair{0, 2});
  CHECK(r.rounds[0].deleted_edge == std::pair{0, 1});
}

TEST_CASE("augment_to_leaves: leaves = 2 returns the path unchanged") {
  const std::vector<int> path{3, 1, 4, 0, 2};
  const AugmentResult r = augment_to_leaves(path, {{3, 4}}, 2);
  CHECK(r.rounds.empty());
  CHECK(spanning_tree_leaf_count(r.tree) == 2);
  CHECK(r.tree == graph_from_edges(5, {{3, 1}, {1, 4}, {4, 0}, {0, 2}}));
}

TEST_CASE("augment_to_leaves: the edge at the path's last vertex is discarded first") {
  // pool = {{v1, v4}} where v4 is the last vertex: discarded up front, so the
  // pool runs dry before the single round -- the internal invariant fires.
  const std::vector<int> path{0, 1, 2, 3, 4};
  CHECK_THROWS_AS(augment_to_leaves(path, {{1, 4}}, 3), VerificationError);
  // {0,2},{1,3} are disjoint, none at v4: one round succeeds
  const AugmentResult r = augment_to_leaves(path, {{0, 2}, {1, 3}}, 3);
  CHECK(spanning_tree_leaf_count(r.tree) == 3);
}

TEST_CASE("augment_to_leaves input validation") {
  CHECK_THROWS_AS(augment_to_leaves({0, 1, 2}, {}, 1), UsageError);
  // not a permutation
  CHECK_THROWS_AS(augment_to_leaves({0, 1, 1}, {}, 2), UsageError);
  // extra edge equals a path edge
  CHECK_THROWS_AS(augment_to_leaves({0, 1, 2, 3, 4}, {{1, 2}, {3, 0}, {0, 2}, {1, 4}}, 3),
                  UsageError);
  // extra edges sharing a vertex
  CHECK_THROWS_AS(augment_to_leaves({0, 1, 2, 3, 4}, {{0, 2}, {0, 3}, {1, 3}, {1, 4}}, 3),
                  UsageError);
  // too many leaves for n
  CHECK_THROWS_AS(augment_to_leaves({0, 1, 2}, {{0, 2}}, 3), UsageError);
}

namespace {

// Random (path, pool, leaves) instance on n vertices. The pool is a random
// partial matching avoiding path edges and sized >= 3*leaves-5.
struct AugmentInstance {
  std::vector<int> path;
  std::vector<std::pair<int, int>> pool;
  int leaves;
};

AugmentInstance random_instance(Rng& rng, int max_n) {
  const int n = 7 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 6)));
  std::vector<int> path(n);
  for (int i = 0; i < n; ++i) path[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(path[i], path[rng.below(static_cast<std::uint64_t>(i + 1))]);

  std::vector<int> shuffled(n);
  for (int i = 0; i < n; ++i) shuffled[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(shuffled[i], shuffled[rng.below(static_cast<std::uint64_t>(i + 1))]);

  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[path[i]] = i;
  std::vector<std::pair<int, int>> pool;
  for (int i = 0; i + 1 < n; i += 2) {
    const int u = shuffled[i], v = shuffled[i + 1];
    if (std::abs(pos[u] - pos[v]) == 1) continue;  // path edge
    pool.emplace_back(u, v);
  }
  // leaves in [2, (|pool|+5)/3]
  const int max_leaves = (static_cast<int>(pool.size()) + 5) / 3;
  const int leaves = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                             std::max(1, max_leaves - 1))));
  return {path, pool, std::min(leaves, max_leaves)};
}

}  // namespace

TEST_CASE("augment_to_leaves property: exact leaf counts on random instances") {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const AugmentInstance inst = random_instance(rng, 51);
    const AugmentResult r = augment_to_leaves(inst.path, inst.pool, inst.leaves);
    CHECK(spanning_tree_leaf_count(r.tree) == inst.leaves);
    int previous = 2;
    for (const auto& round : r.rounds) {
      CHECK(round.leaves_after == previous + 1);
      CHECK(round.extra_edges_consumed <= 3);
      previous = round.leaves_after;
    }
  }
}

TEST_CASE("build_treecode n=5, leaves=2: the degenerate family, fully verified") {
  const TreeCodeParams params = build_treecode(5, 2, kotzig_p1f(5));
  CHECK(params.family_size() == 8);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 8; ++i) seen.insert(member(params, i).word(0));
  CHECK(seen.size() == 8);  // members are pairwise distinct
  for (std::uint64_t i = 0; i < 8; ++i)
    for (std::uint64_t j = i + 1; j < 8; ++j) {
      const PairCertificate cert = verify_pair(params, i, j);
      const PairCheck check = check_certificate(params, i, j, cert);
      CHECK(check.ok);
      CHECK(spanning_tree_leaf_count(cert.tree) == 2);
    }
}

TEST_CASE("build_treecode n=13, leaves=3, greedy coloring: genuinely infeasible") {
  CHECK_THROWS_WITH_AS(
      (void)build_treecode(13, 3, kotzig_p1f(13), PartColoring::greedy),
      doctest::Contains("infeasible"), UsageError);
}

TEST_CASE("build_treecode rejects leaf targets too large for the matchings") {
  // (n-1)/2 < 3*leaves-5 must be rejected up front
  CHECK_THROWS_AS((void)build_treecode(5, 3, kotzig_p1f(5)), UsageError);
}

TEST_CASE("treecode n=17, syndrome coloring: structure and sampled certificates") {
  const TreeCodeParams params = build_treecode(17, 3, kotzig_p1f(17));
  CHECK(params.family_size() == std::uint64_t{1} << 15);
  CHECK(params.part_ids.size() <= 32);  // syndrome space of even_d4_linear(16)
  CHECK(params.h_code.words.size() >= params.part_ids.size());
  CHECK(verify_min_distance(params.h_code) >= 4);

  // Same part id => indices differ in >= 4 matchings (the coloring contract),
  // checked directly on random index pairs.
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t i = rng.below(params.family_size());
    const std::uint64_t j = rng.below(params.family_size());
    if (i == j) continue;
    const std::uint64_t diff =
        member_matching_mask(params, i) ^ member_matching_mask(params, j);
    if (member_part(params, i) == member_part(params, j))
      CHECK(std::popcount(diff) >= 4);
    else
      CHECK(std::popcount(diff) >= 2);
  }

  for (int trial = 0; trial < 150; ++trial) {
    const std::uint64_t i = rng.below(params.family_size());
    const std::uint64_t j = rng.below(params.family_size());
    if (i == j) continue;
    const PairCertificate cert = verify_pair(params, i, j);
    CHECK(check_certificate(params, i, j, cert).ok);
  }
}

TEST_CASE("treecode n=17, greedy coloring cross-check (if feasible) or clean failure") {
  // The greedy coloring of the distance-2 graph may need more parts than the
  // best distance-4 code of length 8 provides (A(8,4) = 20). Either outcome
  // is acceptable; a successful build must verify end to end.
  try {
    const TreeCodeParams params =
        build_treecode(17, 3, kotzig_p1f(17), PartColoring::greedy);
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      const std::uint64_t i = rng.below(params.family_size());
      const std::uint64_t j = rng.below(params.family_size());
      if (i == j) continue;
      CHECK(check_certificate(params, i, j, verify_pair(params, i, j)).ok);
    }
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("infeasible") != std::string::npos);
  }
}

TEST_CASE("n=37 flagship scale: part contract assertable directly on indices") {
  const TreeCodeParams params = build_treecode(37, 3, kotzig_p1f(37));
  REQUIRE(params.part_code.has_value());
  Rng rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    const std::uint64_t i = rng.below(params.family_size());
    const std::uint64_t j = rng.below(params.family_size());
    if (i == j) continue;
    const std::uint64_t diff =
        member_matching_mask(params, i) ^ member_matching_mask(params, j);
    if (member_part(params, i) == member_part(params, j)) {
      // equal part => the index difference is a codeword of the part code
      CHECK(syndrome(*params.part_code, diff) == 0);
      CHECK(std::popcount(diff) >= 4);
    } else {
      // distinct parts => the assigned H words differ in >= 3*leaves-5 slots
      auto word_of = [&](std::uint64_t index) {
        const std::uint32_t part = member_part(params, index);
        const auto it =
            std::lower_bound(params.part_ids.begin(), params.part_ids.end(), part);
        return params.h_code.words[static_cast<std::size_t>(it - params.part_ids.begin())];
      };
      CHECK(std::popcount(word_of(i) ^ word_of(j)) >= 3 * params.leaves - 5);
    }
  }
}

TEST_CASE("n=37: certificate extra edges come from the right source per branch") {
  const TreeCodeParams params = build_treecode(37, 3, kotzig_p1f(37));
  const LabeledGraph& reserved = params.matchings.matchings[params.reserved];
  Rng rng(97);
  int same_seen = 0, cross_seen = 0;
  for (int trial = 0; trial < 3000 && (same_seen < 5 || cross_seen < 5); ++trial) {
    const std::uint64_t i = rng.below(params.family_size());
    const std::uint64_t j = rng.below(params.family_size());
    if (i == j) continue;
    const bool same = member_part(params, i) == member_part(params, j);
    if ((same && same_seen >= 5) || (!same && cross_seen >= 5)) continue;
    const PairCertificate cert = verify_pair(params, i, j);
    REQUIRE(check_certificate(params, i, j, cert).ok);
    LabeledGraph used(params.n);
    for (auto [u, v] : cert.extra_edges_used) used.set_edge(u, v);
    if (same) {
      ++same_seen;
      // extras drawn from a third matching of the index difference
      CHECK_FALSE(used.intersects(reserved));
    } else {
      ++cross_seen;
      // extras inside the reserved matching, and at least 3l-5 were offered
      CHECK(used.subgraph_of(reserved));
    }
  }
  CHECK(same_seen == 5);
  CHECK(cross_seen == 5);
}

TEST_CASE("member at the empty index is the H layer alone") {
  const TreeCodeParams params = build_treecode(17, 3, kotzig_p1f(17));
  CHECK(member_matching_mask(params, 0) == 0);
  const LabeledGraph m0 = member(params, 0);
  // no matching edges at all: whatever is present lies in the reserved matching
  CHECK(m0.subgraph_of(params.matchings.matchings[params.reserved]));
}

TEST_CASE("member determinism and distinctness") {
  const TreeCodeParams params = build_treecode(17, 3, kotzig_p1f(17));
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t i = rng.below(params.family_size());
    CHECK(member(params, i) == member(params, i));
  }
  CHECK_THROWS_AS(member(params, params.family_size()), UsageError);
  CHECK_THROWS_AS(verify_pair(params, 3, 3), UsageError);
}

TEST_CASE("same-part members differ only in matchings (H layer cancels)") {
  const TreeCodeParams params = build_treecode(17, 3, kotzig_p1f(17));
  Rng rng(13);
  int found = 0;
  for (int trial = 0; trial < 4000 && found < 20; ++trial) {
    const std::uint64_t i = rng.below(params.family_size());
    const std::uint64_t j = rng.below(params.family_size());
    if (i == j || member_part(params, i) != member_part(params, j)) continue;
    ++found;
    const LabeledGraph d = symdiff(member(params, i), member(params, j));
    // nothing of the reserved matching appears in the difference
    CHECK_FALSE(d.intersects(params.matchings.matchings[params.reserved]));
  }
  CHECK(found > 0);
}

TEST_CASE("hamming variant: k=5 family structure and sampled certificates") {
  const OneFactorization f = kotzig_p1f(31);
  const TreeCodeParams params = build_hamming_treecode(5, 6, f);
  CHECK(params.n == 31);
  CHECK(params.family_size() == std::uint64_t{1} << 25);
  CHECK(params.member_words.size() == 25);

  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t i = rng.below(params.family_size());
    const std::uint64_t j = rng.below(params.family_size());
    if (i == j) continue;
    // any two members differ in >= 4 matchings (even subcode of Hamming)
    const std::uint64_t diff =
        member_matching_mask(params, i) ^ member_matching_mask(params, j);
    CHECK(std::popcount(diff) >= 4);
    const PairCertificate cert = verify_pair(params, i, j);
    CHECK(check_certificate(params, i, j, cert).ok);
    CHECK(spanning_tree_leaf_count(cert.tree) == 6);
  }
}

TEST_CASE("hamming variant leaf-range enforcement") {
  const OneFactorization f31 = kotzig_p1f(31);
  CHECK_THROWS_WITH_AS((void)build_hamming_treecode(5, 7, f31),
                       doctest::Contains("(n+9)/6"), UsageError);
  const OneFactorization f3 = kotzig_p1f(3);
  CHECK_THROWS_AS((void)build_hamming_treecode(2, 3, f3), UsageError);  // range [3,2] empty
}
