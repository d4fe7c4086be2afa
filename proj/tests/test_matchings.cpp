#include "tensorres/matchings.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace tensorres;

namespace {

std::vector<std::pair<int, int>> edge_pairs(const ContractionGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : g.edges) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(out.begin(), out.end());
  return out;
}

// Brute force: all pairings of [n] by trying every permutation and keeping
// the ones that list each pairing once (pairs ascending, ordered by first).
std::set<std::vector<std::pair<int, int>>> all_pairings(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::set<std::vector<std::pair<int, int>>> out;
  do {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; i += 2)
      pairs.emplace_back(std::min(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)]),
                         std::max(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i + 1)]));
    std::sort(pairs.begin(), pairs.end());
    out.insert(pairs);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST(Matchings, SmallCounts) {
  auto m = enumerate_matchings(2, 1);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].pairs, (std::vector<std::pair<int, int>>{{1, 2}}));
  EXPECT_EQ(enumerate_matchings(3, 2).size(), 15u);
  EXPECT_EQ(enumerate_matchings(3, 4).size(), 10395u);
  EXPECT_TRUE(enumerate_matchings(3, 1).empty());
  auto empty = enumerate_matchings(3, 0);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_TRUE(empty[0].pairs.empty());
}

TEST(Matchings, AgreeWithPermutationBruteForce) {
  for (int n : {2, 4, 6, 8}) {
    std::set<std::vector<std::pair<int, int>>> ours;
    for (const auto& m : enumerate_matchings(2, n / 2)) ours.insert(m.pairs);
    EXPECT_EQ(ours, all_pairings(n)) << n;
  }
}

TEST(Matchings, CanonicalOrderStartsWithAdjacentPairs) {
  auto m = enumerate_matchings(2, 2);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].pairs, (std::vector<std::pair<int, int>>{{1, 2}, {3, 4}}));
  EXPECT_EQ(m[1].pairs, (std::vector<std::pair<int, int>>{{1, 3}, {2, 4}}));
  EXPECT_EQ(m[2].pairs, (std::vector<std::pair<int, int>>{{1, 4}, {2, 3}}));
}

TEST(Matchings, CountDegreeAndPartitionLaws) {
  for (int p = 1; p <= 12; ++p)
    for (int k = 0; p * k <= 12; ++k) {
      std::uint64_t total = 0, connected = 0, disconnected = 0;
      for_each_matching(p, k, [&](const Matching& mu) {
        ++total;
        const ContractionGraph g = build_multigraph(mu);
        EXPECT_EQ(static_cast<int>(g.edges.size()) * 2, p * k);
        for (int d : g.degrees()) EXPECT_EQ(d, p);
        if (is_connected(g))
          ++connected;
        else
          ++disconnected;
      });
      EXPECT_EQ(total, matching_count(p, k)) << p << "," << k;
      EXPECT_EQ(connected + disconnected, total);
      EXPECT_EQ(enumerate_connected(p, k).size(), connected);
    }
  EXPECT_EQ(matching_count(3, 4), 10395u);
  EXPECT_EQ(matching_count(3, 3), 0u);
  EXPECT_EQ(matching_count(5, 0), 1u);
}

TEST(Multigraph, GluingExamples) {
  auto g = build_multigraph({2, 2, {{1, 3}, {2, 4}}});
  EXPECT_EQ(edge_pairs(g), (std::vector<std::pair<int, int>>{{0, 1}, {0, 1}}));
  EXPECT_TRUE(is_connected(g));

  g = build_multigraph({2, 2, {{1, 2}, {3, 4}}});
  EXPECT_EQ(edge_pairs(g), (std::vector<std::pair<int, int>>{{0, 0}, {1, 1}}));
  EXPECT_FALSE(is_connected(g));

  g = build_multigraph({3, 2, {{1, 4}, {2, 3}, {5, 6}}});
  EXPECT_EQ(edge_pairs(g), (std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(g.edges[0].slot_u, 0);
  EXPECT_EQ(g.edges[0].slot_v, 0);

  ContractionGraph single{1, {{0, 0, 0, 1}}};
  EXPECT_TRUE(is_connected(single));
  EXPECT_TRUE(is_connected(ContractionGraph{}));
}

TEST(Matchings, ConnectedFilter) {
  EXPECT_EQ(enumerate_connected(3, 2).size(), 15u);
  auto c = enumerate_connected(2, 2);
  EXPECT_EQ(c.size(), 2u);
  for (const auto& m : c) EXPECT_NE(m.pairs, (std::vector<std::pair<int, int>>{{1, 2}, {3, 4}}));
  EXPECT_EQ(enumerate_connected(2, 1).size(), 1u);
}

TEST(IsomorphismClasses, Examples) {
  auto cycle = isomorphism_classes(2, 4, true);
  ASSERT_EQ(cycle.size(), 1u);
  EXPECT_EQ(cycle[0].multiplicity, 48u);

  auto p2k2 = isomorphism_classes(2, 2, false);
  ASSERT_EQ(p2k2.size(), 2u);
  // First matching in canonical order is {{1,2},{3,4}}: two loops.
  EXPECT_EQ(p2k2[0].multiplicity, 1u);
  EXPECT_FALSE(p2k2[0].connected);
  EXPECT_EQ(p2k2[1].multiplicity, 2u);
  EXPECT_TRUE(p2k2[1].connected);

  auto p3k2 = isomorphism_classes(3, 2, true);
  ASSERT_EQ(p3k2.size(), 2u);
  std::multiset<std::uint64_t> mult{p3k2[0].multiplicity, p3k2[1].multiplicity};
  EXPECT_EQ(mult, (std::multiset<std::uint64_t>{6, 9}));
  for (const auto& cls : p3k2) {
    const auto pairs = edge_pairs(cls.representative);
    if (cls.multiplicity == 6)
      EXPECT_EQ(pairs, (std::vector<std::pair<int, int>>{{0, 1}, {0, 1}, {0, 1}}));
    else
      EXPECT_EQ(pairs, (std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}}));
  }
}

TEST(IsomorphismClasses, MultiplicitiesSumToCounts) {
  for (int p = 1; p <= 6; ++p)
    for (int k = 1; p * k <= 12 && k <= 6; ++k) {
      if ((p * k) % 2) continue;
      for (bool conn : {false, true}) {
        std::uint64_t sum = 0;
        for (const auto& cls : isomorphism_classes(p, k, conn)) {
          sum += cls.multiplicity;
          if (conn) {
            EXPECT_TRUE(cls.connected);
          }
        }
        const std::uint64_t expected = conn ? enumerate_connected(p, k).size() : matching_count(p, k);
        EXPECT_EQ(sum, expected) << p << "," << k << "," << conn;
      }
    }
}

TEST(IsomorphismClasses, ClassesAreDistinctTypes) {
  auto classes = isomorphism_classes(3, 4, false);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j)
      EXPECT_FALSE(are_isomorphic(classes[i].representative, classes[j].representative));
}

TEST(IsomorphismClasses, MatrixCycleLaw) {
  for (int k = 2; k <= 6; ++k) {
    auto classes = isomorphism_classes(2, k, true);
    ASSERT_EQ(classes.size(), 1u);
    std::uint64_t expected = 1u << (k - 1);
    for (int i = 2; i < k; ++i) expected *= static_cast<std::uint64_t>(i);
    EXPECT_EQ(classes[0].multiplicity, expected) << k;
  }
}

TEST(Graph, TextEdgeList) {
  auto g = build_multigraph({2, 2, {{1, 3}, {2, 4}}});
  EXPECT_EQ(write_graph(g), "vertices 2 edges 2\n1 2\n1 2\n");
}
