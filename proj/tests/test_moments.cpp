#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "epsfree/families.hpp"
#include "epsfree/moments.hpp"
#include "model_checks.hpp"
#include "test_support.hpp"

namespace epsfree {
namespace {

using testing::Word;

long moment_of(const Graph& g, const Word& w) {
  return vacuum_moment(g, w).convert_to<long>();
}

// Monochromatic pairings in which crossing pairs carry distinct commuting
// letters. Independent of the Fock model.
long epsilon_pairing_moment(const Graph& g, const Word& w) {
  long count = 0;
  testing::for_each_pairing(w.size(), [&](const std::vector<std::pair<int, int>>& pairs) {
    auto letter = [&](int p) { return w[static_cast<std::size_t>(p)]; };
    for (const auto& p : pairs) {
      if (letter(p.first) != letter(p.second)) return;
    }
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        if (!testing::crosses(pairs[a], pairs[b])) continue;
        const std::size_t i = letter(pairs[a].first), j = letter(pairs[b].first);
        if (i == j || !g.adjacent(i, j)) return;
      }
    }
    ++count;
  });
  return count;
}

long brute_sum_moment(const Graph& g, std::size_t n) {
  long total = 0;
  for (const Word& w : testing::all_words(g.d(), n)) total += epsilon_pairing_moment(g, w);
  return total;
}

Graph relabel(const Graph& g, const std::vector<std::size_t>& perm) {
  std::vector<Edge> edges;
  for (const auto& [a, b] : g.edges()) {
    edges.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
  }
  return Graph::from_edges(g.d(), edges);
}

TEST(Catalan, FirstValues) {
  const std::vector<long> expected{1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
  for (std::size_t n = 0; n < expected.size(); ++n) EXPECT_EQ(catalan(n), expected[n]);
  EXPECT_EQ(catalan(30).str(), "3814986502092304");
}

TEST(VacuumMoment, Examples) {
  const Graph free_pair = empty_graph(2), commuting = complete_graph(2);
  EXPECT_EQ(moment_of(free_pair, {0, 0, 0, 0}), 2);
  EXPECT_EQ(moment_of(commuting, {0, 1, 0, 1}), 1);
  EXPECT_EQ(moment_of(free_pair, {0, 1, 0, 1}), 0);
  EXPECT_EQ(moment_of(free_pair, {0, 0, 1, 1}), 1);
  EXPECT_EQ(moment_of(free_pair, {0}), 0);
  EXPECT_EQ(testing::brute_vacuum_moment(commuting, {0, 1, 0, 1}), 1);
  EXPECT_EQ(testing::brute_vacuum_moment(free_pair, {0, 1, 0, 1}), 0);
}

TEST(VacuumMoment, ShallowSpaceIsRejected) {
  const FockSpace fs(empty_graph(2), 2);
  const Word w{0, 0, 0, 0, 0, 0};
  EXPECT_THROW(vacuum_moment(fs, w), BadParams);
}

TEST(VacuumMoment, AgreesWithOrbitFockAndPairings) {
  for (std::size_t d = 2; d <= 3; ++d) {
    for (const Graph& g : all_labeled_graphs(d)) {
      for (std::size_t n = 2; n <= 6; n += 2) {
        for (const Word& w : testing::all_words(d, n)) {
          const long got = moment_of(g, w);
          ASSERT_EQ(got, testing::brute_vacuum_moment(g, w));
          ASSERT_EQ(got, epsilon_pairing_moment(g, w));
        }
      }
    }
  }
}

TEST(VacuumMoment, OddWordsVanish) {
  for (const Graph& g : all_labeled_graphs(3)) {
    for (std::size_t n = 1; n <= 5; n += 2) {
      for (const Word& w : testing::all_words(3, n)) ASSERT_EQ(moment_of(g, w), 0);
    }
  }
}

TEST(SumMoments, Examples) {
  const auto free_pair = sum_moments(empty_graph(2), 8);
  EXPECT_EQ(free_pair.values[4], 8);
  EXPECT_EQ(free_pair.values[8], 224);
  const auto commuting = sum_moments(complete_graph(2), 6);
  EXPECT_EQ(commuting.values[4], 10);
  EXPECT_EQ(commuting.values[6], 70);
  EXPECT_EQ(sum_moments(complete_multipartite({2, 2}), 4).values[4], 40);
  // The oracles behind the frozen values.
  EXPECT_EQ(brute_sum_moment(empty_graph(2), 8), 224);
  EXPECT_EQ(brute_sum_moment(complete_graph(2), 6), 70);
  EXPECT_EQ(brute_sum_moment(complete_multipartite({2, 2}), 4), 40);
}

TEST(SumMoments, MatchPairingOracleOnSmallGraphs) {
  for (std::size_t d = 1; d <= 4; ++d) {
    for (const Graph& g : all_labeled_graphs(d)) {
      const std::size_t top = d <= 3 ? 8 : 6;
      const auto m = sum_moments(g, top);
      for (std::size_t n = 0; n <= top; ++n) {
        ASSERT_EQ(m.values[n], brute_sum_moment(g, n)) << "d=" << d << " n=" << n;
      }
    }
  }
}

TEST(SumMoments, SecondMomentIsD) {
  for (const Graph& g : {xy_model(7), erdos_renyi(9, 0.3, 1), complete_graph(5)}) {
    EXPECT_EQ(sum_moments(g, 2).values[2], g.d());
  }
}

TEST(SumMoments, InvariantUnderRelabeling) {
  const Graph g = erdos_renyi(5, 0.5, 11);
  const auto base = sum_moments(g, 8).values;
  std::vector<std::size_t> perm{0, 1, 2, 3, 4};
  int tried = 0;
  while (std::next_permutation(perm.begin(), perm.end()) && tried++ < 20) {
    EXPECT_EQ(sum_moments(relabel(g, perm), 8).values, base);
  }
}

TEST(SumMoments, MonotoneInEdgesAndBoundedByFree) {
  for (std::size_t d = 2; d <= 4; ++d) {
    const auto graphs = all_labeled_graphs(d);
    for (const Graph& g : graphs) {
      const auto m = sum_moments(g, 10);
      for (std::size_t n = 1; n <= 5; ++n) {
        BigInt free_value = catalan(n);
        for (std::size_t k = 0; k < n; ++k) free_value *= d;
        ASSERT_GE(m.values[2 * n], free_value);
        if (n >= 2) ASSERT_EQ(m.values[2 * n] == free_value, g.edge_count() == 0);
      }
      for (const auto& [a, b] : g.complement().edges()) {
        auto edges = g.edges();
        edges.emplace_back(a, b);
        const auto bigger = sum_moments(Graph::from_edges(d, edges), 10);
        for (std::size_t n = 0; n <= 10; ++n) ASSERT_LE(m.values[n], bigger.values[n]);
      }
    }
  }
}

TEST(Marginals, AreCatalan) {
  for (const Graph& g : {empty_graph(3), complete_graph(3), complete_multipartite({2, 2}),
                         xy_model(6)}) {
    EXPECT_TRUE(testing::marginals_are_semicircular(g, 8));
  }
}

TEST(Vanishing, ReducedCentredProductsVanish) {
  for (const Graph& g : all_labeled_graphs(3)) EXPECT_EQ(testing::max_vanishing_violation(g, 5), 0);
  EXPECT_EQ(testing::max_vanishing_violation(xy_model(5), 4), 0);
}

TEST(Vanishing, NonReducedTupleNeedNotVanish) {
  // With ε_12 = 1, (1,2,1,2) lies outside the reduced set and τ[s1 s2 s1 s2] = 1.
  const Graph g = complete_graph(2);
  EXPECT_FALSE(in_reduced_index_set(Word{0, 1, 0, 1}, g));
  EXPECT_EQ(testing::centred_product_moment(FockSpace(g, 3), {0, 1, 0, 1}, {1, 1, 1, 1}), 1);
}

TEST(MomentRoot, Examples) {
  const auto free_pair = sum_moments(empty_graph(2), 8);
  EXPECT_NEAR(moment_root(free_pair, 4), std::pow(8.0, 0.25), 1e-12);
  EXPECT_NEAR(moment_root(free_pair, 8), std::pow(224.0, 0.125), 1e-12);
  for (std::size_t d : {1, 3, 6}) {
    EXPECT_NEAR(moment_root(sum_moments(erdos_renyi(d, 0.5, d), 2), 2),
                std::sqrt(static_cast<double>(d)), 1e-12);
  }
  EXPECT_THROW(moment_root(free_pair, 3), BadParams);
  EXPECT_THROW(moment_root(free_pair, 10), BadParams);
  EXPECT_THROW(moment_norm_lower(empty_graph(2), 0), BadParams);
}

TEST(MomentRoot, NondecreasingInOrder) {
  for (const Graph& g : {complete_multipartite({2, 2}), xy_model(5), empty_graph(3)}) {
    const auto m = sum_moments(g, 16);
    for (std::size_t n = 4; n <= 16; n += 2) {
      EXPECT_GE(moment_root(m, n), moment_root(m, n - 2) - 1e-12);
    }
  }
}

TEST(MomentRoot, LargeValuesStayFinite) {
  const auto m = sum_moments(complete_graph(3), 60);
  const double root = moment_root(m, 60);
  EXPECT_TRUE(std::isfinite(root));
  EXPECT_LT(root, 2.0 * 3.0);
}

}  // namespace
}  // namespace epsfree
