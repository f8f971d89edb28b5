#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "epsfree/clique.hpp"
#include "epsfree/families.hpp"
#include "epsfree/graph.hpp"
#include "epsfree/spectrum.hpp"
#include "test_support.hpp"

namespace epsfree {
namespace {

TEST(Validate, SmallestCompleteGraph) {
  const Graph g = Graph::from_matrix({{0, 1}, {1, 0}});
  EXPECT_EQ(g.d(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.adjacent(0, 1));
}

TEST(Validate, ReportsFirstOffendingPair) {
  try {
    Graph::from_matrix({{0, 1}, {0, 0}});
    FAIL() << "expected NonSymmetric";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.kind(), GraphError::Kind::NonSymmetric);
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.col(), 0u);
  }
  try {
    Graph::from_matrix({{1}});
    FAIL() << "expected NonZeroDiagonal";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.kind(), GraphError::Kind::NonZeroDiagonal);
    EXPECT_EQ(e.row(), 0u);
    EXPECT_EQ(e.col(), 0u);
  }
  try {
    Graph::from_matrix({{0, 2}, {2, 0}});
    FAIL() << "expected NonBinaryEntry";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.kind(), GraphError::Kind::NonBinaryEntry);
    EXPECT_EQ(e.row(), 0u);
    EXPECT_EQ(e.col(), 1u);
  }
  EXPECT_THROW(Graph::from_matrix({{0, 1}, {1}}), GraphError);
  EXPECT_THROW(Graph::from_matrix({}), GraphError);
}

TEST(Validate, EdgeListRejectsBadEdges) {
  EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), GraphError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), GraphError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {0, 1}}), GraphError);
  EXPECT_THROW(Graph::from_edges(3, {{2, 1}}), GraphError);
}

TEST(Spectrum, CompleteGraph) {
  const auto s = spectrum(complete_graph(4));
  ASSERT_EQ(s.eigenvalues.size(), 4u);
  EXPECT_NEAR(s.eigenvalues[0], 3.0, 1e-12);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(s.eigenvalues[k], -1.0, 1e-12);
}

TEST(Spectrum, FourCycleMatchesCharacteristicPolynomial) {
  const Graph c4 = cycle_graph(4);
  // det(xI − A) by permutation expansion: x^4 − 4x^2, roots 2, 0, 0, −2.
  const auto poly = testing::characteristic_polynomial(c4.matrix());
  EXPECT_EQ(poly, (std::vector<long>{0, 0, -4, 0, 1}));
  const auto s = spectrum(c4);
  const std::vector<double> expected{2.0, 0.0, 0.0, -2.0};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(s.eigenvalues[k], expected[k], 1e-12);
  const auto k22 = spectrum(complete_multipartite({2, 2}));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(k22.eigenvalues[k], expected[k], 1e-12);
}

TEST(Spectrum, XyModelFive) {
  const auto s = spectrum(xy_model(5));
  EXPECT_NEAR(s.lambda1(), 2.0, 1e-12);
  const double l2 = -1.0 - 2.0 * std::cos(4.0 * std::numbers::pi / 5.0);
  EXPECT_NEAR(l2, 0.6180339887, 1e-9);
  EXPECT_NEAR(s.eigenvalues[1], l2, 1e-12);
  EXPECT_NEAR(s.eigenvalues[2], l2, 1e-12);
}

TEST(Spectrum, XyModelMatchesCyclicShiftFormulas) {
  for (std::size_t d = 4; d <= 12; ++d) {
    std::vector<double> expected{static_cast<double>(d) - 3.0};
    for (std::size_t k = 1; k < d; ++k) {
      expected.push_back(-1.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                               static_cast<double>(d)));
    }
    std::sort(expected.begin(), expected.end(), std::greater<>());
    const auto s = spectrum(xy_model(d));
    for (std::size_t k = 0; k < d; ++k) EXPECT_NEAR(s.eigenvalues[k], expected[k], 1e-10) << d;
    if (d % 2 == 0) EXPECT_NEAR(s.lambda2(), 1.0, 1e-10);
  }
}

TEST(Spectrum, InvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 1 + seed % 12;
    const Graph g = erdos_renyi(d, 0.5, seed);
    const auto s = spectrum(g);
    double trace = 0.0;
    for (double e : s.eigenvalues) trace += e;
    EXPECT_NEAR(trace, 0.0, s.tolerance);
    EXPECT_GE(s.eigenvalues.back(), -(static_cast<double>(d) - 1.0) - s.tolerance);
    EXPECT_LE(s.lambda1(), static_cast<double>(d) - 1.0 + s.tolerance);
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>()));
    const auto p = structural_predicates(g);
    if (p.is_regular) EXPECT_NEAR(s.lambda1(), static_cast<double>(*p.degree), s.tolerance);
  }
}

TEST(Spectrum, PerronEigenvalueIsSimpleForConnectedGraphs) {
  std::vector<Graph> graphs{cycle_graph(5), complete_multipartite({2, 2}), xy_model(7),
                            complete_multipartite({1, 2, 3})};
  for (std::uint64_t seed = 0; seed < 60; ++seed) graphs.push_back(erdos_renyi(8, 0.5, seed));
  for (const Graph& g : graphs) {
    if (!structural_predicates(g).is_connected) continue;
    const auto s = spectrum(g);
    EXPECT_GT(s.lambda1() - s.lambda2(), 10 * s.tolerance);
    for (double x : perron_vector(g)) EXPECT_GT(x, 0.0);
  }
}

TEST(Clique, Examples) {
  EXPECT_EQ(clique_number(empty_graph(5)).omega, 1u);
  const auto k22 = clique_number(complete_multipartite({2, 2}));
  EXPECT_EQ(k22.omega, 2u);
  EXPECT_TRUE(is_clique(complete_multipartite({2, 2}), k22.witness));
  EXPECT_EQ(testing::brute_clique_number(complete_multipartite({2, 2})), 2u);
  EXPECT_EQ(clique_number(complete_graph(6)).omega, 6u);
}

TEST(Clique, XyModelCliques) {
  // Even d: the odd-indexed vertices {1, 3, ..., d-1} form a maximum clique.
  for (std::size_t d : {6, 8, 10}) {
    const Graph g = xy_model(d);
    EXPECT_EQ(clique_number(g).omega, d / 2);
    std::vector<std::size_t> odd;
    for (std::size_t v = 0; v < d; v += 2) odd.push_back(v);
    EXPECT_TRUE(is_clique(g, odd));
  }
  // Odd d: vertices 1 and d are cyclic neighbours, so {1, 3, ..., d} is not
  // a clique and the clique number is ⌊d/2⌋.
  const Graph g7 = xy_model(7);
  EXPECT_FALSE(is_clique(g7, {0, 2, 4, 6}));
  EXPECT_EQ(clique_number(g7).omega, 3u);
  EXPECT_EQ(testing::brute_clique_number(g7), 3u);
}

TEST(Clique, MatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t d = 1 + seed % 10;
    const Graph g = erdos_renyi(d, 0.3 + 0.4 * static_cast<double>(seed % 3) / 2.0, seed);
    const CliqueData c = clique_number(g);
    EXPECT_EQ(c.omega, testing::brute_clique_number(g)) << "seed " << seed;
    EXPECT_EQ(c.witness.size(), c.omega);
    EXPECT_TRUE(is_clique(g, c.witness));
  }
}

TEST(Clique, SizeLimit) {
  EXPECT_THROW(clique_number(empty_graph(65)), SizeLimitExceeded);
  EXPECT_EQ(clique_number(complete_graph(64)).omega, 64u);
}

TEST(Structure, Predicates) {
  auto c4 = structural_predicates(cycle_graph(4));
  EXPECT_TRUE(c4.is_connected);
  EXPECT_TRUE(c4.is_regular);
  EXPECT_EQ(c4.degree, 2u);
  auto e3 = structural_predicates(empty_graph(3));
  EXPECT_FALSE(e3.is_connected);
  EXPECT_TRUE(e3.is_regular);
  EXPECT_EQ(e3.degree, 0u);
  auto p3 = structural_predicates(Graph::from_edges(3, {{0, 1}, {1, 2}}));
  EXPECT_TRUE(p3.is_connected);
  EXPECT_FALSE(p3.is_regular);
  EXPECT_FALSE(p3.degree.has_value());
}

TEST(Families, Examples) {
  EXPECT_TRUE(complete_multipartite({2, 2}) == Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}));
  const Graph xy6 = xy_model(6);
  EXPECT_EQ(xy6.edge_count(), 9u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(xy6.degree(i), 3u);
    EXPECT_FALSE(xy6.adjacent(i, (i + 1) % 6));
    EXPECT_FALSE(xy6.adjacent(i, (i + 5) % 6));
  }
  EXPECT_FALSE(xy_model(5).adjacent(0, 4));
  const Graph e1 = empty_graph(1);
  EXPECT_EQ(e1.d(), 1u);
  EXPECT_EQ(e1.edge_count(), 0u);
}

TEST(Families, BadParams) {
  EXPECT_THROW(xy_model(3), BadParams);
  EXPECT_THROW(cycle_graph(2), BadParams);
  EXPECT_THROW(complete_multipartite({}), BadParams);
  EXPECT_THROW(complete_multipartite({2, 0}), BadParams);
  EXPECT_THROW(erdos_renyi(4, 1.5, 0), BadParams);
  EXPECT_THROW(generate_family(Family::Empty, {2.5}), BadParams);
  EXPECT_THROW(generate_family(Family::ErdosRenyi, {4}), BadParams);
  EXPECT_THROW(parse_family("petersen"), BadParams);
}

TEST(Families, DeterministicInNameParamsSeed) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xdeadbeefULL}) {
    EXPECT_TRUE(generate_family(Family::ErdosRenyi, {10, 0.4}, seed) ==
                generate_family(Family::ErdosRenyi, {10, 0.4}, seed));
  }
  EXPECT_FALSE(erdos_renyi(12, 0.5, 1) == erdos_renyi(12, 0.5, 2));
  EXPECT_TRUE(generate_family(Family::XyModel, {9}) == xy_model(9));
  EXPECT_TRUE(generate_family(Family::CompleteMultipartite, {1, 2, 3}) ==
              complete_multipartite({1, 2, 3}));
  EXPECT_TRUE(erdos_renyi(6, 0.0, 7) == empty_graph(6));
  EXPECT_TRUE(erdos_renyi(6, 1.0, 7) == complete_graph(6));
}

TEST(Families, ErdosRenyiStreamIsPinned) {
  // Pins the documented generator so other implementations can reproduce
  // the same graphs: mt19937_64(5), one draw per pair in row-major order.
  std::mt19937_64 rng(5);
  std::vector<Edge> expected;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < 0.35) expected.emplace_back(i, j);
    }
  }
  EXPECT_EQ(erdos_renyi(7, 0.35, 5).edges(), expected);
}

TEST(Wilf, HoldsOnAllSmallGraphs) {
  for (std::size_t d = 1; d <= 5; ++d) {
    for (const Graph& g : all_labeled_graphs(d)) {
      const double l1 = spectrum(g).lambda1();
      ASSERT_LT(l1, static_cast<double>(d));
      EXPECT_LE(static_cast<double>(d) / (static_cast<double>(d) - l1),
                static_cast<double>(clique_number(g).omega) + 1e-9);
    }
  }
}

TEST(Indexing, DisplayShift) {
  EXPECT_EQ(to_display_index(0), 1u);
  EXPECT_EQ(from_display_index(1), 0u);
}

}  // namespace
}  // namespace epsfree
