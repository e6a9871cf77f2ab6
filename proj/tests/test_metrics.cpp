#include <gtest/gtest.h>

#include <cmath>

#include "netdim/generator.hpp"
#include "netdim/metrics.hpp"
#include "test_fixtures.hpp"

using namespace netdim;

namespace {

using fixtures::zipf_draw;

/// Two triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
ColoredGraph two_triangles() {
  return fixtures::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

}  // namespace

TEST(DegreeHistogram, InitialCliqueIsRegular) {
  // K_{d+1} for d = 6
  const auto h = degree_histogram(fixtures::complete(7));
  ASSERT_EQ(h.counts.size(), 1u);
  EXPECT_EQ(h.counts.at(6), 7u);
  EXPECT_EQ(h.n, 7u);
  EXPECT_EQ(h.m, 21u);
}

TEST(DegreeHistogram, Star) {
  const auto h = degree_histogram(fixtures::star(5));
  EXPECT_EQ(h.counts, (std::map<std::size_t, std::size_t>{{1, 4}, {4, 1}}));
}

TEST(HurwitzZeta, MatchesDirectSum) {
  for (double s : {1.5, 2.0, 2.5, 3.7}) {
    for (double q : {1.0, 2.0, 10.0}) {
      long double direct = 0;
      for (long k = 0; k < 2000000; ++k) direct += std::pow((long double)(q + k), -(long double)s);
      // Integral tail beyond the truncation point.
      direct += std::pow((long double)(q + 2000000), 1 - (long double)s) / (s - 1) +
                0.5L * std::pow((long double)(q + 2000000), -(long double)s);
      EXPECT_NEAR(hurwitz_zeta(s, q), double(direct), 1e-9 * double(direct)) << s << " " << q;
    }
  }
  EXPECT_NEAR(hurwitz_zeta(2.0, 1.0), M_PI * M_PI / 6.0, 1e-12);
  EXPECT_THROW(hurwitz_zeta(1.0, 1.0), std::domain_error);
}

TEST(PowerLaw, RecoversSyntheticExponent) {
  Rng rng(2025);
  DegreeHistogram h;
  for (int i = 0; i < 100000; ++i) ++h.counts[zipf_draw(2.5, rng)];
  h.n = 100000;
  const auto fit = power_law_exponent(h, 1);
  EXPECT_NEAR(fit.exponent, 2.5, 0.05);
  EXPECT_EQ(fit.tail_size, 100000u);
  EXPECT_GT(fit.binned_slope, 1.5);
  EXPECT_LT(fit.binned_slope, 3.5);
}

TEST(PowerLaw, RespectsXmin) {
  Rng rng(7);
  DegreeHistogram h;
  for (int i = 0; i < 100000; ++i) ++h.counts[zipf_draw(2.2, rng)];
  const auto fit = power_law_exponent(h, 3);
  EXPECT_NEAR(fit.exponent, 2.2, 0.06);
  EXPECT_LT(fit.tail_size, 100000u);
}

TEST(PowerLaw, UniformDegreesThrow) {
  DegreeHistogram h;
  h.counts[5] = 1000;
  EXPECT_THROW(power_law_exponent(h, 1), std::invalid_argument);
  EXPECT_THROW(power_law_exponent(degree_histogram(fixtures::complete(20)), 1), std::invalid_argument);
}

TEST(PowerLaw, GeneratedGraphIsHeavyTailed) {
  const auto g = generate_linear({1.5, 10, 10000, 1, 1});
  const auto h = degree_histogram(g);
  EXPECT_GE(h.counts.rbegin()->first, 100u);
  const auto fit = power_law_exponent(h, 10);
  EXPECT_GT(fit.exponent, 2.0);
  EXPECT_LT(fit.exponent, 4.0);
}

TEST(Diameter, PathAndComplete) {
  EXPECT_EQ(diameter(fixtures::path(5)), 4);
  EXPECT_EQ(diameter(fixtures::complete(6)), 1);
  EXPECT_EQ(diameter(fixtures::path(5), DiameterMode::estimate), 4);
}

TEST(Diameter, DisconnectedNamesComponents) {
  const auto g = fixtures::from_edges(5, {{0, 1}, {2, 3}});
  try {
    diameter(g);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("3 components"), std::string::npos) << e.what();
  }
  EXPECT_THROW(average_distance(g), std::invalid_argument);
}

TEST(Diameter, EstimateNeverExceedsExact) {
  Rng rng(31);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = fixtures::random_graph(10 + rng.below(190), 0.03 + 0.1 * rng.unit(), rng);
    if (component_count(g) != 1) continue;
    ++tested;
    EXPECT_LE(diameter(g, DiameterMode::estimate), diameter(g, DiameterMode::exact));
  }
  EXPECT_GT(tested, 20);
}

TEST(Diameter, IndependentOfWorkers) {
  const auto g = generate_2d({1.5, 5, 1500, 2, 3});
  EXPECT_EQ(diameter(g, DiameterMode::exact, 1), diameter(g, DiameterMode::exact, 3));
  EXPECT_EQ(distance_summary(g, 1).average_distance, distance_summary(g, 4).average_distance);
}

TEST(AverageDistance, PathAndComplete) {
  EXPECT_NEAR(average_distance(fixtures::path(3)).value, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(average_distance(fixtures::complete(7)).value, 1.0, 1e-12);
  const auto s = distance_summary(fixtures::path(4));
  EXPECT_EQ(s.diameter, 3);
  EXPECT_NEAR(s.average_distance, 20.0 / 12.0, 1e-12);
}

TEST(AverageDistance, SampledIsCloseWithError) {
  const auto g = generate_linear({1.5, 5, 3000, 1, 2});
  const auto exact = average_distance(g);
  const auto sampled = average_distance(g, 300, 9);
  EXPECT_TRUE(exact.exact);
  EXPECT_FALSE(sampled.exact);
  EXPECT_GT(sampled.std_error, 0.0);
  EXPECT_NEAR(sampled.value, exact.value, 5 * sampled.std_error + 1e-9);
}

TEST(Clustering, TriangleAndStar) {
  EXPECT_DOUBLE_EQ(clustering_coefficient(fixtures::triangle()), 1.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(fixtures::star(6)), 0.0);
  EXPECT_DOUBLE_EQ(transitivity(fixtures::triangle()), 1.0);
  EXPECT_DOUBLE_EQ(transitivity(fixtures::star(6)), 0.0);
}

TEST(Clustering, ExcludesLowDegreeNodes) {
  // Triangle plus a pendant on node 0: c(0) = 1/3, c(1) = c(2) = 1, leaf skipped.
  const auto g = fixtures::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
  EXPECT_NEAR(clustering_coefficient(g), (1.0 / 3.0 + 2.0) / 3.0, 1e-12);
  EXPECT_NEAR(transitivity(g), 3.0 / 5.0, 1e-12);
}

TEST(Clustering, TriangleCountsMatchBruteForce) {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = fixtures::random_graph(25, 0.3, rng);
    const auto tri = triangle_counts(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      std::uint64_t want = 0;
      const auto nb = g.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        for (std::size_t j = i + 1; j < nb.size(); ++j) want += g.has_edge(nb[i], nb[j]);
      }
      ASSERT_EQ(tri[v], want);
    }
  }
}

TEST(Conductance, Examples) {
  const auto edge = fixtures::from_edges(2, {{0, 1}});
  const std::vector<NodeId> one{0};
  EXPECT_DOUBLE_EQ(conductance(edge, one), 1.0);
  const std::vector<NodeId> tri{0, 1, 2};
  EXPECT_DOUBLE_EQ(conductance(two_triangles(), tri), 1.0 / 7.0);
}

TEST(Conductance, RejectsTrivialSets) {
  const auto g = fixtures::triangle();
  const std::vector<NodeId> none, all{0, 1, 2};
  EXPECT_THROW(conductance(g, none), std::invalid_argument);
  EXPECT_THROW(conductance(g, all), std::invalid_argument);
}

TEST(Stats, ReportInvariants) {
  const auto g = generate_linear({1.5, 5, 2000, 1, 4});
  const auto r = compute_stats(g, 5, 20000, 1);
  EXPECT_EQ(r.n, 2000u);
  EXPECT_GE(double(r.diameter), r.average_distance);
  EXPECT_GE(r.average_distance, 1.0);
  EXPECT_TRUE(r.diameter_exact);
  const auto approx = compute_stats(g, 5, 100, 1);
  EXPECT_FALSE(approx.diameter_exact);
  EXPECT_LE(approx.diameter, r.diameter);
}
