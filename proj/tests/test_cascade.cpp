#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "netdim/cascade.hpp"
#include "netdim/generator.hpp"
#include "test_fixtures.hpp"

using namespace netdim;

namespace {

using fixtures::brute_force_cascade;

std::vector<NodeId> all_nodes(const ColoredGraph& g) {
  std::vector<NodeId> v(g.node_count());
  for (NodeId i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(Thresholds, UniformEverywhere) {
  const auto g = fixtures::star(6);
  const auto t = assign_thresholds(g, UniformThreshold{0.3});
  for (double phi : t.values) EXPECT_DOUBLE_EQ(phi, 0.3);
  EXPECT_EQ(t.required_count(0, 5), 2u);
  EXPECT_EQ(t.required_count(1, 1), 1u);
}

TEST(Thresholds, UniformRejectsOutOfRange) {
  const auto g = fixtures::triangle();
  EXPECT_THROW(assign_thresholds(g, UniformThreshold{0.0}), std::invalid_argument);
  EXPECT_THROW(assign_thresholds(g, UniformThreshold{1.5}), std::invalid_argument);
  EXPECT_NO_THROW(assign_thresholds(g, UniformThreshold{1.0}));
}

TEST(Thresholds, RandomOnDegreeFour) {
  const auto g = fixtures::star(5);  // center has degree 4
  std::map<double, int> freq;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) ++freq[assign_thresholds(g, RandomThreshold{}, i).values[0]];
  ASSERT_EQ(freq.size(), 4u);
  for (double phi : {0.25, 0.5, 0.75, 1.0}) EXPECT_NEAR(freq[phi] / double(kDraws), 0.25, 0.02) << phi;
}

TEST(Thresholds, RandomOnDegreeOne) {
  const auto g = fixtures::star(5);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto t = assign_thresholds(g, RandomThreshold{}, s);
    for (NodeId v = 1; v < 5; ++v) EXPECT_DOUBLE_EQ(t.values[v], 1.0);
  }
}

TEST(Thresholds, IsolatedNodeNeverSpreads) {
  const auto g = fixtures::from_edges(3, {{0, 1}});
  const auto t = assign_thresholds(g, UniformThreshold{0.1});
  EXPECT_EQ(t.required_count(2, 0), kNeverInfected);
  const std::vector<NodeId> attack{0};
  EXPECT_EQ(infection_set(g, t, attack).infected, (std::vector<NodeId>{0, 1}));
  const std::vector<NodeId> direct{2};
  EXPECT_EQ(infection_set(g, t, direct).infected, (std::vector<NodeId>{2}));
}

TEST(InfectionSet, EmptyAndFullAttacks) {
  Rng rng(3);
  const auto g = fixtures::random_graph(10, 0.4, rng);
  const auto t = assign_thresholds(g, RandomThreshold{}, 1);
  EXPECT_TRUE(infection_set(g, t, {}).infected.empty());
  const auto all = all_nodes(g);
  EXPECT_EQ(infection_set(g, t, all).infected, all);
}

TEST(InfectionSet, PathExample) {
  const auto g = fixtures::path(3);
  const auto t = assign_thresholds(g, UniformThreshold{0.5});
  const std::vector<NodeId> attack{0};
  const auto r = infection_set(g, t, attack);
  EXPECT_EQ(r.infected, (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(r.rounds, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(r.attacked, attack);
}

TEST(InfectionSet, UnknownNodeThrows) {
  const auto g = fixtures::triangle();
  const auto t = assign_thresholds(g, UniformThreshold{0.5});
  const std::vector<NodeId> attack{7};
  EXPECT_THROW(infection_set(g, t, attack), std::out_of_range);
}

TEST(InfectionSet, MatchesBruteForceOnSmallGraphs) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(11);
    const auto g = fixtures::random_graph(n, 0.15 + 0.6 * rng.unit(), rng);
    const ThresholdScheme scheme =
        trial % 3 == 0 ? ThresholdScheme{UniformThreshold{0.1 + 0.9 * rng.unit()}} : ThresholdScheme{RandomThreshold{}};
    const auto t = assign_thresholds(g, scheme, rng.next());
    for (NodeId a = 0; a < n; ++a) {
      const std::vector<NodeId> attack{a};
      const auto want = brute_force_cascade(g, t.values, attack);
      ASSERT_EQ(infection_set(g, t, attack).infected, want) << "trial " << trial << " node " << a;
      ASSERT_EQ(infection_set_async(g, t, attack), want);
    }
  }
}

TEST(InfectionSet, MonotoneAndIdempotent) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = fixtures::random_graph(12, 0.3, rng);
    const auto t = assign_thresholds(g, RandomThreshold{}, trial);
    std::vector<NodeId> small{NodeId(rng.below(12))};
    std::vector<NodeId> large = small;
    large.push_back(NodeId(rng.below(12)));
    const auto inf_small = infection_set(g, t, small).infected;
    const auto inf_large = infection_set(g, t, large).infected;
    EXPECT_TRUE(std::includes(inf_large.begin(), inf_large.end(), inf_small.begin(), inf_small.end()));
    EXPECT_EQ(infection_set(g, t, inf_large).infected, inf_large);
  }
}

TEST(InfectionSet, IncrementalMatchesRestart) {
  const auto g = generate_linear({1.5, 4, 600, 1, 5});
  const auto t = assign_thresholds(g, RandomThreshold{}, 9);
  const auto order = top_degree_attack(g, 30);
  CascadeState state(g, t.required_counts(g));
  for (std::size_t s = 1; s <= order.size(); ++s) {
    state.attack(std::span<const NodeId>(&order[s - 1], 1));
    EXPECT_EQ(state.infected_nodes(), infection_set(g, t, std::span(order.data(), s)).infected) << s;
  }
}

TEST(TopDegreeAttack, Examples) {
  const auto star = fixtures::star(6);
  EXPECT_TRUE(top_degree_attack(star, 0).empty());
  EXPECT_EQ(top_degree_attack(star, 1), std::vector<NodeId>{0});
  // Nodes 1 and 2 both have degree 2.
  const auto g = fixtures::from_edges(4, {{1, 0}, {1, 2}, {2, 3}});
  EXPECT_EQ(top_degree_attack(g, 1), std::vector<NodeId>{1});
  EXPECT_EQ(top_degree_attack(g, 3), (std::vector<NodeId>{1, 2, 0}));
  EXPECT_THROW(top_degree_attack(g, 5), std::invalid_argument);
}

TEST(AttackSweep, UniformOneSingleAttack) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = fixtures::random_graph(20, 0.2, rng);
    const auto curve = attack_sweep(g, 1, 1, UniformThreshold{1.0}, 0, 1);
    ASSERT_EQ(curve.rows.size(), 1u);
    const auto t = assign_thresholds(g, UniformThreshold{1.0});
    const auto want = brute_force_cascade(g, t.values, top_degree_attack(g, 1));
    EXPECT_EQ(curve.rows[0].max_infected, want.size());
    // A leaf hanging off the attacked hub would also fall; otherwise just the hub.
    std::size_t leaves = 0;
    const NodeId hub = top_degree_attack(g, 1)[0];
    for (NodeId w : g.neighbors(hub)) leaves += g.degree(w) == 1;
    EXPECT_EQ(curve.rows[0].max_infected, 1 + leaves);
  }
}

TEST(AttackSweep, MonotoneRowsAndInvariants) {
  const auto g = generate_linear({1.5, 5, 2000, 1, 1});
  const auto curve = attack_sweep(g, 40, 10, RandomThreshold{}, 3, 1);
  ASSERT_EQ(curve.rows.size(), 40u);
  for (std::size_t i = 0; i < curve.rows.size(); ++i) {
    const auto& r = curve.rows[i];
    EXPECT_EQ(r.attack_size, i + 1);
    EXPECT_EQ(r.trials, 10u);
    EXPECT_EQ(r.n, g.node_count());
    EXPECT_GE(double(r.max_infected), r.mean_infected);
    EXPECT_GE(r.mean_infected, double(r.attack_size));
    if (i > 0) {
      EXPECT_GE(r.max_infected, curve.rows[i - 1].max_infected);
    }
  }
}

TEST(AttackSweep, ClampsToNodeCount) {
  const auto g = fixtures::triangle();
  EXPECT_EQ(attack_sweep(g, 10, 2, RandomThreshold{}, 1, 1).rows.size(), 3u);
  EXPECT_THROW(attack_sweep(g, 2, 0, RandomThreshold{}, 1, 1), std::invalid_argument);
}

TEST(AttackSweep, IndependentOfWorkerCount) {
  const auto g = generate_2d({1.5, 5, 1500, 2, 2});
  std::ostringstream one, four;
  write_sweep_csv(attack_sweep(g, 20, 12, RandomThreshold{}, 7, 1), one);
  write_sweep_csv(attack_sweep(g, 20, 12, RandomThreshold{}, 7, 4), four);
  EXPECT_EQ(one.str(), four.str());
}

TEST(AttackSweep, TrialMatchesDerivedStream) {
  const auto g = generate_linear({1.5, 5, 800, 1, 3});
  const auto curve = attack_sweep(g, 5, 1, RandomThreshold{}, 11, 1);
  const auto t = assign_thresholds(g, RandomThreshold{}, Rng(11).split(0).seed());
  const auto attack = top_degree_attack(g, 5);
  EXPECT_EQ(curve.rows[4].max_infected, infection_set(g, t, attack).infected.size());
}

TEST(AttackSweep, CsvFormat) {
  SweepCurve c;
  c.rows.push_back({1, 3, 2.5, 4, 10});
  c.rows.push_back({2, 7, 10.0 / 3.0, 4, 10});
  std::ostringstream os;
  write_sweep_csv(c, os);
  EXPECT_EQ(os.str(), "attack_size,max_infected,mean_infected,trials,n\n1,3,2.5,4,10\n2,7,3.33333,4,10\n");
}
