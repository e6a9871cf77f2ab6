#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "netdim/generator.hpp"
#include "netdim/graph_io.hpp"
#include "netdim/reduction.hpp"
#include "test_fixtures.hpp"

using namespace netdim;

namespace {

bool all_passed(const VerificationReport& r, std::string* failed = nullptr) {
  for (const auto& c : r.checks) {
    if (!c.passed) {
      if (failed) *failed = c.name + ": " + c.detail;
      return false;
    }
  }
  return true;
}

}  // namespace

TEST(OverlappingCommunities, LinearGraphHasSingleMembership) {
  const auto g = generate_linear({1.5, 5, 500, 1, 1});
  const auto s = overlapping_communities(g);
  for (const auto& m : s.membership) EXPECT_EQ(m.size(), 1u);
  std::size_t covered = 0;
  for (const auto& c : s.communities) covered += c.members.size();
  EXPECT_EQ(covered, g.node_count());
}

TEST(OverlappingCommunities, SeedsOverlapInS2) {
  const auto g = generate_2d({1.5, 5, 500, 2, 1});
  const auto s = overlapping_communities(g);
  for (const auto& node : g.nodes()) {
    const bool late_seed = node.kind == NodeKind::seed && node.birth > 0;
    EXPECT_EQ(s.membership[node.id].size(), late_seed ? 2u : 1u);
  }
}

TEST(OverlappingCommunities, SingleNode) {
  GraphBuilder b;
  b.add_node({5}, NodeKind::seed, 0);
  const auto g = std::move(b).build();
  const auto s = overlapping_communities(g);
  ASSERT_EQ(s.communities.size(), 1u);
  EXPECT_EQ(s.communities[0].color, 5u);
  EXPECT_EQ(s.communities[0].members, std::vector<NodeId>{0});
}

TEST(CircleEdges, Counts) {
  EXPECT_EQ(circle_edges(1), 0u);
  EXPECT_EQ(circle_edges(2), 1u);
  EXPECT_EQ(circle_edges(3), 3u);
  EXPECT_EQ(circle_edges(5), 5u);
}

TEST(Reduce, IdentityOnLinearInput) {
  const auto g = generate_linear({1.5, 5, 800, 1, 2});
  const auto r = reduce(g, 1);
  EXPECT_TRUE(r.splits.empty());
  EXPECT_EQ(r.reassigned_edges, 0u);
  EXPECT_TRUE(std::ranges::equal(r.graph.nodes(), g.nodes()));
  EXPECT_TRUE(std::ranges::equal(r.graph.edges(), g.edges()));
  EXPECT_EQ(r.graph.meta().model, ModelTag::reduced);
  EXPECT_TRUE(all_passed(verify_reduction(g, r.graph, r)));
}

TEST(Reduce, TwoColorSeedFixture) {
  const auto g = fixtures::two_color_seed(false);
  const auto r = reduce(g, 1);
  ASSERT_EQ(r.splits.size(), 1u);
  const auto& parts = r.splits[0].parts;
  ASSERT_EQ(parts.size(), 2u);
  const NodeId xa = parts[0].id, xb = parts[1].id;
  EXPECT_EQ(xa, 0u);
  EXPECT_EQ(xb, 6u);
  EXPECT_EQ(parts[0].internal_degree, 3u);
  EXPECT_EQ(parts[1].internal_degree, 1u);
  const auto& h = r.graph;
  EXPECT_EQ(h.node_count(), 7u);
  EXPECT_EQ(h.degree(xa), 3u + 1u);
  EXPECT_EQ(h.degree(xb), 1u + 1u);
  EXPECT_EQ(h.edge_kind(xa, xb), EdgeKind::circle);
  EXPECT_TRUE(h.has_edge(xb, 4));
  EXPECT_EQ(h.node(xa).colors, std::vector<Color>{10});
  EXPECT_EQ(h.node(xb).colors, std::vector<Color>{20});
  EXPECT_EQ(h.node(xa).kind, NodeKind::seed);
  EXPECT_EQ(h.node(xb).kind, NodeKind::nonseed);
  EXPECT_EQ(r.mapping[0], (std::vector<NodeId>{0, 6}));
  EXPECT_EQ(r.origin[6], 0u);
  EXPECT_EQ(dimension(h), 1);
  EXPECT_TRUE(all_passed(verify_reduction(g, h, r)));
}

TEST(Reduce, ReassignmentFollowsInternalDegree) {
  const auto g = fixtures::two_color_seed(true);
  const auto structure = overlapping_communities(g);
  constexpr int kReps = 100000;
  int to_a = 0;
  for (int s = 0; s < kReps; ++s) {
    const auto r = reduce(g, structure, s);
    to_a += r.graph.has_edge(0, 5);
  }
  EXPECT_NEAR(to_a / double(kReps), 3.0 / 4.0, 0.02);
}

TEST(Reduce, ReassignedEdgeIsTagged) {
  const auto g = fixtures::two_color_seed(true);
  const auto r = reduce(g, 4);
  EXPECT_EQ(r.reassigned_edges, 1u);
  const NodeId end = r.graph.has_edge(0, 5) ? 0 : 6;
  EXPECT_EQ(r.graph.edge_kind(end, 5), EdgeKind::reassigned);
}

TEST(Reduce, AllExternalFallsBackToUniform) {
  // x carries {1, 2} but no neighbor shares either color.
  GraphBuilder b;
  b.add_node({1, 2}, NodeKind::seed, 0);
  b.add_node({3}, NodeKind::seed, 0);
  b.add_edge(0, 1, EdgeKind::init);
  const auto g = std::move(b).build();
  int to_first = 0;
  for (int s = 0; s < 4000; ++s) to_first += reduce(g, s).graph.has_edge(0, 1);
  EXPECT_NEAR(to_first / 4000.0, 0.5, 0.05);
}

TEST(Reduce, EdgeCountLawIndependentOracle) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (int k = 2; k <= 4; ++k) {
      const auto g = generate_kd({1.5, 6, 1000, k, seed});
      // Recount both sides from colors alone.
      std::size_t extra = 0;
      for (const auto& node : g.nodes()) {
        const auto c = node.colors.size();
        extra += c < 2 ? 0 : c == 2 ? 1 : c;
      }
      const auto r = reduce(g, seed);
      EXPECT_EQ(r.graph.edge_count(), g.edge_count() + extra) << "k=" << k;
      EXPECT_EQ(dimension(r.graph), 1);
    }
  }
}

TEST(Reduce, VerifiesOnManyS2Graphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = generate_2d({1.5, 3 + int(seed % 6), 500, 2, seed});
    const auto r = reduce(g, seed + 1000);
    std::string failed;
    ASSERT_TRUE(all_passed(verify_reduction(g, r.graph, r), &failed)) << "seed " << seed << " " << failed;
    std::size_t two = 0;
    for (const auto& node : g.nodes()) two += node.colors.size() == 2;
    EXPECT_EQ(r.splits.size(), two);
  }
}

TEST(Reduce, VerifiesOnHigherDimensions) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate_kd({1.5, 6, 800, 3, seed});
    const auto r = reduce(g, seed);
    std::string failed;
    EXPECT_TRUE(all_passed(verify_reduction(g, r.graph, r), &failed)) << "seed " << seed << " " << failed;
  }
}

TEST(VerifyReduction, DetectsDeletedCircleEdge) {
  const auto g = generate_2d({1.5, 5, 400, 2, 3});
  const auto r = reduce(g, 3);
  GraphBuilder b(r.graph.meta());
  for (const auto& node : r.graph.nodes()) b.add_node(node.colors, node.kind, node.birth);
  bool dropped = false;
  for (const auto& e : r.graph.edges()) {
    if (!dropped && e.kind == EdgeKind::circle) {
      dropped = true;
      continue;
    }
    b.add_edge(e.u, e.v, e.kind);
  }
  ASSERT_TRUE(dropped);
  const auto tampered = std::move(b).build();
  const auto report = verify_reduction(g, tampered, r);
  EXPECT_FALSE(report.passed());
  for (const auto& c : report.checks) {
    if (c.name == "edge-count") {
      EXPECT_FALSE(c.passed);
    }
  }
}

TEST(Reduce, SecondPassIsIdentity) {
  const auto g = generate_2d({1.5, 5, 800, 2, 5});
  const auto h = reduce(g, 1).graph;
  const auto h2 = reduce(h, 2);
  EXPECT_TRUE(h2.splits.empty());
  EXPECT_TRUE(std::ranges::equal(h2.graph.edges(), h.edges()));
  EXPECT_TRUE(std::ranges::equal(h2.graph.nodes(), h.nodes()));
}

TEST(Reduce, Deterministic) {
  const auto g = generate_2d({1.5, 5, 1500, 2, 8});
  std::ostringstream a, b, ma, mb;
  const auto r1 = reduce(g, 42), r2 = reduce(g, 42);
  write_graph(r1.graph, a);
  write_graph(r2.graph, b);
  write_mapping(r1, ma);
  write_mapping(r2, mb);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ma.str(), mb.str());
}

TEST(Reduce, MappingFileFormat) {
  const auto r = reduce(fixtures::two_color_seed(false), 1);
  std::ostringstream os;
  write_mapping(r, os);
  EXPECT_EQ(os.str(),
            "M\t0\t0\t10\nM\t0\t6\t20\nM\t1\t1\t10\nM\t2\t2\t10\nM\t3\t3\t10\nM\t4\t4\t20\nM\t5\t5\t30\n");
}

TEST(Reduce, StructureMismatchThrows) {
  const auto g = fixtures::triangle();
  OverlapStructure s;
  EXPECT_THROW(reduce(g, s, 1), std::invalid_argument);
}
