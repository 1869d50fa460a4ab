#include "graph_fixtures.hpp"

#include <swarmfocus/clustering.hpp>
#include <swarmfocus/consensus.hpp>

#include <gtest/gtest.h>

using namespace swarmfocus;
using namespace swarmfocus::testing;

namespace {

SwarmGraph star(double centre, std::vector<double> leaves)
{
  SwarmGraph g;
  g.add_vertex({0, 0}, centre);
  for (std::size_t k = 0; k < leaves.size(); ++k)
  {
    g.add_vertex({double(k + 1), 1}, leaves[k]);
    g.add_edge(0, k + 1);
  }
  weigh_edges_from_vertices(g);
  return g;
}

} // namespace

TEST(SortedNeighborhood, Examples)
{
  const SwarmGraph g = star(0, {3, 1, 2});
  EXPECT_EQ(sorted_neighborhood(g, 0), (std::vector<VertexId>{1, 3, 2}));

  const SwarmGraph flat = star(0, {1, 1, 1});
  EXPECT_EQ(sorted_neighborhood(flat, 0), (std::vector<VertexId>{1, 2, 3}));

  SwarmGraph lone;
  lone.add_vertex({0, 0});
  EXPECT_TRUE(sorted_neighborhood(lone, 0).empty());
}

TEST(GrowCluster, TargetOneIsLeaderAlone)
{
  const SwarmGraph g = star(10, {5, 4, 3});
  EXPECT_EQ(grow_cluster(g, 0, 1).members(), std::vector<VertexId>{0});
}

TEST(GrowCluster, StarTakesTwoHeaviestLeaves)
{
  const SwarmGraph g = star(10, {5, 4, 3});
  EXPECT_EQ(grow_cluster(g, 0, 3).members(), (std::vector<VertexId>{0, 1, 2}));
}

TEST(GrowCluster, FullTargetTakesEverything)
{
  std::mt19937_64 rng(1);
  SwarmGraph g = random_connected_graph(rng, 30, 0.05);
  weigh_edges_from_vertices(g);
  EXPECT_EQ(grow_cluster(g, 4, 30).size, 30u);
}

TEST(GrowCluster, OversizedTargetIsClamped)
{
  const SwarmGraph g = star(10, {5, 4, 3});
  const ClusterState s = grow_cluster(g, 0, 9);
  EXPECT_TRUE(s.target_clamped);
  EXPECT_EQ(s.size, 4u);
}

TEST(GrowCluster, GreedyHopFollowsBetterNeighbour)
{
  // Path 0 - 1 - 2 - 3 with rising weights: the token walks outward.
  SwarmGraph g;
  for (int k = 0; k < 4; ++k)
    g.add_vertex({double(k), 0}, double(k + 1));
  for (VertexId k = 1; k < 4; ++k)
    g.add_edge(k - 1, k);
  weigh_edges_from_vertices(g);
  const ClusterState s = grow_cluster(g, 0, 4);
  ASSERT_GE(s.hops.size(), 2u);
  EXPECT_EQ(s.hops[0].from, 0u);
  EXPECT_EQ(s.hops[0].to, 1u);
  EXPECT_EQ(s.hops[1].to, 2u);
}

TEST(GrowCluster, PropertiesOnRandomGraphs)
{
  static_assert(sizeof(HopMessage) == sizeof(std::size_t), "hop carries only the cardinality");
  std::mt19937_64 rng(77);
  for (int t = 0; t < 300; ++t)
  {
    const std::size_t n = 1 + t % 60;
    SwarmGraph g = random_connected_graph(rng, n, 3.0 / double(n));
    weigh_edges_from_vertices(g);
    const VertexId leader = max_consensus(g, 0).leader;
    const std::size_t target = 1 + t % 25;
    const ClusterState s = grow_cluster(g, leader, target);

    ASSERT_EQ(s.size, std::min(target, n));
    ASSERT_EQ(s.members().size(), s.size);
    ASSERT_TRUE(s.cluster[leader]);
    ASSERT_TRUE(is_connected(g, s.cluster));
    for (VertexId v = 0; v < n; ++v)
      if (s.completed[v])
        ASSERT_TRUE(s.cluster[v]);
    std::size_t last = 0;
    for (const Hop& h : s.hops)
    {
      ASSERT_TRUE(g.has_edge(h.from, h.to));
      ASSERT_GE(h.message.cluster_size, last);
      ASSERT_LE(h.message.cluster_size, s.target);
      last = h.message.cluster_size;
    }

    const ClusterState again = grow_cluster(g, leader, target);
    ASSERT_EQ(again.members(), s.members());
  }
}
