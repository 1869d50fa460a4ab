#include <swarmfocus/clustering.hpp>
#include <swarmfocus/coverage.hpp>
#include <swarmfocus/dispatch.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace swarmfocus;

namespace {

const Scenario kOpen = make_rectangle_scenario({-30, -30}, 60, 60);

DispatchConfig noiseless(Point event = {10, 0})
{
  DispatchConfig c;
  c.event = {event, 160.0, 15.0};
  return c;
}

/// j at the origin, leader i at (3, 0); the event lies beyond the leader.
struct Pair
{
  SwarmGraph graph;
  Membership cluster{true, true};
};

Pair pair_fixture(const DispatchConfig& c)
{
  Pair p;
  p.graph.add_vertex({0, 0}, event_intensity({0, 0}, c.event));
  p.graph.add_vertex({3, 0}, event_intensity({3, 0}, c.event));
  p.graph.add_edge(0, 1);
  weigh_edges_from_vertices(p.graph);
  return p;
}

Sampler exact_sampler(const DispatchConfig& c)
{
  return [c](Point q) { return event_intensity(q, c.event); };
}

SwarmGraph star_graph()
{
  SwarmGraph g;
  g.add_vertex({0, 0}, 1);
  g.add_vertex({1, 0}, 5);
  g.add_vertex({0, 1}, 3);
  g.add_vertex({-1, 0}, 4);
  g.add_vertex({0, -1}, 9);
  for (VertexId v = 1; v < 5; ++v)
    g.add_edge(0, v);
  return g;
}

} // namespace

//==============================================================================
TEST(RestrictedNeighborhood, FreshSessionSortedByWeight)
{
  const SwarmGraph g = star_graph();
  SessionState s;
  s.session = 1;
  s.stamp.assign(5, 0);
  EXPECT_EQ(restricted_neighborhood(g, Membership(5, true), 0, s), (std::vector<VertexId>{4, 1, 3, 2}));
  // Non-members never appear.
  EXPECT_EQ(restricted_neighborhood(g, {true, true, true, false, false}, 0, s), (std::vector<VertexId>{1, 2}));
}

TEST(RestrictedNeighborhood, StampedVerticesDropped)
{
  const SwarmGraph g = star_graph();
  SessionState s;
  s.session = 2;
  s.stamp = {2, 2, 2, 2, 2};
  EXPECT_TRUE(restricted_neighborhood(g, Membership(5, true), 0, s).empty());
  s.stamp = {2, 1, 2, 0, 2};
  EXPECT_EQ(restricted_neighborhood(g, Membership(5, true), 0, s), (std::vector<VertexId>{1, 3}));
}

//==============================================================================
TEST(VolumeDelta, NoMovementNoNoiseIsZero)
{
  const DispatchConfig c = noiseless();
  const Pair p = pair_fixture(c);
  const VolumeDelta d = volume_delta(p.graph, p.cluster, 0, {0, 0}, p.graph.vertex(0).weight,
    c.noise, kOpen, c.r_v);
  EXPECT_TRUE(d.exact.is_zero());
  EXPECT_EQ(d.value, 0.0);
}

namespace {

// j = 0 with weight 1 and two cluster neighbours; member 3 (weight 2) is
// just out of range and comes into view from the candidate (0.1, 0).
SwarmGraph delta_fixture()
{
  SwarmGraph g;
  g.add_vertex({0, 0}, 1.0);
  g.add_vertex({1, 0}, 7.0);
  g.add_vertex({0, 1}, 8.0);
  g.add_vertex({5.05, 0}, 2.0);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  return g;
}

} // namespace

TEST(VolumeDelta, HandEvaluatedExample)
{
  const SwarmGraph g = delta_fixture();
  const VolumeDelta d = volume_delta(g, Membership(4, true), 0, {0.1, 0}, 1.5, {0.0, 3.0}, kOpen, 5.0);
  EXPECT_EQ(d.old_count, 2u);
  EXPECT_EQ(d.new_count, 3u);
  EXPECT_EQ(d.new_neighbors, std::vector<VertexId>{3});
  EXPECT_EQ(d.value, 4.5);
}

TEST(VolumeDelta, NonMembersIgnored)
{
  const SwarmGraph g = delta_fixture();
  const VolumeDelta d = volume_delta(g, {true, true, false, false}, 0, {0.1, 0}, 1.5, {0.0, 3.0}, kOpen, 5.0);
  EXPECT_EQ(d.old_count, 1u);
  EXPECT_TRUE(d.new_neighbors.empty());
  EXPECT_EQ(d.value, -1.0 + 1.5);
  EXPECT_THROW(volume_delta(g, {false, true, true, true}, 0, {0.1, 0}, 1.5, {}, kOpen, 5.0),
    std::invalid_argument);
}

TEST(VolumeDelta, NoiseCorrectionDividesOldTerm)
{
  const SwarmGraph g = delta_fixture();
  const VolumeDelta d = volume_delta(g, Membership(4, true), 0, {0.1, 0}, 1.5, {0.1, 3.0}, kOpen, 5.0);
  EXPECT_NEAR(d.value, 2.0 - 2.0 / 1.01 + 4.5, 1e-12);
}

//==============================================================================
TEST(MoveStep, AcceptedTowardEvent)
{
  const DispatchConfig c = noiseless();
  const Pair p = pair_fixture(c);
  const StepResult r = move_step(p.graph, p.cluster, 0, 1, kOpen, c, exact_sampler(c));
  ASSERT_EQ(r.outcome, StepOutcome::Accepted);
  EXPECT_NEAR(r.position.x, c.step_length, 1e-15);
  ASSERT_TRUE(r.delta.has_value());
  EXPECT_GT(r.delta->exact.sign(), 0);
}

TEST(MoveStep, RejectedWhenEdgeWouldBreak)
{
  const DispatchConfig c = noiseless();
  Pair p = pair_fixture(c);
  p.graph.add_vertex({-5, 0}, 1.0);
  p.graph.add_edge(0, 2);
  p.cluster.push_back(false);
  const StepResult r = move_step(p.graph, p.cluster, 0, 1, kOpen, c, exact_sampler(c));
  EXPECT_EQ(r.outcome, StepOutcome::EdgeBroken);
  EXPECT_FALSE(r.delta.has_value());
}

TEST(MoveStep, RejectedWhenLeavingFreeSpace)
{
  const DispatchConfig c = noiseless();
  const Scenario s = make_rectangle_scenario({-30, -30}, 60, 60, {make_box_obstacle({0.35, 0.4}, {1.0, 2.0})});
  const Pair p = pair_fixture(c);
  ASSERT_TRUE(disk_fits({0, 0}, c.r_b, s));
  ASSERT_TRUE(visible_pair({0, 0}, {3, 0}, s, c.r_v));
  bool sampled = false;
  const StepResult r = move_step(p.graph, p.cluster, 0, 1, s, c, [&](Point) { sampled = true; return 0.0; });
  EXPECT_EQ(r.outcome, StepOutcome::LeftFreeSpace);
  EXPECT_FALSE(sampled);
}

TEST(MoveStep, RejectedOnCollision)
{
  const DispatchConfig c = noiseless();
  Pair p = pair_fixture(c);
  p.graph.vertex(1).position = {1.1, 0};
  const StepResult r = move_step(p.graph, p.cluster, 0, 1, kOpen, c, exact_sampler(c));
  EXPECT_EQ(r.outcome, StepOutcome::Collision);
}

TEST(MoveStep, NoGainAwayFromEvent)
{
  const DispatchConfig c = noiseless({-10, 0});
  const Pair p = pair_fixture(c);
  const StepResult r = move_step(p.graph, p.cluster, 0, 1, kOpen, c, exact_sampler(c));
  EXPECT_EQ(r.outcome, StepOutcome::NoGain);
  EXPECT_LT(r.delta->exact.sign(), 0);
}

//==============================================================================
TEST(FirFilter, WindowOneIsLatest)
{
  FirFilter f(1);
  f.update(3.0);
  EXPECT_EQ(f.update(7.5), 7.5);
  EXPECT_EQ(f.size(), 1u);
}

TEST(FirFilter, ConstantInputIsExact)
{
  FirFilter f(5);
  const double x = event_intensity({3, 4}, {{0, 0}, 160, 15});
  for (int k = 0; k < 12; ++k)
    EXPECT_EQ(f.update(x), x);
}

TEST(FirFilter, MeanOfRetainedAndReset)
{
  FirFilter f(3);
  f.update(1);
  f.update(2);
  f.update(3);
  EXPECT_EQ(f.update(7), 4.0);
  f.reset();
  EXPECT_EQ(f.size(), 0u);
  EXPECT_EQ(f.update(10), 10.0);
  EXPECT_THROW(FirFilter(0), std::invalid_argument);
}

TEST(FirFilter, WindowTenCutsVarianceTenfold)
{
  const EventField field{{0, 0}, 160, 15};
  const NoiseModel noise{0.2, 3.0};
  const Point p{2, 1};
  const double f = event_intensity(p, field);
  AgentRng rng(55);
  double raw = 0, filtered = 0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t)
  {
    FirFilter fir(10);
    double last = 0;
    for (int k = 0; k < 10; ++k)
    {
      const double s = sense_event(p, field, noise, rng);
      if (k == 0)
        raw += (s - f) * (s - f);
      last = fir.update(s);
    }
    filtered += (last - f) * (last - f);
  }
  EXPECT_NEAR(raw / filtered, 10.0, 0.3);
}

//==============================================================================
TEST(CheckDispatchConfig, RejectsInvalid)
{
  DispatchConfig c;
  EXPECT_NO_THROW(check_dispatch_config(c));
  c.step_length = 0;
  EXPECT_THROW(check_dispatch_config(c), std::invalid_argument);
  c = {};
  c.fir_window = 0;
  EXPECT_THROW(check_dispatch_config(c), std::invalid_argument);
  c = {};
  c.leg_steps = 0;
  EXPECT_THROW(check_dispatch_config(c), std::invalid_argument);
}

TEST(DispatchSession, LocalOptimumSettles)
{
  // The event sits on the leader; the other agent is already touching it.
  const DispatchConfig c = noiseless({0.0, 0.0});
  SwarmGraph g;
  g.add_vertex({0, 0}, event_intensity({0, 0}, c.event));
  g.add_vertex({1.0, 0}, event_intensity({1.0, 0}, c.event));
  g.add_edge(0, 1);
  Dispatcher d(g, {true, true}, kOpen, c);
  EXPECT_TRUE(d.session(0));
  EXPECT_TRUE(d.trace().rows.empty());
  EXPECT_EQ(d.state().session, 1u);
}

TEST(DispatchSession, GradientMovesFollower)
{
  const DispatchConfig c = noiseless();
  const Pair p = pair_fixture(c);
  Dispatcher d(p.graph, p.cluster, kOpen, c);
  EXPECT_FALSE(d.session(1));
  ASSERT_FALSE(d.trace().rows.empty());
  for (const auto& row : d.trace().rows)
  {
    EXPECT_EQ(row.agent, 0u);
    EXPECT_EQ(row.toward, 1u);
  }
  EXPECT_GT(d.graph().vertex(0).position.x, 0.0);
  EXPECT_GE(distance(d.graph().vertex(0).position, d.graph().vertex(1).position), 2 * c.r_b);
  EXPECT_EQ(d.graph().vertex(0).weight, event_intensity(d.graph().vertex(0).position, c.event));
}

TEST(DispatchSession, StampedVerticesNotRevisited)
{
  // A dense cluster on a lattice: each agent runs at most one leg per session.
  const DispatchConfig c = noiseless({20, 20});
  std::vector<Point> pts;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      pts.push_back({3.0 * i + 1.5 * j, 2.6 * j});
  SwarmGraph g = build_visibility_graph(pts, kOpen, c.r_v);
  for (VertexId v = 0; v < g.size(); ++v)
    g.vertex(v).weight = event_intensity(g.vertex(v).position, c.event);
  weigh_edges_from_vertices(g);
  Membership cluster(g.size(), true);
  cluster[0] = false;
  Dispatcher d(g, cluster, kOpen, c);
  d.session(15);
  std::map<VertexId, std::set<VertexId>> legs;
  std::vector<VertexId> order;
  for (const auto& row : d.trace().rows)
    if (order.empty() || order.back() != row.agent)
      order.push_back(row.agent);
  std::set<VertexId> unique(order.begin(), order.end());
  EXPECT_EQ(unique.size(), order.size());
  EXPECT_EQ(unique.count(0), 0u);
  for (VertexId v = 0; v < g.size(); ++v)
    EXPECT_LE(d.state().stamp[v], d.state().session);
}

TEST(DispatchLoop, MaxIterZeroDoesNothing)
{
  DispatchConfig c = noiseless();
  c.max_iter = 0;
  const Pair p = pair_fixture(c);
  const DispatchResult r = dispatch_loop(p.graph, p.cluster, 1, kOpen, c);
  EXPECT_TRUE(r.trace.rows.empty());
  EXPECT_EQ(r.state.session, 0u);
  EXPECT_EQ(r.mean_cluster_displacement(), 0.0);
}

TEST(DispatchLoop, TerminatesWithinMaxIter)
{
  DispatchConfig c = noiseless();
  c.max_iter = 3;
  const Pair p = pair_fixture(c);
  const DispatchResult r = dispatch_loop(p.graph, p.cluster, 1, kOpen, c);
  EXPECT_LE(r.state.session, 3u);
  EXPECT_EQ(r.trace.leaders.size(), r.state.session);
}

//==============================================================================
TEST(DispatchLoop, StructuredRunObeysLaws)
{
  const Scenario s = make_rectangle_scenario({-15, -15}, 30, 30,
    {make_box_obstacle({-2, 4}, {2, 8}), make_box_obstacle({-10, -10}, {-6, -5}),
     make_box_obstacle({5, -9}, {9, -4}), make_box_obstacle({6, 4}, {10, 9}),
     make_box_obstacle({-11, 3}, {-7, 8}), make_box_obstacle({-1, -7}, {1, -3})});
  DeploymentConfig dc;
  dc.base_station = {0, 0};
  const CoverageResult cov = coverage_run(s, dc);
  DispatchConfig c = noiseless({8, 0});
  SwarmGraph g = cov.graph;
  for (VertexId v = 0; v < g.size(); ++v)
    g.vertex(v).weight = event_intensity(g.vertex(v).position, c.event);
  weigh_edges_from_vertices(g);
  VertexId leader = 0;
  for (VertexId v = 1; v < g.size(); ++v)
    if (g.vertex(v).weight > g.vertex(leader).weight)
      leader = v;
  const ClusterState cl = grow_cluster(g, leader, 15);
  const DispatchResult r = dispatch_loop(g, cl.cluster, leader, s, c);

  const double cut0 = cut_weight({g, cl.cluster});
  EXPECT_EQ(cut_weight({r.graph, r.cluster}), cut0);
  for (const auto& [i, j] : g.edges())
    EXPECT_TRUE(r.graph.has_edge(i, j));
  for (const auto& row : r.trace.rows)
  {
    EXPECT_TRUE(row.local_matches_global);
    EXPECT_GT(row.delta_local, 0.0);
    EXPECT_EQ(row.eps_c, cut0);
    if (row.eps_c > 0)
      EXPECT_LT(row.h_cl_after, row.h_cl_before);
  }
  for (VertexId v = 0; v < r.graph.size(); ++v)
  {
    EXPECT_TRUE(disk_fits(r.graph.vertex(v).position, c.r_b, s));
    for (VertexId u = v + 1; u < r.graph.size(); ++u)
      EXPECT_GE(distance(r.graph.vertex(v).position, r.graph.vertex(u).position), 2 * c.r_b);
  }
}

TEST(DispatchLoop, NoisyRunIsDeterministicPerSeed)
{
  DispatchConfig c = noiseless();
  c.noise = {0.05, 3.0};
  c.seed = 9;
  const Pair p = pair_fixture(c);
  const DispatchResult a = dispatch_loop(p.graph, p.cluster, 1, kOpen, c);
  const DispatchResult b = dispatch_loop(p.graph, p.cluster, 1, kOpen, c);
  ASSERT_EQ(a.trace.rows.size(), b.trace.rows.size());
  EXPECT_EQ(a.graph.vertex(0).position, b.graph.vertex(0).position);
}
