#include <swarmfocus/coverage.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

namespace swarmfocus {

namespace {

constexpr int kBisections = 60;

/// A disk of radius r swept from a to b stays in the free space.
bool sweep_clear(Point a, Point b, double r, const Scenario& scenario)
{
  if (!point_in_free_space(a, scenario) || !point_in_free_space(b, scenario))
    return false;
  for (const auto& e : scenario.barrier_edges())
    if (segment_segment_distance({a, b}, e) <= r + kEpsGeo)
      return false;
  return true;
}

/// Furthest fraction t of a->b such that the sweep a->a+t(b-a) is clear.
/// Assumes the sweep of zero length is clear.
double last_clear_fraction(Point a, Point b, double r, const Scenario& scenario)
{
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < kBisections; ++i)
  {
    const double mid = 0.5 * (lo + hi);
    if (sweep_clear(a, a + mid * (b - a), r, scenario))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Point nearest_barrier_point(Point p, const Scenario& scenario)
{
  double best = std::numeric_limits<double>::infinity();
  Point out = p;
  for (const auto& e : scenario.barrier_edges())
  {
    const Point d = e.b - e.a;
    const double len2 = dot(d, d);
    const double t = len2 > 0.0 ? std::clamp(dot(p - e.a, d) / len2, 0.0, 1.0) : 0.0;
    const Point c = e.a + t * d;
    const double dist = distance(p, c);
    if (dist < best)
    {
      best = dist;
      out = c;
    }
  }
  return out;
}

double impact_direction(Point p, const Scenario& scenario, const TouchConfig& touch)
{
  const Point c = nearest_barrier_point(p, scenario);
  const Point d = c - p;
  return contact_direction(std::atan2(d.y, d.x), touch);
}

bool occupied(Point target, const std::vector<DeployedAgent>& agents, double radius)
{
  for (const auto& a : agents)
    if (distance(a.position, target) < radius)
      return true;
  return false;
}

/// Some free point seen from `target` within r_v is not yet seen by any
/// agent. Samples a grid of pitch r_b / 2 centred on the target.
bool adds_coverage(
  Point target, const std::vector<DeployedAgent>& agents, const Scenario& scenario, const DeploymentConfig& config)
{
  std::vector<Point> near;
  for (const auto& a : agents)
    if (distance(a.position, target) <= 2.0 * config.r_v)
      near.push_back(a.position);
  const double pitch = 0.5 * config.r_b;
  const int n = static_cast<int>(std::floor(config.r_v / pitch));
  for (int j = -n; j <= n; ++j)
    for (int i = -n; i <= n; ++i)
    {
      const Point p{target.x + i * pitch, target.y + j * pitch};
      if (distance(p, target) > config.r_v || !point_in_free_space(p, scenario)
          || !segment_clear(target, p, scenario))
        continue;
      bool seen = false;
      for (const Point& a : near)
        if (distance(a, p) <= config.r_v && segment_clear(a, p, scenario))
        {
          seen = true;
          break;
        }
      if (!seen)
        return true;
    }
  return false;
}

double range_gain(double r_b, double desired_subtended)
{
  const double d = r_b / std::sin(0.5 * desired_subtended);
  const double s = r_b / d;
  return d * d * std::sqrt(std::max(0.0, 1.0 - s * s)) / (2.0 * r_b);
}

} // namespace

void check_deployment(const DeploymentConfig& config, const Scenario& scenario)
{
  if (!(config.r_b > 0.0))
    throw std::invalid_argument("deployment: r_b must be positive");
  if (config.r_v < 4.0 * config.r_b)
    throw std::invalid_argument("deployment: r_v must be at least 4 r_b");
  if (!(config.spacing_factor > 0.0) || config.spacing_factor > 1.0)
    throw std::invalid_argument("deployment: spacing_factor must lie in (0, 1]");
  if (!(config.dt > 0.0) || !(config.k_p > 0.0) || !(config.max_speed > 0.0))
    throw std::invalid_argument("deployment: dt, k_p and max_speed must be positive");
  if (config.touch.contact_points < 1)
    throw std::invalid_argument("deployment: at least one contact point is required");
  if (!disk_fits(config.base_station, config.r_b, scenario))
    throw std::invalid_argument("deployment: base station does not fit in the free space");
}

//==============================================================================
std::vector<Slot> frontier_slots(
  const std::vector<DeployedAgent>& agents,
  VertexId owner,
  const Scenario& scenario,
  const DeploymentConfig& config,
  std::array<bool, 6> blocked)
{
  const DeployedAgent& me = agents.at(owner);
  const double step = config.spacing();
  const double floor_range = config.occupancy_radius();
  std::vector<Slot> out;
  for (int k = 0; k < 6; ++k)
  {
    if (blocked[k])
      continue;
    const Point u = unit_from_angle(me.reference + k * kPi / 3.0);
    const Point full = me.position + step * u;
    Slot slot{k, full, false};
    if (!sweep_clear(me.position, full, config.r_b, scenario))
    {
      const double t = last_clear_fraction(me.position, full, config.r_b, scenario);
      if (t * step < floor_range)
        continue;
      slot.target = me.position + t * step * u;
      slot.clipped = true;
    }
    if (occupied(slot.target, agents, floor_range) || !adds_coverage(slot.target, agents, scenario, config))
      continue;
    out.push_back(slot);
  }
  return out;
}

//==============================================================================
Landmark make_landmark(Point landmark, Point target, double r_b)
{
  Landmark out;
  out.position = landmark;
  out.desired_bearing = bearing(target, 0.0, landmark);
  out.desired_subtended = subtended_angle(r_b, distance(target, landmark));
  return out;
}

NavigationResult navigate_to_slot(
  Point start,
  const std::vector<Landmark>& landmarks,
  const Scenario& scenario,
  const DeploymentConfig& config)
{
  if (landmarks.empty())
    throw NavigationError("navigate_to_slot: no landmarks to home on");

  std::vector<double> gains;
  for (const auto& l : landmarks)
    gains.push_back(range_gain(config.r_b, l.desired_subtended));

  NavigationResult out;
  Point p = start;
  for (std::size_t step = 0; step < config.step_budget; ++step)
  {
    Point v{0.0, 0.0};
    bool any = false;
    bool done = true;
    for (std::size_t j = 0; j < landmarks.size(); ++j)
    {
      const Landmark& l = landmarks[j];
      const double d = distance(p, l.position);
      if (d <= config.r_b || !visible_pair(p, l.position, scenario, config.r_v))
        continue;
      any = true;
      const double theta = bearing(p, 0.0, l.position);
      const double e_theta = wrap_angle(theta - l.desired_bearing);
      const double e_alpha = subtended_angle(config.r_b, d) - l.desired_subtended;
      if (std::abs(e_theta) >= config.eps_ang || std::abs(e_alpha) >= config.eps_ang)
        done = false;
      const double d_star = config.r_b / std::sin(0.5 * l.desired_subtended);
      const Point g = unit_from_angle(theta);
      const Point t{std::sin(theta), -std::cos(theta)};
      v = v - (e_theta * d_star) * t - (e_alpha * gains[j]) * g;
    }
    out.steps = step;
    if (!any)
      break;
    if (done)
    {
      out.converged = true;
      break;
    }
    v = config.k_p * v;
    const double speed = norm(v);
    if (speed > config.max_speed)
      v = (config.max_speed / speed) * v;

    const Point q = p + config.dt * v;
    if (!sweep_clear(p, q, config.r_b, scenario))
    {
      const double t = last_clear_fraction(p, q, config.r_b, scenario);
      p = p + t * (q - p);
      out.contact = true;
      out.contact_direction = impact_direction(p, scenario, config.touch);
      out.steps = step + 1;
      break;
    }
    p = q;
    out.steps = step + 1;
  }
  out.position = p;
  return out;
}

//==============================================================================
SwarmGraph graph_from_agents(
  const std::vector<DeployedAgent>& agents, const Scenario& scenario, double r_v)
{
  std::vector<Point> positions;
  positions.reserve(agents.size());
  for (const auto& a : agents)
    positions.push_back(a.position);
  SwarmGraph g = build_visibility_graph(positions, scenario, r_v);
  for (VertexId i = 0; i < agents.size(); ++i)
    g.vertex(i).contact = agents[i].contact;
  return g;
}

CoverageResult coverage_run(const Scenario& scenario, const DeploymentConfig& config)
{
  check_deployment(config, scenario);

  CoverageResult result;
  DeployedAgent base;
  base.position = config.base_station;
  base.reference = 0.0;
  base.parent = kBaseStation;
  base.contact = distance_to_barriers(base.position, scenario) <= config.r_b + kEpsGeo;
  result.agents.push_back(base);

  std::vector<std::array<bool, 6>> blocked(1);
  std::deque<VertexId> queue{kBaseStation};

  auto finish = [&]()
  {
    result.graph = graph_from_agents(result.agents, scenario, config.r_v);
  };

  while (!queue.empty())
  {
    const VertexId owner = queue.front();
    auto slots = frontier_slots(result.agents, owner, scenario, config, blocked[owner]);
    if (slots.empty())
    {
      queue.pop_front();
      continue;
    }

    if (result.agents.size() >= config.max_agents)
    {
      finish();
      throw PartialCoverageError(
        "coverage_run: agent cap of " + std::to_string(config.max_agents)
          + " reached with free slots remaining",
        std::move(result));
    }

    // Full lattice steps first; a clipped slot may turn out redundant once
    // they are filled.
    const auto full = std::find_if(slots.begin(), slots.end(), [](const Slot& x) { return !x.clipped; });
    const Slot slot = full != slots.end() ? *full : slots.front();
    const DeployedAgent& me = result.agents[owner];
    const double ray = me.reference + slot.direction * kPi / 3.0;

    std::vector<Landmark> landmarks;
    std::vector<VertexId> landmark_ids;
    for (VertexId j = 0; j < result.agents.size(); ++j)
    {
      const Point pj = result.agents[j].position;
      if (distance(pj, slot.target) <= config.r_b)
        continue;
      if (j == owner || visible_pair(slot.target, pj, scenario, config.r_v))
      {
        landmarks.push_back(make_landmark(pj, slot.target, config.r_b));
        landmark_ids.push_back(j);
      }
    }

    const Point start = me.position + (2.0 * config.r_b) * unit_from_angle(ray);
    const NavigationResult nav = navigate_to_slot(start, landmarks, scenario, config);

    bool accept = nav.converged || nav.contact;
    if (accept)
    {
      for (const auto& a : result.agents)
        if (distance(a.position, nav.position) < std::max(2.0 * config.r_b, config.occupancy_radius()))
          accept = false;
      if (!visible_pair(nav.position, me.position, scenario, config.r_v))
        accept = false;
    }
    if (!accept)
    {
      blocked[owner][slot.direction] = true;
      ++result.abandoned_slots;
      continue;
    }

    DeployedAgent agent;
    agent.position = nav.position;
    agent.reference = wrap_angle(ray);
    agent.parent = owner;
    agent.contact = nav.contact || slot.clipped;
    if (nav.contact)
      agent.contact_direction = nav.contact_direction;
    else if (slot.clipped)
      agent.contact_direction = impact_direction(nav.position, scenario, config.touch);

    PlacementEvent event;
    event.agent = result.agents.size();
    event.owner = owner;
    event.position = agent.position;
    event.landmarks = landmark_ids;
    event.contact = agent.contact;
    event.contact_direction = agent.contact_direction;
    event.steps = nav.steps;

    result.agents.push_back(agent);
    blocked.emplace_back();
    result.placements.push_back(event);
    queue.push_back(event.agent);
  }

  finish();
  return result;
}

//==============================================================================
GridCoverage grid_coverage(
  const std::vector<Point>& agents,
  const Scenario& scenario,
  Point base_station,
  double r_v,
  double pitch)
{
  if (!(pitch > 0.0))
    throw std::invalid_argument("grid_coverage: pitch must be positive");

  const Point lo = scenario.min_corner();
  const Point hi = scenario.max_corner();
  const auto nx = static_cast<std::size_t>(std::floor((hi.x - lo.x) / pitch)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor((hi.y - lo.y) / pitch)) + 1;
  auto at = [&](std::size_t i, std::size_t j) { return Point{lo.x + i * pitch, lo.y + j * pitch}; };
  auto index = [&](std::size_t i, std::size_t j) { return j * nx + i; };

  std::vector<char> free(nx * ny, 0);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      free[index(i, j)] = point_in_free_space(at(i, j), scenario) ? 1 : 0;

  // Seed: the free grid point nearest the base station that it can see.
  std::size_t seed = nx * ny;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
    {
      if (!free[index(i, j)])
        continue;
      const double d = distance(at(i, j), base_station);
      if (d < best && (d == 0.0 || segment_clear(base_station, at(i, j), scenario)))
      {
        best = d;
        seed = index(i, j);
      }
    }

  GridCoverage out;
  if (seed == nx * ny)
    return out;

  std::vector<char> reached(nx * ny, 0);
  std::vector<std::size_t> stack{seed};
  reached[seed] = 1;
  while (!stack.empty())
  {
    const std::size_t c = stack.back();
    stack.pop_back();
    const std::size_t i = c % nx;
    const std::size_t j = c / nx;
    const Point p = at(i, j);
    const std::pair<long, long> steps[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (auto [di, dj] : steps)
    {
      const long ii = static_cast<long>(i) + di;
      const long jj = static_cast<long>(j) + dj;
      if (ii < 0 || jj < 0 || ii >= static_cast<long>(nx) || jj >= static_cast<long>(ny))
        continue;
      const std::size_t n = index(ii, jj);
      if (reached[n] || !free[n] || !segment_clear(p, at(ii, jj), scenario))
        continue;
      reached[n] = 1;
      stack.push_back(n);
    }
  }

  // Bucket agents on an r_v grid so each point only checks nearby agents.
  const auto bx = static_cast<long>(std::floor((hi.x - lo.x) / r_v)) + 1;
  const auto by = static_cast<long>(std::floor((hi.y - lo.y) / r_v)) + 1;
  std::unordered_map<long, std::vector<Point>> buckets;
  auto bucket_of = [&](Point p)
  {
    const long i = std::clamp(static_cast<long>(std::floor((p.x - lo.x) / r_v)), 0L, bx - 1);
    const long j = std::clamp(static_cast<long>(std::floor((p.y - lo.y) / r_v)), 0L, by - 1);
    return std::pair{i, j};
  };
  for (const auto& a : agents)
  {
    const auto [i, j] = bucket_of(a);
    buckets[j * bx + i].push_back(a);
  }

  for (std::size_t c = 0; c < reached.size(); ++c)
  {
    if (!reached[c])
      continue;
    ++out.total;
    const Point p = at(c % nx, c / nx);
    const auto [bi, bj] = bucket_of(p);
    bool seen = false;
    for (long j = bj - 1; j <= bj + 1 && !seen; ++j)
      for (long i = bi - 1; i <= bi + 1 && !seen; ++i)
      {
        const auto it = buckets.find(j * bx + i);
        if (i < 0 || j < 0 || i >= bx || j >= by || it == buckets.end())
          continue;
        for (const Point& a : it->second)
          if (distance(a, p) <= r_v && (a == p || segment_clear(a, p, scenario)))
          {
            seen = true;
            break;
          }
      }
    if (seen)
      ++out.covered;
  }
  return out;
}

//==============================================================================
RipsComplex::Subcomplex RipsComplex::fence() const
{
  Subcomplex out;
  auto merge = [](const auto& a, const auto& b, auto& dst)
  {
    std::set<typename std::decay_t<decltype(dst)>::value_type> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    dst.assign(s.begin(), s.end());
  };
  merge(frontier.vertices, obstacle.vertices, out.vertices);
  merge(frontier.edges, obstacle.edges, out.edges);
  merge(frontier.triangles, obstacle.triangles, out.triangles);
  return out;
}

RipsComplex build_rips(
  const std::vector<Point>& positions,
  const Scenario& scenario,
  double r_v,
  const std::vector<bool>& contact,
  const std::vector<bool>& frontier)
{
  const std::size_t n = positions.size();
  auto flag = [&](const std::vector<bool>& f, VertexId v) { return v < f.size() && f[v]; };

  RipsComplex out;
  out.vertex_count = n;
  const SwarmGraph g = build_visibility_graph(positions, scenario, r_v);
  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_index;
  for (const auto& [i, j] : g.edges())
  {
    edge_index[{i, j}] = out.edges.size();
    out.edges.push_back({i, j});
  }
  for (const auto& [i, j] : g.edges())
    for (const auto& [k, w] : g.neighbors(j))
      if (k > j && g.has_edge(i, k))
        out.triangles.push_back({i, j, k});

  // O: every agent of the simplex touched a barrier. Closed under faces.
  for (VertexId v = 0; v < n; ++v)
    if (flag(contact, v))
      out.obstacle.vertices.push_back(v);
  for (std::size_t e = 0; e < out.edges.size(); ++e)
    if (flag(contact, out.edges[e][0]) && flag(contact, out.edges[e][1]))
      out.obstacle.edges.push_back(e);
  for (std::size_t t = 0; t < out.triangles.size(); ++t)
  {
    const auto& tri = out.triangles[t];
    if (flag(contact, tri[0]) && flag(contact, tri[1]) && flag(contact, tri[2]))
      out.obstacle.triangles.push_back(t);
  }

  // F: simplices with a frontier agent, closed under taking faces.
  std::set<VertexId> fv;
  std::set<std::size_t> fe;
  for (std::size_t t = 0; t < out.triangles.size(); ++t)
  {
    const auto& tri = out.triangles[t];
    if (flag(frontier, tri[0]) || flag(frontier, tri[1]) || flag(frontier, tri[2]))
    {
      out.frontier.triangles.push_back(t);
      fe.insert(edge_index.at({tri[0], tri[1]}));
      fe.insert(edge_index.at({tri[0], tri[2]}));
      fe.insert(edge_index.at({tri[1], tri[2]}));
    }
  }
  for (std::size_t e = 0; e < out.edges.size(); ++e)
    if (flag(frontier, out.edges[e][0]) || flag(frontier, out.edges[e][1]))
      fe.insert(e);
  for (std::size_t e : fe)
  {
    fv.insert(out.edges[e][0]);
    fv.insert(out.edges[e][1]);
  }
  for (VertexId v = 0; v < n; ++v)
    if (flag(frontier, v))
      fv.insert(v);
  out.frontier.vertices.assign(fv.begin(), fv.end());
  out.frontier.edges.assign(fe.begin(), fe.end());
  return out;
}

std::vector<bool> frontier_flags(
  const std::vector<DeployedAgent>& agents,
  const Scenario& scenario,
  const DeploymentConfig& config)
{
  std::vector<bool> out(agents.size(), false);
  for (VertexId i = 0; i < agents.size(); ++i)
    out[i] = !frontier_slots(agents, i, scenario, config).empty();
  return out;
}

//==============================================================================
double BearingTable::at(VertexId measurer, VertexId target) const
{
  const auto it = table_.find({measurer, target});
  if (it == table_.end())
    throw std::out_of_range(
      "BearingTable: no bearing from " + std::to_string(measurer) + " to " + std::to_string(target));
  return it->second;
}

void BearingTable::set(VertexId measurer, VertexId target, double theta)
{
  table_[{measurer, target}] = theta;
}

BearingTable measure_bearings(const SwarmGraph& graph, const std::vector<double>& headings)
{
  auto heading = [&](VertexId v) { return v < headings.size() ? headings[v] : 0.0; };
  BearingTable out;
  for (const auto& [i, j] : graph.edges())
  {
    const Point pi = graph.vertex(i).position;
    const Point pj = graph.vertex(j).position;
    out.set(i, j, bearing(pi, heading(i), pj));
    out.set(j, i, bearing(pj, heading(j), pi));
  }
  return out;
}

std::vector<RedundancyLabel> redundant_agent_search(
  const SwarmGraph& graph, const BearingTable& bearings, double eps_ang)
{
  std::set<VertexId> straight;
  std::set<VertexId> enclosed;

  for (VertexId i = 0; i < graph.size(); ++i)
  {
    const auto& ni = graph.neighbors(i);
    for (auto a = ni.begin(); a != ni.end(); ++a)
      for (auto b = std::next(a); b != ni.end(); ++b)
      {
        const VertexId j = a->first;
        const VertexId k = b->first;
        if (j < i || !graph.has_edge(j, k))
          continue;
        // Triangle {i, j, k} with i < j < k.
        const VertexId tri[3] = {i, j, k};
        for (int m = 0; m < 3; ++m)
        {
          const VertexId c = tri[m];
          const VertexId x = tri[(m + 1) % 3];
          const VertexId y = tri[(m + 2) % 3];
          const double rel = relative_bearing(bearings.at(c, x), bearings.at(c, y));
          if (std::abs(rel) >= kPi - eps_ang && c != kBaseStation)
            straight.insert(c);
        }
        // A common neighbour whose bearings to the three corners turn a full circle.
        for (const auto& [c, w] : graph.neighbors(i))
        {
          if (c == j || c == k || c == kBaseStation)
            continue;
          if (!graph.has_edge(c, j) || !graph.has_edge(c, k))
            continue;
          const double t0 = bearings.at(c, i);
          const double t1 = bearings.at(c, j);
          const double t2 = bearings.at(c, k);
          const double sum = std::abs(relative_bearing(t0, t1))
            + std::abs(relative_bearing(t1, t2))
            + std::abs(relative_bearing(t2, t0));
          if (std::abs(sum - 2.0 * kPi) <= eps_ang)
            enclosed.insert(c);
        }
      }
  }

  std::vector<RedundancyLabel> out;
  for (VertexId v : straight)
    out.push_back({v, RedundancyKind::OneSimplex});
  for (VertexId v : enclosed)
    if (!straight.contains(v))
      out.push_back({v, RedundancyKind::TwoSimplex});
  std::sort(out.begin(), out.end(),
    [](const RedundancyLabel& a, const RedundancyLabel& b) { return a.agent < b.agent; });
  return out;
}

PruneResult prune_redundant(
  const SwarmGraph& graph,
  const std::vector<RedundancyLabel>& labels,
  const Scenario& scenario,
  const PruneConfig& config)
{
  PruneResult out;
  out.graph = graph;
  std::vector<VertexId> tags(graph.size());
  std::iota(tags.begin(), tags.end(), VertexId{0});

  const GridCoverage baseline =
    grid_coverage(graph.positions(), scenario, config.base_station, config.r_v, config.grid_pitch);
  const bool was_connected = is_connected(graph);

  std::set<VertexId> tried;
  std::vector<RedundancyLabel> current = labels;
  while (true)
  {
    std::optional<VertexId> pick;
    for (const auto& l : current)
    {
      if (l.agent >= tags.size() || tags[l.agent] == kBaseStation || tried.contains(tags[l.agent]))
        continue;
      if (!pick || l.agent < *pick)
        pick = l.agent;
    }
    if (!pick)
      break;

    const VertexId tag = tags[*pick];
    tried.insert(tag);
    SwarmGraph candidate = out.graph.without_vertex(*pick);
    bool ok = !was_connected || is_connected(candidate);
    if (ok)
    {
      const GridCoverage after = grid_coverage(
        candidate.positions(), scenario, config.base_station, config.r_v, config.grid_pitch);
      ok = after.covered >= baseline.covered;
    }
    if (!ok)
    {
      out.retained.push_back(tag);
      continue;
    }
    out.graph = std::move(candidate);
    tags.erase(tags.begin() + static_cast<std::ptrdiff_t>(*pick));
    out.removed.push_back(tag);
    current = redundant_agent_search(out.graph, measure_bearings(out.graph), config.eps_ang);
  }
  return out;
}

} // namespace swarmfocus
