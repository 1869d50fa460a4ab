#ifndef SWARMFOCUS__COVERAGE_HPP
#define SWARMFOCUS__COVERAGE_HPP

#include <swarmfocus/geometry.hpp>
#include <swarmfocus/netgraph.hpp>
#include <swarmfocus/sensing.hpp>

#include <array>
#include <map>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace swarmfocus {

struct DeploymentConfig
{
  Point base_station;
  double r_b = 0.5;
  double r_v = 5.0;
  double k_p = 1.0;
  std::size_t max_agents = 5000;
  double eps_ang = 1e-3;
  /// Hexagonal lattice pitch as a fraction of r_v.
  double spacing_factor = 0.98;
  double dt = 0.05;
  std::size_t step_budget = 10000;
  double max_speed = 2.0;
  TouchConfig touch;

  double spacing() const { return spacing_factor * r_v; }
  /// Distance under which a slot counts as already occupied.
  double occupancy_radius() const { return 0.5 * r_v; }
};

/// Throws std::invalid_argument when r_v < 4 r_b or the base station does
/// not fit in the free space.
void check_deployment(const DeploymentConfig& config, const Scenario& scenario);

//==============================================================================
struct DeployedAgent
{
  Point position;
  /// Lattice reference direction (placement bearing from the parent).
  double reference = 0.0;
  VertexId parent = kBaseStation;
  bool contact = false;
  std::optional<double> contact_direction;
};

struct Slot
{
  int direction = 0;
  Point target;
  /// Pulled in along the ray because the full lattice step hit a barrier.
  bool clipped = false;
};

/// Up to six lattice targets around `owner` at bearings reference + k*pi/3.
/// Targets are contact-probed along the ray and dropped when they fall within
/// the occupancy radius of any agent or when their vision disk holds no free
/// point left unseen by the deployed agents. `blocked` masks abandoned
/// directions.
std::vector<Slot> frontier_slots(
  const std::vector<DeployedAgent>& agents,
  VertexId owner,
  const Scenario& scenario,
  const DeploymentConfig& config,
  std::array<bool, 6> blocked = {});

//==============================================================================
struct Landmark
{
  Point position;
  double desired_bearing = 0.0;
  double desired_subtended = 0.0;
};

/// Desired readings for a landmark as seen from `target`.
Landmark make_landmark(Point landmark, Point target, double r_b);

struct NavigationResult
{
  Point position;
  bool converged = false;
  bool contact = false;
  std::optional<double> contact_direction;
  std::size_t steps = 0;
};

class NavigationError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Integrates the bearing homing controller from `start` with a fixed step.
/// Stops on convergence (all visible landmark errors below eps_ang), on a
/// barrier contact (settling at the contact point), or when the step budget
/// runs out. Throws NavigationError without landmarks.
NavigationResult navigate_to_slot(
  Point start,
  const std::vector<Landmark>& landmarks,
  const Scenario& scenario,
  const DeploymentConfig& config);

//==============================================================================
struct PlacementEvent
{
  VertexId agent = 0;
  VertexId owner = 0;
  Point position;
  std::vector<VertexId> landmarks;
  bool contact = false;
  std::optional<double> contact_direction;
  std::size_t steps = 0;
};

struct CoverageResult
{
  std::vector<DeployedAgent> agents;
  SwarmGraph graph;
  std::vector<PlacementEvent> placements;
  std::size_t abandoned_slots = 0;
};

class PartialCoverageError : public std::runtime_error
{
public:
  PartialCoverageError(const std::string& what, CoverageResult partial)
  : std::runtime_error(what), partial_(std::move(partial)) {}

  const CoverageResult& partial() const { return partial_; }

private:
  CoverageResult partial_;
};

/// Breadth-first hexagonal deployment from the base station until no agent
/// has a free slot. The agent cap raises PartialCoverageError.
CoverageResult coverage_run(const Scenario& scenario, const DeploymentConfig& config);

/// Visibility graph over deployed agents, with contact flags copied over.
SwarmGraph graph_from_agents(
  const std::vector<DeployedAgent>& agents, const Scenario& scenario, double r_v);

//==============================================================================
struct GridCoverage
{
  std::size_t covered = 0;
  std::size_t total = 0;

  double fraction() const { return total == 0 ? 1.0 : double(covered) / double(total); }
};

/// Samples the free space on a grid of the given pitch. Points connected to
/// the base station through free space count; a point is covered when some
/// agent within r_v sees it.
GridCoverage grid_coverage(
  const std::vector<Point>& agents,
  const Scenario& scenario,
  Point base_station,
  double r_v,
  double pitch);

//==============================================================================
struct RipsComplex
{
  std::size_t vertex_count = 0;
  std::vector<std::array<VertexId, 2>> edges;
  std::vector<std::array<VertexId, 3>> triangles;

  // Subcomplexes, as indices into vertices / edges / triangles.
  struct Subcomplex
  {
    std::vector<VertexId> vertices;
    std::vector<std::size_t> edges;
    std::vector<std::size_t> triangles;
  };
  Subcomplex frontier;
  Subcomplex obstacle;

  /// Fence K = F u O, merged and deduplicated.
  Subcomplex fence() const;
};

/// Rips complex at scale r_v over the given positions. O holds simplices
/// whose agents all touched a barrier; F holds simplices with at least one
/// agent flagged as frontier.
RipsComplex build_rips(
  const std::vector<Point>& positions,
  const Scenario& scenario,
  double r_v,
  const std::vector<bool>& contact = {},
  const std::vector<bool>& frontier = {});

/// Frontier flags: agents that still own at least one free slot.
std::vector<bool> frontier_flags(
  const std::vector<DeployedAgent>& agents,
  const Scenario& scenario,
  const DeploymentConfig& config);

//==============================================================================
/// theta^k_i for every ordered pair of neighbours (k measures i).
class BearingTable
{
public:
  double at(VertexId measurer, VertexId target) const;
  void set(VertexId measurer, VertexId target, double theta);

private:
  std::map<std::pair<VertexId, VertexId>, double> table_;
};

/// Bearings for every edge of `graph`, each agent measuring in its own frame
/// given by `headings` (all zero when empty).
BearingTable measure_bearings(const SwarmGraph& graph, const std::vector<double>& headings = {});

enum class RedundancyKind { OneSimplex, TwoSimplex };

struct RedundancyLabel
{
  VertexId agent = 0;
  RedundancyKind kind = RedundancyKind::OneSimplex;

  friend bool operator==(const RedundancyLabel&, const RedundancyLabel&) = default;
};

/// Straight-angle and full-turn tests over every 2-simplex, from bearings
/// alone. The base station is never labelled.
std::vector<RedundancyLabel> redundant_agent_search(
  const SwarmGraph& graph, const BearingTable& bearings, double eps_ang);

struct PruneResult
{
  SwarmGraph graph;
  /// Original ids of the removed agents, in removal order.
  std::vector<VertexId> removed;
  /// Original ids of labelled agents kept because removal broke an invariant.
  std::vector<VertexId> retained;
};

struct PruneConfig
{
  Point base_station;
  double r_v = 5.0;
  double eps_ang = 1e-3;
  double grid_pitch = 0.25;
};

/// Removes labelled agents one at a time, re-running the search after each
/// removal. A removal that disconnects the graph or lowers grid coverage is
/// rolled back.
PruneResult prune_redundant(
  const SwarmGraph& graph,
  const std::vector<RedundancyLabel>& labels,
  const Scenario& scenario,
  const PruneConfig& config);

} // namespace swarmfocus

#endif // SWARMFOCUS__COVERAGE_HPP
