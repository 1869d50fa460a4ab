#ifndef SWARMFOCUS__DISPATCH_HPP
#define SWARMFOCUS__DISPATCH_HPP

#include <swarmfocus/exact_sum.hpp>
#include <swarmfocus/geometry.hpp>
#include <swarmfocus/netgraph.hpp>
#include <swarmfocus/sensing.hpp>

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace swarmfocus {

struct DispatchConfig
{
  /// Session cap (MaxIter).
  std::size_t max_iter = 10;
  /// Micro-step length delta, in metres.
  double step_length = 0.25;
  /// Micro-steps per visit (T).
  std::size_t leg_steps = 20;
  std::size_t fir_window = 5;
  double r_b = 0.5;
  double r_v = 5.0;
  CutMode cut = CutMode::Weighted;
  EventField event;
  NoiseModel noise;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on a non-positive step length, a zero FIR
/// window or a zero leg length.
void check_dispatch_config(const DispatchConfig& config);

struct SessionState
{
  /// Session counter c_d*.
  std::size_t session = 0;
  /// f_d*: true when a session ended without any accepted step.
  bool settled = false;
  /// Per-vertex session stamps c_di.
  std::vector<std::size_t> stamp;
  /// Per-vertex f_di: the vertex's last leg ended without moving.
  std::vector<bool> stuck;
};

/// (N_i n G_CL) minus vertices already stamped this session, by descending
/// weight (ties by ascending id).
std::vector<VertexId> restricted_neighborhood(
  const SwarmGraph& graph, const Membership& cluster, VertexId v, const SessionState& state);

//==============================================================================
/// Moving-average filter over the samples taken since the agent last moved.
class FirFilter
{
public:
  explicit FirFilter(std::size_t window = 1);

  /// Pushes a sample and returns the mean of the retained ones. When every
  /// retained sample is identical the sample itself is returned.
  double update(double sample);

  /// Drops the history; call when the agent moves.
  void reset() { samples_.clear(); }

  std::size_t size() const { return samples_.size(); }
  std::size_t window() const { return window_; }

private:
  std::size_t window_;
  std::deque<double> samples_;
};

//==============================================================================
struct VolumeDelta
{
  /// Local estimate of the change in eps_S, held exactly.
  ExactSum exact;
  double value = 0.0;
  /// Cluster members that become visible from the candidate position.
  std::vector<VertexId> new_neighbors;
  std::size_t old_count = 0;
  std::size_t new_count = 0;
  double old_weight = 0.0;
  double estimate = 0.0;
};

/// Change of the cluster volume if `j` moves to `candidate` and takes the
/// weight `estimate`, computed from j's neighbourhood only. The old-weight
/// term is divided by the SNR correction of `noise`.
VolumeDelta volume_delta(
  const SwarmGraph& graph,
  const Membership& cluster,
  VertexId j,
  Point candidate,
  double estimate,
  const NoiseModel& noise,
  const Scenario& scenario,
  double r_v);

enum class StepOutcome
{
  Accepted,
  LeftFreeSpace,
  Collision,
  EdgeBroken,
  NoGain,
};

std::string to_string(StepOutcome outcome);

struct StepResult
{
  StepOutcome outcome = StepOutcome::NoGain;
  Point position;
  std::optional<VolumeDelta> delta;

  bool accepted() const { return outcome == StepOutcome::Accepted; }
};

/// Senses the event at a candidate position.
using Sampler = std::function<double(Point)>;

/// Evaluates one micro-step of `j` towards `i`. Nothing is mutated; the
/// sampler is called once, only when the geometric checks pass.
StepResult move_step(
  const SwarmGraph& graph,
  const Membership& cluster,
  VertexId j,
  VertexId i,
  const Scenario& scenario,
  const DispatchConfig& config,
  const Sampler& sample);

//==============================================================================
struct TraceRow
{
  std::size_t step = 0;
  std::size_t session = 0;
  VertexId agent = 0;
  VertexId toward = 0;
  double h = 0.0;
  double h_cl_before = 0.0;
  double h_cl_after = 0.0;
  double eps_s = 0.0;
  double eps_sbar = 0.0;
  double eps_c = 0.0;
  double delta_local = 0.0;
  double delta_global = 0.0;
  /// The local and global volume changes agree exactly.
  bool local_matches_global = false;
  std::vector<VertexId> new_edges;
};

struct DispatchTrace
{
  double initial_h = 0.0;
  double initial_h_cl = 0.0;
  std::vector<TraceRow> rows;
  /// Leader of every session, in order.
  std::vector<VertexId> leaders;
  /// Accepted micro-steps per session.
  std::vector<std::size_t> session_steps;
};

struct DispatchResult
{
  SwarmGraph graph;
  Membership cluster;
  SessionState state;
  DispatchTrace trace;
  std::vector<Point> start_positions;

  /// Mean displacement of cluster members from their start positions.
  double mean_cluster_displacement() const;
};

/// Runs dispatch sessions over a fixed cluster. The graph's vertex weights
/// are the initial |v_i|; edge weights are frozen.
class Dispatcher
{
public:
  Dispatcher(SwarmGraph graph, Membership cluster, const Scenario& scenario, DispatchConfig config);

  /// One session rooted at `leader`, stamped with the next session number.
  /// Returns f_d* (true when no step was accepted).
  bool session(VertexId leader);

  /// Re-elects a leader over the cluster and runs sessions until MaxIter or a
  /// session with no accepted step.
  void run(VertexId leader);

  const SwarmGraph& graph() const { return graph_; }
  const SessionState& state() const { return state_; }
  const DispatchTrace& trace() const { return trace_; }

  DispatchResult result() const;

private:
  void visit(VertexId i);
  void leg(VertexId j, VertexId i);
  void accept(VertexId j, VertexId i, const StepResult& step);
  double sample(VertexId agent, Point p);
  double h_cl() const;

  SwarmGraph graph_;
  Membership cluster_;
  const Scenario& scenario_;
  DispatchConfig config_;
  SessionState state_;
  DispatchTrace trace_;
  std::vector<FirFilter> filters_;
  std::vector<AgentRng> rngs_;
  std::vector<Point> start_;
  bool session_moved_ = false;
};

/// dispatch_loop: full run from `leader` with the given configuration.
DispatchResult dispatch_loop(
  const SwarmGraph& graph,
  const Membership& cluster,
  VertexId leader,
  const Scenario& scenario,
  const DispatchConfig& config);

} // namespace swarmfocus

#endif // SWARMFOCUS__DISPATCH_HPP
