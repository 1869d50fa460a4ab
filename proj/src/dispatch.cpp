#include <swarmfocus/dispatch.hpp>

#include <swarmfocus/consensus.hpp>

#include <algorithm>
#include <stdexcept>

namespace swarmfocus {

namespace {

/// Stream id for dispatch-time sensing, distinct from the initial weighting.
constexpr std::uint64_t kDispatchStream = 2;

bool sweep_clear(Point a, Point b, double r, const Scenario& scenario)
{
  for (const auto& e : scenario.barrier_edges())
    if (segment_segment_distance({a, b}, e) <= r + kEpsGeo)
      return false;
  return true;
}

} // namespace

void check_dispatch_config(const DispatchConfig& config)
{
  if (!(config.step_length > 0.0))
    throw std::invalid_argument("dispatch: step length must be positive");
  if (config.fir_window < 1)
    throw std::invalid_argument("dispatch: FIR window must be at least 1");
  if (config.leg_steps < 1)
    throw std::invalid_argument("dispatch: leg length must be at least 1 step");
  if (!(config.noise.alpha > 0.0) || config.noise.sigma < 0.0)
    throw std::invalid_argument("dispatch: invalid noise model");
}

std::vector<VertexId> restricted_neighborhood(
  const SwarmGraph& graph, const Membership& cluster, VertexId v, const SessionState& state)
{
  std::vector<VertexId> out;
  for (const auto& [u, w] : graph.neighbors(v))
  {
    if (!cluster.at(u))
      continue;
    if (u < state.stamp.size() && state.stamp[u] == state.session)
      continue;
    out.push_back(u);
  }
  std::stable_sort(out.begin(), out.end(),
    [&](VertexId a, VertexId b) { return graph.vertex(a).weight > graph.vertex(b).weight; });
  return out;
}

//==============================================================================
FirFilter::FirFilter(std::size_t window) : window_(window)
{
  if (window_ < 1)
    throw std::invalid_argument("FirFilter: window must be at least 1");
}

double FirFilter::update(double sample)
{
  samples_.push_back(sample);
  while (samples_.size() > window_)
    samples_.pop_front();
  if (std::all_of(samples_.begin(), samples_.end(), [&](double s) { return s == sample; }))
    return sample;
  ExactSum sum;
  for (double s : samples_)
    sum.add(s);
  return sum.value() / static_cast<double>(samples_.size());
}

//==============================================================================
VolumeDelta volume_delta(
  const SwarmGraph& graph,
  const Membership& cluster,
  VertexId j,
  Point candidate,
  double estimate,
  const NoiseModel& noise,
  const Scenario& scenario,
  double r_v)
{
  if (!cluster.at(j))
    throw std::invalid_argument("volume_delta: vertex is not a cluster member");

  VolumeDelta out;
  out.old_weight = graph.vertex(j).weight;
  out.estimate = estimate;
  for (const auto& [k, w] : graph.neighbors(j))
    if (cluster[k])
      ++out.old_count;

  for (VertexId k = 0; k < graph.size(); ++k)
  {
    if (k == j || !cluster[k] || graph.has_edge(j, k))
      continue;
    if (visible_pair(candidate, graph.vertex(k).position, scenario, r_v))
      out.new_neighbors.push_back(k);
  }
  out.new_count = out.old_count + out.new_neighbors.size();

  for (VertexId k : out.new_neighbors)
    out.exact.add(graph.vertex(k).weight);
  const double correction = snr_correction(noise);
  if (correction == 1.0)
    out.exact.add_repeated(-out.old_weight, static_cast<long>(out.old_count));
  else
    out.exact.add(-(static_cast<double>(out.old_count) * out.old_weight) / correction);
  out.exact.add_repeated(estimate, static_cast<long>(out.new_count));
  out.value = out.exact.value();
  return out;
}

std::string to_string(StepOutcome outcome)
{
  switch (outcome)
  {
    case StepOutcome::Accepted: return "accepted";
    case StepOutcome::LeftFreeSpace: return "left-free-space";
    case StepOutcome::Collision: return "collision";
    case StepOutcome::EdgeBroken: return "edge-broken";
    case StepOutcome::NoGain: return "no-gain";
  }
  return "unknown";
}

StepResult move_step(
  const SwarmGraph& graph,
  const Membership& cluster,
  VertexId j,
  VertexId i,
  const Scenario& scenario,
  const DispatchConfig& config,
  const Sampler& sample)
{
  const Point pj = graph.vertex(j).position;
  const Point pi = graph.vertex(i).position;
  StepResult out;
  out.position = pj;

  const double d = distance(pj, pi);
  if (d <= kEpsGeo)
  {
    out.outcome = StepOutcome::Collision;
    return out;
  }
  const Point candidate = pj + (config.step_length / d) * (pi - pj);
  out.position = candidate;

  if (!disk_fits(candidate, config.r_b, scenario) || !sweep_clear(pj, candidate, config.r_b, scenario))
  {
    out.outcome = StepOutcome::LeftFreeSpace;
    return out;
  }
  for (VertexId k = 0; k < graph.size(); ++k)
    if (k != j && distance(candidate, graph.vertex(k).position) < 2.0 * config.r_b)
    {
      out.outcome = StepOutcome::Collision;
      return out;
    }
  for (const auto& [k, w] : graph.neighbors(j))
    if (!visible_pair(candidate, graph.vertex(k).position, scenario, config.r_v))
    {
      out.outcome = StepOutcome::EdgeBroken;
      return out;
    }

  out.delta = volume_delta(
    graph, cluster, j, candidate, sample(candidate), config.noise, scenario, config.r_v);
  out.outcome = out.delta->exact.sign() > 0 ? StepOutcome::Accepted : StepOutcome::NoGain;
  return out;
}

//==============================================================================
double DispatchResult::mean_cluster_displacement() const
{
  double total = 0.0;
  std::size_t count = 0;
  for (VertexId v = 0; v < graph.size(); ++v)
    if (cluster[v])
    {
      total += distance(graph.vertex(v).position, start_positions[v]);
      ++count;
    }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

Dispatcher::Dispatcher(
  SwarmGraph graph, Membership cluster, const Scenario& scenario, DispatchConfig config)
: graph_(std::move(graph)),
  cluster_(std::move(cluster)),
  scenario_(scenario),
  config_(config)
{
  check_dispatch_config(config_);
  if (cluster_.size() != graph_.size())
    throw std::invalid_argument("Dispatcher: membership size does not match the graph");

  const std::size_t n = graph_.size();
  state_.stamp.assign(n, 0);
  state_.stuck.assign(n, false);
  for (VertexId v = 0; v < n; ++v)
  {
    filters_.emplace_back(config_.fir_window);
    filters_.back().update(graph_.vertex(v).weight);
    rngs_.emplace_back(config_.seed, v, kDispatchStream);
  }
  start_ = graph_.positions();
  trace_.initial_h = isoperimetric({graph_, cluster_}, config_.cut).value;
  trace_.initial_h_cl = h_cl();
}

double Dispatcher::sample(VertexId agent, Point p)
{
  return sense_event(p, config_.event, config_.noise, rngs_[agent]);
}

double Dispatcher::h_cl() const
{
  const ClusterView view{graph_, cluster_};
  return cut_weight(view, config_.cut) / cluster_volume(view);
}

bool Dispatcher::session(VertexId leader)
{
  if (!cluster_.at(leader))
    throw std::invalid_argument("Dispatcher: the leader must be a cluster member");
  ++state_.session;
  session_moved_ = false;
  trace_.session_steps.push_back(0);
  visit(leader);
  state_.settled = !session_moved_;
  return state_.settled;
}

void Dispatcher::run(VertexId leader)
{
  VertexId v = leader;
  while (state_.session < config_.max_iter && !state_.settled)
  {
    v = max_consensus(graph_, cluster_, v).leader;
    trace_.leaders.push_back(v);
    session(v);
  }
}

void Dispatcher::visit(VertexId i)
{
  if (state_.stamp[i] < state_.session)
    state_.stamp[i] = state_.session;
  graph_.vertex(i).weight = filters_[i].update(sample(i, graph_.vertex(i).position));

  for (VertexId j : restricted_neighborhood(graph_, cluster_, i, state_))
  {
    // A deeper visit may already have reached j in this session.
    if (state_.stamp[j] == state_.session)
      continue;
    leg(j, i);
    visit(j);
  }
}

void Dispatcher::leg(VertexId j, VertexId i)
{
  const Sampler sampler = [&](Point p) { return sample(j, p); };
  state_.stuck[j] = true;
  for (std::size_t s = 0; s < config_.leg_steps; ++s)
  {
    const StepResult step = move_step(graph_, cluster_, j, i, scenario_, config_, sampler);
    if (!step.accepted())
      break;
    state_.stuck[j] = false;
    accept(j, i, step);
  }
}

void Dispatcher::accept(VertexId j, VertexId i, const StepResult& step)
{
  const VolumeDelta& delta = *step.delta;
  TraceRow row;
  row.step = trace_.rows.size();
  row.session = state_.session;
  row.agent = j;
  row.toward = i;
  row.h_cl_before = h_cl();

  const ExactSum before = cluster_volume_exact({graph_, cluster_});

  Vertex& vj = graph_.vertex(j);
  vj.position = step.position;
  vj.weight = delta.estimate;
  filters_[j].reset();
  filters_[j].update(delta.estimate);
  for (VertexId k : delta.new_neighbors)
  {
    graph_.add_edge(j, k, 0.5 * (vj.weight + graph_.vertex(k).weight));
    row.new_edges.push_back(k);
  }

  const ClusterView view{graph_, cluster_};
  ExactSum change = cluster_volume_exact(view);
  change.subtract(before);
  ExactSum mismatch = change;
  mismatch.subtract(delta.exact);

  const Isoperimetric iso = isoperimetric(view, config_.cut);
  row.h = iso.value;
  row.eps_s = iso.eps_s;
  row.eps_sbar = iso.eps_sbar;
  row.eps_c = iso.eps_c;
  row.h_cl_after = iso.eps_c / iso.eps_s;
  row.delta_local = delta.value;
  row.delta_global = change.value();
  row.local_matches_global = mismatch.is_zero();
  trace_.rows.push_back(std::move(row));

  ++trace_.session_steps.back();
  session_moved_ = true;
}

DispatchResult Dispatcher::result() const
{
  DispatchResult out;
  out.graph = graph_;
  out.cluster = cluster_;
  out.state = state_;
  out.trace = trace_;
  out.start_positions = start_;
  return out;
}

DispatchResult dispatch_loop(
  const SwarmGraph& graph,
  const Membership& cluster,
  VertexId leader,
  const Scenario& scenario,
  const DispatchConfig& config)
{
  Dispatcher d(graph, cluster, scenario, config);
  d.run(leader);
  return d.result();
}

} // namespace swarmfocus
