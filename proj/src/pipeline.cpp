#include <swarmfocus/pipeline.hpp>

#include <swarmfocus/consensus.hpp>
#include <swarmfocus/svg.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace swarmfocus {

namespace {

std::string real(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Snapshot make_snapshot(
  const std::string& stage, const SwarmGraph& graph, const ScenarioFile& sc,
  const RunConfig& config, Point base)
{
  Snapshot s;
  s.stage = stage;
  s.r_b = config.r_b;
  s.r_v = config.r_v;
  s.cut = config.cut;
  s.base_station = base;
  s.event = config.event;
  s.scenario = sc.scenario;
  s.graph = graph;
  s.logged = snapshot_metrics(s).as_map();
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << text;
}

} // namespace

std::optional<std::pair<double, double>> rectangle_extent(const Scenario& scenario)
{
  const Polygon& e = scenario.enclosure();
  if (!scenario.obstacles().empty() || e.size() != 4)
    return std::nullopt;
  const Point lo = scenario.min_corner();
  const Point hi = scenario.max_corner();
  for (const Point& p : e)
  {
    const bool x_edge = std::abs(p.x - lo.x) <= kEpsGeo || std::abs(p.x - hi.x) <= kEpsGeo;
    const bool y_edge = std::abs(p.y - lo.y) <= kEpsGeo || std::abs(p.y - hi.y) <= kEpsGeo;
    if (!x_edge || !y_edge)
      return std::nullopt;
  }
  return std::pair{hi.x - lo.x, hi.y - lo.y};
}

RunArtifacts run_pipeline(
  const ScenarioFile& sc,
  const RunConfig& config,
  std::uint64_t seed,
  const std::set<Stage>& stages)
{
  RunArtifacts out;
  auto log = [&](const std::string& stage, const std::string& msg)
  {
    out.log.push_back("[" + stage + "] " + msg);
  };
  auto note = [&](const std::string& key, const std::string& value)
  {
    out.summary.emplace_back(key, value);
  };

  const bool want_dispatch = stages.contains(Stage::Dispatch);
  const bool want_cluster = want_dispatch || stages.contains(Stage::Clustering);
  const bool want_coverage = want_cluster || stages.contains(Stage::Coverage);
  const Point base = config.base_station.value_or(sc.base_station);
  note("seed", std::to_string(seed));

  if (stages.contains(Stage::Bounds))
  {
    if (const auto ext = rectangle_extent(sc.scenario))
    {
      out.bounds = rect_bounds(ext->first, ext->second, config.r_v);
      log("bounds", "case " + to_string(out.bounds->kind) + ", lower-or-exact "
        + std::to_string(out.bounds->lower_or_exact()));
      note("bounds_case", to_string(out.bounds->kind));
      if (out.bounds->lower) note("bounds_lower", std::to_string(*out.bounds->lower));
      if (out.bounds->upper) note("bounds_upper", std::to_string(*out.bounds->upper));
      if (out.bounds->exact) note("bounds_exact", std::to_string(*out.bounds->exact));
    }
    else
    {
      log("bounds", "skipped: scenario is not an obstacle-free axis-aligned rectangle");
    }
  }

  if (!want_coverage)
    return out;

  // Coverage.
  const DeploymentConfig dep = config.deployment(base);
  try
  {
    out.coverage = coverage_run(sc.scenario, dep);
  }
  catch (const PartialCoverageError& e)
  {
    out.coverage = e.partial();
    out.failure = e.what();
  }
  catch (const std::exception& e)
  {
    out.failure = std::string("coverage: ") + e.what();
    log("coverage", *out.failure);
    return out;
  }
  const CoverageResult& cov = *out.coverage;
  out.snapshots.push_back(make_snapshot("post-coverage", cov.graph, sc, config, base));
  log("coverage", std::to_string(cov.agents.size()) + " agents, "
    + std::to_string(cov.abandoned_slots) + " abandoned slots");
  note("agents", std::to_string(cov.agents.size()));
  note("abandoned_slots", std::to_string(cov.abandoned_slots));
  note("coverage_fraction", real(out.snapshots.back().logged.at("coverage")));
  if (out.bounds && out.bounds->lower_or_exact() > static_cast<long>(cov.agents.size()))
    log("bounds", "deployed count is below the lower bound");
  if (out.failure)
  {
    log("coverage", *out.failure);
    return out;
  }
  if (!want_cluster)
    return out;

  try
  {
    // Weighting.
    SwarmGraph g = cov.graph;
    const EventField field = config.event_field();
    const NoiseModel noise = config.noise();
    for (VertexId v = 0; v < g.size(); ++v)
    {
      AgentRng rng(seed, v, kWeightingStream);
      g.vertex(v).weight = sense_event(g.vertex(v).position, field, noise, rng);
    }
    weigh_edges_from_vertices(g);

    // Leader election and clustering.
    const ConsensusResult lead = max_consensus(g, kBaseStation);
    out.leader = lead.leader;
    out.consensus_rounds = lead.rounds;
    log("consensus", "leader " + std::to_string(lead.leader) + " after "
      + std::to_string(lead.rounds) + " rounds");
    out.cluster = grow_cluster(g, lead.leader, config.n_cl);
    apply_cluster_flags(g, *out.cluster);
    out.snapshots.push_back(make_snapshot("post-clustering", g, sc, config, base));
    log("clustering", std::to_string(out.cluster->size) + " members, "
      + std::to_string(out.cluster->hops.size()) + " hops");
    note("leader", std::to_string(lead.leader));
    note("consensus_rounds", std::to_string(lead.rounds));
    note("cluster_size", std::to_string(out.cluster->size));

    if (!want_dispatch)
      return out;

    out.dispatch = dispatch_loop(g, out.cluster->cluster, lead.leader, sc.scenario, config.dispatch(seed));
    const DispatchResult& d = *out.dispatch;
    out.snapshots.push_back(make_snapshot("post-dispatch", d.graph, sc, config, base));
    std::size_t new_edges = 0;
    for (const auto& r : d.trace.rows)
      new_edges += r.new_edges.size();
    log("dispatch", std::to_string(d.state.session) + " sessions, "
      + std::to_string(d.trace.rows.size()) + " accepted steps, "
      + std::to_string(new_edges) + " new edges");
    note("sessions", std::to_string(d.state.session));
    note("iterations", std::to_string(d.trace.rows.size()));
    note("new_edges", std::to_string(new_edges));
    note("initial_h", real(d.trace.initial_h));
    note("final_h", real(d.trace.rows.empty() ? d.trace.initial_h : d.trace.rows.back().h));
    note("mean_cluster_displacement", real(d.mean_cluster_displacement()));
  }
  catch (const std::exception& e)
  {
    out.failure = e.what();
    log("pipeline", std::string("failed: ") + e.what());
  }
  return out;
}

std::string trace_csv(const DispatchTrace& trace)
{
  std::ostringstream out;
  out << "step,session,agent,toward,h,h_cl_before,h_cl_after,eps_s,eps_sbar,eps_c,"
         "delta_local,delta_global,local_matches_global,new_edges\n";
  for (const auto& r : trace.rows)
  {
    out << r.step << ',' << r.session << ',' << r.agent << ',' << r.toward << ','
        << real(r.h) << ',' << real(r.h_cl_before) << ',' << real(r.h_cl_after) << ','
        << real(r.eps_s) << ',' << real(r.eps_sbar) << ',' << real(r.eps_c) << ','
        << real(r.delta_local) << ',' << real(r.delta_global) << ','
        << (r.local_matches_global ? 1 : 0) << ',';
    for (std::size_t k = 0; k < r.new_edges.size(); ++k)
      out << (k ? ";" : "") << r.new_edges[k];
    out << '\n';
  }
  return out.str();
}

void write_artifacts(const RunArtifacts& a, const std::filesystem::path& dir)
{
  std::filesystem::create_directories(dir);
  for (const auto& s : a.snapshots)
  {
    save_snapshot(s, dir / (s.stage + ".snap"));
    write_text(dir / (s.stage + ".svg"), snapshot_svg(s, s.stage));
  }
  if (a.dispatch)
  {
    write_text(dir / "trace.csv", trace_csv(a.dispatch->trace));
    write_text(dir / "trace.svg", trace_svg(a.dispatch->trace, "h"));
  }

  std::ostringstream metrics;
  for (const auto& [k, v] : a.summary)
    metrics << k << ": " << v << "\n";
  metrics << "status: " << (a.ok() ? "ok" : "failed") << "\n";
  write_text(dir / "metrics.txt", metrics.str());

  std::ostringstream log;
  for (const auto& line : a.log)
    log << line << "\n";
  if (a.failure)
    log << "[error] " << *a.failure << "\n";
  write_text(dir / "run.log", log.str());
}

} // namespace swarmfocus
