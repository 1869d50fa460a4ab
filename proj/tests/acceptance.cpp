// Acceptance gate: one PASS/FAIL line per criterion; non-zero exit on any FAIL.

#include "graph_fixtures.hpp"
#include "oracles.hpp"

#include <swarmfocus/bounds.hpp>
#include <swarmfocus/clustering.hpp>
#include <swarmfocus/config.hpp>
#include <swarmfocus/consensus.hpp>
#include <swarmfocus/coverage.hpp>
#include <swarmfocus/pipeline.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

using namespace swarmfocus;
using namespace swarmfocus::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = SWARMFOCUS_SOURCE_DIR;
int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail)
{
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok)
    ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class... T>
std::string fmt(const char* f, T... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

//==============================================================================
struct RectCase
{
  double width, height;
  Point base;
};

std::vector<RectCase> random_rectangles()
{
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> side(10.0, 40.0), u(0.0, 1.0);
  std::vector<RectCase> out;
  for (int k = 0; k < 20; ++k)
  {
    RectCase c{side(rng), side(rng), {}};
    c.base = {1.0 + u(rng) * (c.width - 2.0), 1.0 + u(rng) * (c.height - 2.0)};
    out.push_back(c);
  }
  return out;
}

void coverage_and_bounds()
{
  const double r_b = 0.5, r_v = 5.0;
  std::size_t connected = 0, overlaps = 0, low_coverage = 0, slow = 0, below_bound = 0;
  double worst_coverage = 1.0, worst_time = 0.0;
  std::ostringstream counts;
  const auto cases = random_rectangles();
  for (const auto& rc : cases)
  {
    const Scenario s = make_rectangle_scenario({0, 0}, rc.width, rc.height);
    DeploymentConfig c;
    c.base_station = rc.base;
    const auto t0 = std::chrono::steady_clock::now();
    const CoverageResult r = coverage_run(s, c);
    const double secs = seconds_since(t0);
    worst_time = std::max(worst_time, secs);
    slow += secs >= 30.0;

    connected += is_connected(r.graph);
    for (std::size_t i = 0; i < r.agents.size(); ++i)
    {
      overlaps += !disk_fits(r.agents[i].position, r_b, s);
      for (std::size_t j = i + 1; j < r.agents.size(); ++j)
        overlaps += distance(r.agents[i].position, r.agents[j].position) < 2 * r_b;
    }
    const double frac = grid_coverage(r.graph.positions(), s, rc.base, r_v, r_b / 2).fraction();
    worst_coverage = std::min(worst_coverage, frac);
    low_coverage += frac < 0.99;

    const long bound = rect_bounds(rc.width, rc.height, r_v).lower_or_exact();
    below_bound += static_cast<long>(r.agents.size()) < bound;
    counts << " " << r.agents.size() << ">=" << bound;
  }
  report("coverage-soundness", connected == cases.size() && overlaps == 0 && low_coverage == 0 && slow == 0,
    fmt("%zu/%zu connected, %zu overlaps, worst coverage %.4f (>= 0.99), worst runtime %.2f s (< 30 s)",
      connected, cases.size(), overlaps, worst_coverage, worst_time));
  report("bounds-sandwich-lower", below_bound == 0,
    fmt("%zu of %zu deployments below the lower bound; counts:", below_bound, cases.size())
      + counts.str());

  // Thin strips after pruning versus the exact thin-strip count.
  struct Strip { double w, h; };
  bool strips_ok = true;
  std::ostringstream strips;
  for (const Strip st : {Strip{15, 5}, Strip{20, 6}, Strip{25, 4}, Strip{12, 8}})
  {
    const Scenario s = make_rectangle_scenario({0, 0}, st.w, st.h);
    DeploymentConfig c;
    c.base_station = {st.w / 2, st.h / 2};
    const CoverageResult r = coverage_run(s, c);
    const auto labels = redundant_agent_search(r.graph, measure_bearings(r.graph), c.eps_ang);
    const PruneResult p = prune_redundant(r.graph, labels, s, {c.base_station, r_v, c.eps_ang, r_b / 2});
    const long exact = *rect_bounds(st.w, st.h, r_v).exact;
    const long got = static_cast<long>(p.graph.size());
    strips_ok &= std::abs(got - exact) <= 1;
    strips << fmt(" %gx%g: %ld (deployed %zu) vs %ld;", st.w, st.h, got, r.agents.size(), exact);
  }
  report("bounds-thin-strips", strips_ok, "pruned count within exact +-1:" + strips.str());

  std::mt19937_64 rng(100000);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  auto near_integer = [](double x) { return std::abs(x - std::round(x)) < 1e-6; };
  std::size_t mismatches = 0, evaluated = 0;
  while (evaluated < 100000)
  {
    const double a = u(rng), b = u(rng);
    if (near_integer(a) || near_integer(b) || near_integer(b - 0.5))
      continue;
    const ProofForms p = proof_form_check(a, b);
    mismatches += (p.upper != g_upper(a, b)) + (p.lower != g_lower(a, b));
    ++evaluated;
  }
  report("bounds-proof-forms", mismatches == 0,
    fmt("%zu mismatches over %zu random non-integer inputs", mismatches, evaluated));
}

//==============================================================================
void redundancy_oracle_check()
{
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> h(-kPi, kPi);
  const Scenario open = make_rectangle_scenario({-50, -50}, 100, 100);
  const double eps = 1e-3;
  std::size_t configs = 0, skipped = 0, disagreements = 0, base_labels = 0;
  while (configs < 10000)
  {
    const auto pts = random_redundancy_case(rng, 5.0);
    const SwarmGraph g = build_visibility_graph(pts, open, 5.0);
    if (g.edge_count() != 6)
      continue;
    const auto labels = redundant_agent_search(g, measure_bearings(g, {h(rng), h(rng), h(rng), h(rng)}), eps);
    ++configs;
    for (const auto& l : labels)
      base_labels += l.agent == kBaseStation;
    for (VertexId v = 0; v < pts.size(); ++v)
    {
      const auto verdict = redundancy_oracle(pts, v, eps);
      if (!verdict)
      {
        ++skipped;
        continue;
      }
      std::optional<RedundancyKind> expected;
      if (v != kBaseStation && verdict->on_segment)
        expected = RedundancyKind::OneSimplex;
      else if (v != kBaseStation && verdict->in_triangle)
        expected = RedundancyKind::TwoSimplex;
      std::optional<RedundancyKind> got;
      for (const auto& l : labels)
        if (l.agent == v)
          got = l.kind;
      disagreements += got != expected;
    }
  }

  // Pruning real deployments never removes the base station.
  std::size_t base_removed = 0;
  for (const auto& rc : random_rectangles())
  {
    const Scenario s = make_rectangle_scenario({0, 0}, rc.width, rc.height);
    DeploymentConfig c;
    c.base_station = rc.base;
    const CoverageResult r = coverage_run(s, c);
    const auto labels = redundant_agent_search(r.graph, measure_bearings(r.graph), eps);
    const PruneResult p = prune_redundant(r.graph, labels, s, {rc.base, 5.0, eps, 0.25});
    for (VertexId v : p.removed)
      base_removed += v == kBaseStation;
    base_labels += std::count_if(labels.begin(), labels.end(),
      [](const RedundancyLabel& l) { return l.agent == kBaseStation; });
  }
  report("redundancy-oracle", disagreements == 0 && base_labels == 0 && base_removed == 0,
    fmt("%zu configurations, %zu disagreements, %zu agent verdicts in the tolerance band skipped, "
        "%zu base-station labels, %zu base-station removals",
      configs, disagreements, skipped, base_labels, base_removed));
}

//==============================================================================
void consensus_and_clustering()
{
  std::mt19937_64 rng(500);
  std::size_t wrong = 0, slow = 0;
  for (int t = 0; t < 500; ++t)
  {
    const std::size_t n = 1 + std::uniform_int_distribution<std::size_t>(0, 99)(rng);
    const SwarmGraph g = random_connected_graph(rng, n, 2.5 / double(n));
    const VertexId start = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
    const ConsensusResult r = max_consensus(g, start);
    wrong += r.leader != central_argmax(g);
    slow += r.rounds > diameter(g);
  }
  report("consensus", wrong == 0 && slow == 0,
    fmt("500 graphs: %zu wrong leaders, %zu runs exceeding the diameter", wrong, slow));

  std::size_t bad_size = 0, disconnected = 0, missing_leader = 0, bad_hops = 0, hops = 0;
  static_assert(sizeof(HopMessage) == sizeof(std::size_t));
  for (int t = 0; t < 500; ++t)
  {
    const std::size_t n = 1 + std::uniform_int_distribution<std::size_t>(0, 99)(rng);
    SwarmGraph g = random_connected_graph(rng, n, 2.5 / double(n));
    weigh_edges_from_vertices(g);
    const VertexId leader = max_consensus(g, 0).leader;
    const std::size_t target = 1 + std::uniform_int_distribution<std::size_t>(0, 40)(rng);
    const ClusterState s = grow_cluster(g, leader, target);
    bad_size += s.members().size() != std::min(target, n);
    disconnected += !is_connected(g, s.cluster);
    missing_leader += !s.cluster[leader];
    // Audit: the only payload is the running cardinality, recomputed here
    // from the sequence of absorptions it must reflect.
    std::size_t previous = 1;
    for (const Hop& h : s.hops)
    {
      ++hops;
      const bool ok = g.has_edge(h.from, h.to) && s.cluster[h.from] && s.cluster[h.to]
        && h.message.cluster_size >= previous && h.message.cluster_size < s.target;
      bad_hops += !ok;
      previous = h.message.cluster_size;
    }
  }
  report("clustering", bad_size == 0 && disconnected == 0 && missing_leader == 0 && bad_hops == 0,
    fmt("500 graphs: %zu size errors, %zu disconnected, %zu missing leader; %zu hops audited, "
        "%zu carrying anything but the cardinality",
      bad_size, disconnected, missing_leader, hops, bad_hops));
}

//==============================================================================
ScenarioFile random_structured(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;)
  {
    std::vector<Obstacle> boxes;
    std::vector<std::pair<Point, Point>> extents;
    const int want = 4 + static_cast<int>(u(rng) * 4);
    for (int attempt = 0; attempt < 200 && static_cast<int>(boxes.size()) < want; ++attempt)
    {
      const Point lo{-13 + 22 * u(rng), -13 + 22 * u(rng)};
      const Point hi{lo.x + 2 + 3 * u(rng), lo.y + 2 + 3 * u(rng)};
      if (hi.x > 13.5 || hi.y > 13.5)
        continue;
      bool clash = false;
      for (const auto& [a, b] : extents)
        clash |= !(hi.x + 1.5 < a.x || lo.x > b.x + 1.5 || hi.y + 1.5 < a.y || lo.y > b.y + 1.5);
      if (clash)
        continue;
      extents.emplace_back(lo, hi);
      boxes.push_back(make_box_obstacle(lo, hi));
    }
    ScenarioFile f;
    f.name = "random-structured";
    f.scenario = make_rectangle_scenario({-15, -15}, 30, 30, boxes);
    for (int attempt = 0; attempt < 100; ++attempt)
    {
      const Point b{-13 + 26 * u(rng), -13 + 26 * u(rng)};
      if (disk_fits(b, 1.0, f.scenario))
      {
        f.base_station = b;
        if (validate_scenario(f.scenario).ok())
          return f;
        break;
      }
    }
  }
}

void dispatch_laws()
{
  std::mt19937_64 rng(5050);
  std::uniform_real_distribution<double> ev(-12, 12);
  std::size_t runs = 0, steps = 0, sign_violations = 0, cut_violations = 0, edge_violations = 0;
  std::size_t volume_violations = 0, locality_violations = 0, collision_violations = 0, new_edges = 0;
  for (int k = 0; k < 50; ++k)
  {
    const ScenarioFile sf = random_structured(rng);
    RunConfig c;
    c.sigma_w = 0.0;
    c.event = {ev(rng), ev(rng)};
    const RunArtifacts a = run_pipeline(sf, c, static_cast<std::uint64_t>(k), parse_stages("dispatch"));
    if (!a.ok() || !a.dispatch)
    {
      ++sign_violations;
      continue;
    }
    ++runs;
    const DispatchResult& d = *a.dispatch;
    const SwarmGraph& before = a.snapshots[1].graph;
    const double cut0 = cut_weight({before, d.cluster}, c.cut);
    cut_violations += cut_weight({d.graph, d.cluster}, c.cut) != cut0;
    for (const auto& [i, j] : before.edges())
      edge_violations += !d.graph.has_edge(i, j);
    for (const auto& row : d.trace.rows)
    {
      ++steps;
      new_edges += row.new_edges.size();
      const bool decreases = row.eps_c == 0.0 || row.h_cl_after < row.h_cl_before;
      sign_violations += !(row.delta_local > 0.0 && decreases);
      cut_violations += row.eps_c != cut0;
      volume_violations += !(row.eps_s > 0.0);
      locality_violations += !row.local_matches_global;
    }
    for (VertexId v = 0; v < d.graph.size(); ++v)
    {
      collision_violations += !disk_fits(d.graph.vertex(v).position, c.r_b, sf.scenario);
      for (VertexId u = v + 1; u < d.graph.size(); ++u)
        collision_violations +=
          distance(d.graph.vertex(v).position, d.graph.vertex(u).position) < 2 * c.r_b;
    }
  }
  report("dispatch-sign-law",
    runs == 50 && sign_violations == 0 && cut_violations == 0 && edge_violations == 0
      && volume_violations == 0 && collision_violations == 0,
    fmt("%zu/50 runs, %zu accepted steps (%zu new edges): %zu sign, %zu cut, %zu lost-edge, "
        "%zu volume, %zu collision/free-space violations",
      runs, steps, new_edges, sign_violations, cut_violations, edge_violations, volume_violations,
      collision_violations));
  report("dispatch-locality", runs == 50 && locality_violations == 0 && steps > 0,
    fmt("%zu of %zu steps where the local volume change differs from the global recomputation",
      locality_violations, steps));
}

//==============================================================================
void qualitative_figures()
{
  const fs::path out = fs::temp_directory_path() / "swarmfocus_acceptance";
  fs::remove_all(out);
  const RunConfig c = load_run_config(kSource / "configs/default.yaml");

  {
    const auto t0 = std::chrono::steady_clock::now();
    const ScenarioFile sf = load_scenario(kSource / "scenarios/open_30x30.yaml");
    const RunArtifacts a = run_pipeline(sf, c, 1, parse_stages(""));
    write_artifacts(a, out / "open");
    const double secs = seconds_since(t0);
    const double disp = a.dispatch ? a.dispatch->mean_cluster_displacement() : INFINITY;
    const bool svg = fs::exists(out / "open/post-dispatch.svg") && fs::exists(out / "open/trace.svg");
    report("figure-open-scene", a.ok() && disp < c.r_b && svg && secs < 60.0,
      fmt("mean cluster displacement %.4f m (< r_b = %.2f), SVGs written in %.2f s (< 60 s)",
        disp, c.r_b, secs));
  }
  {
    const auto t0 = std::chrono::steady_clock::now();
    const ScenarioFile sf = load_scenario(kSource / "scenarios/structured_30x30.yaml");
    const RunArtifacts a = run_pipeline(sf, c, 1, parse_stages(""));
    write_artifacts(a, out / "structured");
    const double secs = seconds_since(t0);
    const bool svg = fs::exists(out / "structured/post-dispatch.svg")
      && fs::exists(out / "structured/trace.svg");

    // A jump is a drop in h larger than the mean step change without new edges.
    std::size_t edge_steps = 0, jumps = 0;
    double plain_sum = 0.0;
    std::size_t plain = 0;
    std::vector<std::pair<double, bool>> diffs;
    if (a.dispatch)
    {
      double prev = a.dispatch->trace.initial_h;
      for (const auto& row : a.dispatch->trace.rows)
      {
        diffs.emplace_back(row.h - prev, !row.new_edges.empty());
        prev = row.h;
      }
    }
    for (const auto& [dh, edge] : diffs)
      if (!edge)
      {
        plain_sum += std::abs(dh);
        ++plain;
      }
    const double mean_plain = plain ? plain_sum / double(plain) : 0.0;
    for (const auto& [dh, edge] : diffs)
      if (edge)
      {
        ++edge_steps;
        jumps += dh < 0.0 && std::abs(dh) > mean_plain;
      }
    report("figure-structured-scene", a.ok() && jumps >= 1 && svg && secs < 60.0,
      fmt("%zu new-edge steps, %zu with a downward h jump above the mean plain step %.3g; "
          "SVGs written in %.2f s (< 60 s)",
        edge_steps, jumps, mean_plain, secs));
  }
}

//==============================================================================
void noise_variance()
{
  const EventField field{{0, 0}, 160.0, 15.0};
  const NoiseModel noise{0.1, 3.0};
  const Point p{4, 3};
  const double f = event_intensity(p, field);
  AgentRng rng(31337, 0, 1);
  double acc = 0.0;
  const int n = 1000000;
  for (int k = 0; k < n; ++k)
  {
    const double e = sense_event(p, field, noise, rng) - f;
    acc += e * e;
  }
  const double expected = f * f * noise.sigma * noise.sigma / 3.0;
  const double rel = std::abs(acc / n / expected - 1.0);
  report("noise-variance", rel < 0.01,
    fmt("empirical/expected variance ratio off by %.4f%% over %d samples (tolerance 1%%)", 100 * rel, n));
}

} // namespace

int main()
{
  try
  {
    coverage_and_bounds();
    redundancy_oracle_check();
    consensus_and_clustering();
    dispatch_laws();
    qualitative_figures();
    noise_variance();
  }
  catch (const std::exception& e)
  {
    report("acceptance-harness", false, std::string("uncaught exception: ") + e.what());
  }
  std::printf("%s: %d criteria failed\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures == 0 ? 0 : 1;
}
