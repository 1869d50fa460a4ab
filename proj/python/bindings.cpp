#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <swarmfocus/bounds.hpp>
#include <swarmfocus/clustering.hpp>
#include <swarmfocus/config.hpp>
#include <swarmfocus/consensus.hpp>
#include <swarmfocus/coverage.hpp>
#include <swarmfocus/pipeline.hpp>
#include <swarmfocus/snapshot.hpp>

namespace py = pybind11;
using namespace swarmfocus;

namespace {

SwarmGraph graph_from_lists(
  const std::vector<std::pair<double, double>>& positions,
  const std::vector<double>& weights,
  const std::vector<std::tuple<VertexId, VertexId, double>>& edges)
{
  SwarmGraph g;
  for (std::size_t k = 0; k < positions.size(); ++k)
    g.add_vertex({positions[k].first, positions[k].second}, k < weights.size() ? weights[k] : 1.0);
  for (const auto& [i, j, w] : edges)
    g.add_edge(i, j, w);
  return g;
}

py::dict bounds_dict(const BoundsReport& r)
{
  py::dict d;
  d["case"] = to_string(r.kind);
  d["lower"] = r.lower ? py::cast(*r.lower) : py::none();
  d["upper"] = r.upper ? py::cast(*r.upper) : py::none();
  d["exact"] = r.exact ? py::cast(*r.exact) : py::none();
  d["perimeter_correction"] = r.perimeter_correction;
  return d;
}

} // namespace

PYBIND11_MODULE(_swarmfocus, m)
{
  m.doc() = "Coverage, clustering and dispatch of bearing-only agent swarms";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SnapshotParseError>(m, "SnapshotParseError", PyExc_ValueError);
  py::register_exception<BoundsDomainError>(m, "BoundsDomainError", PyExc_ValueError);

  m.def("g_upper", &g_upper, py::arg("a"), py::arg("b"));
  m.def("g_lower", &g_lower, py::arg("a"), py::arg("b"));
  m.def("g_exact", &g_exact, py::arg("a"), py::arg("b"));
  m.def("rect_bounds",
    [](double w, double h, double r_v) { return bounds_dict(rect_bounds(w, h, r_v)); },
    py::arg("width"), py::arg("height"), py::arg("r_v") = 5.0,
    "Bounds on the agent count for an obstacle-free rectangle.");
  m.def("segmented_lower_bound",
    [](const std::filesystem::path& path, double r_v)
    { return segmented_lower_bound(load_segmentation(path), r_v); },
    py::arg("path"), py::arg("r_v") = 5.0);

  m.def("coverage",
    [](double width, double height, std::pair<double, double> base, double r_b, double r_v)
    {
      const Scenario sc = make_rectangle_scenario({-width / 2, -height / 2}, width, height);
      DeploymentConfig c;
      c.base_station = {base.first, base.second};
      c.r_b = r_b;
      c.r_v = r_v;
      const CoverageResult r = coverage_run(sc, c);
      py::list positions;
      for (const auto& a : r.agents)
        positions.append(py::make_tuple(a.position.x, a.position.y));
      py::dict out;
      out["positions"] = positions;
      out["edges"] = r.graph.edges();
      out["connected"] = is_connected(r.graph);
      out["coverage"] = grid_coverage(r.graph.positions(), sc, c.base_station, r_v, r_b / 2).fraction();
      return out;
    },
    py::arg("width"), py::arg("height"), py::arg("base") = std::pair{0.0, 0.0},
    py::arg("r_b") = 0.5, py::arg("r_v") = 5.0,
    "Deploys agents in a centred obstacle-free rectangle.");

  m.def("max_consensus",
    [](const std::vector<std::pair<double, double>>& positions,
       const std::vector<double>& weights,
       const std::vector<std::tuple<VertexId, VertexId, double>>& edges,
       VertexId start)
    {
      const ConsensusResult r = max_consensus(graph_from_lists(positions, weights, edges), start);
      return py::make_tuple(r.leader, r.rounds);
    },
    py::arg("positions"), py::arg("weights"), py::arg("edges"), py::arg("start") = 0,
    "Returns (leader, rounds).");

  m.def("grow_cluster",
    [](const std::vector<std::pair<double, double>>& positions,
       const std::vector<double>& weights,
       const std::vector<std::tuple<VertexId, VertexId, double>>& edges,
       VertexId leader, std::size_t target)
    {
      return grow_cluster(graph_from_lists(positions, weights, edges), leader, target).members();
    },
    py::arg("positions"), py::arg("weights"), py::arg("edges"), py::arg("leader"), py::arg("target"),
    "Cluster members, ascending.");

  m.def("run",
    [](const std::filesystem::path& scenario, const std::filesystem::path& config,
       std::uint64_t seed, const std::string& stages, const std::filesystem::path& out_dir)
    {
      const ScenarioFile sc = load_scenario(scenario);
      const RunConfig rc = config.empty() ? RunConfig{} : load_run_config(config);
      const RunArtifacts a = run_pipeline(sc, rc, seed, parse_stages(stages));
      if (!out_dir.empty())
        write_artifacts(a, out_dir);
      py::dict summary;
      for (const auto& [k, v] : a.summary)
        summary[py::str(k)] = v;
      summary["status"] = a.ok() ? "ok" : "failed";
      return summary;
    },
    py::arg("scenario"), py::arg("config") = std::filesystem::path{}, py::arg("seed") = 0,
    py::arg("stages") = "", py::arg("out_dir") = std::filesystem::path{},
    "Runs the pipeline and returns the summary metrics.");

  m.def("replay",
    [](const std::filesystem::path& path)
    {
      const Snapshot s = load_snapshot(path);
      py::dict out;
      for (const auto& [k, v] : snapshot_metrics(s).as_map())
        out[py::str(k)] = v;
      py::dict logged;
      for (const auto& [k, v] : s.logged)
        logged[py::str(k)] = v;
      return py::make_tuple(out, logged);
    },
    py::arg("path"), "Returns (recomputed metrics, logged metrics).");
}
