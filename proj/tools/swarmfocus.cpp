// swarmfocus command-line front end: run, bounds, replay.

#include <swarmfocus/bounds.hpp>
#include <swarmfocus/config.hpp>
#include <swarmfocus/pipeline.hpp>
#include <swarmfocus/snapshot.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

using namespace swarmfocus;

namespace {

int cmd_run(const std::string& scenario_path, const std::string& config_path,
            std::uint64_t seed, const std::string& out_dir, const std::string& stage_list)
{
  const ScenarioFile scenario = load_scenario(scenario_path);
  const RunConfig config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
  const auto stages = parse_stages(stage_list);

  const RunArtifacts artifacts = run_pipeline(scenario, config, seed, stages);
  write_artifacts(artifacts, out_dir);
  for (const auto& line : artifacts.log)
    std::cout << line << "\n";
  if (!artifacts.ok())
  {
    std::cerr << "error: " << *artifacts.failure << "\n";
    return 1;
  }
  return 0;
}

void print_report(const BoundsReport& r)
{
  std::cout << "case: " << to_string(r.kind) << "\n";
  if (r.lower) std::cout << "lower: " << *r.lower << "\n";
  if (r.upper) std::cout << "upper: " << *r.upper << "\n";
  if (r.exact) std::cout << "exact: " << *r.exact << "\n";
  std::cout << "perimeter_correction: " << r.perimeter_correction << "\n";
}

int cmd_bounds(double width, double height, double r_v, const std::string& segmentation)
{
  if (!segmentation.empty())
  {
    const SegmentedScenario seg = load_segmentation(segmentation);
    std::cout << "segmented_lower_bound: " << segmented_lower_bound(seg, r_v) << "\n";
    return 0;
  }
  print_report(rect_bounds(width, height, r_v));
  return 0;
}

bool same(double a, double b)
{
  return a == b || (std::isnan(a) && std::isnan(b));
}

int cmd_replay(const std::string& path)
{
  const Snapshot s = load_snapshot(path);
  const auto metrics = snapshot_metrics(s).as_map();
  bool match = true;
  std::cout << "stage: " << s.stage << "\n";
  for (const auto& [name, value] : metrics)
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    std::cout << name << ": " << buf;
    const auto it = s.logged.find(name);
    if (it != s.logged.end() && !same(it->second, value))
    {
      std::snprintf(buf, sizeof buf, "%.17g", it->second);
      std::cout << "  (logged " << buf << ", MISMATCH)";
      match = false;
    }
    std::cout << "\n";
  }
  if (!match)
  {
    std::cerr << "error: replayed metrics differ from the logged values\n";
    return 1;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"swarmfocus: coverage, clustering and dispatch simulator with agent-count bounds"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the simulation pipeline");
  std::string scenario_path, config_path, out_dir, stage_list;
  std::uint64_t seed = 0;
  run->add_option("--scenario", scenario_path, "Scenario YAML file")->required()->check(CLI::ExistingFile);
  run->add_option("--config", config_path, "Run configuration YAML file")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Root random seed");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--stages", stage_list, "Comma-separated: coverage,clustering,dispatch,bounds");

  auto* bounds = app.add_subcommand("bounds", "Agent-count bounds");
  double width = 0.0, height = 0.0, r_v = 5.0;
  std::string segmentation;
  auto* w_opt = bounds->add_option("--width", width, "Rectangle width (m)");
  auto* h_opt = bounds->add_option("--height", height, "Rectangle height (m)");
  bounds->add_option("--rv", r_v, "Visibility radius (m)");
  auto* s_opt = bounds->add_option("--segmentation", segmentation, "Segmentation YAML file")
                  ->check(CLI::ExistingFile);
  w_opt->needs(h_opt);
  h_opt->needs(w_opt);
  s_opt->excludes(w_opt)->excludes(h_opt);

  auto* replay = app.add_subcommand("replay", "Recompute metrics from a snapshot");
  std::string snapshot_path;
  replay->add_option("--snapshot", snapshot_path, "Snapshot file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (run->parsed())
      return cmd_run(scenario_path, config_path, seed, out_dir, stage_list);
    if (bounds->parsed())
    {
      if (segmentation.empty() && (!w_opt->count() || !h_opt->count()))
      {
        std::cerr << "error: bounds needs --width and --height, or --segmentation\n";
        return 2;
      }
      return cmd_bounds(width, height, r_v, segmentation);
    }
    if (replay->parsed())
      return cmd_replay(snapshot_path);
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
