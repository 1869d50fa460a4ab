#ifndef SWARMFOCUS__PIPELINE_HPP
#define SWARMFOCUS__PIPELINE_HPP

#include <swarmfocus/bounds.hpp>
#include <swarmfocus/clustering.hpp>
#include <swarmfocus/config.hpp>
#include <swarmfocus/coverage.hpp>
#include <swarmfocus/dispatch.hpp>
#include <swarmfocus/snapshot.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace swarmfocus {

/// Sensing stream used for the initial vertex weighting.
inline constexpr std::uint64_t kWeightingStream = 1;

struct RunArtifacts
{
  /// post-coverage, post-clustering and post-dispatch, as far as the run got.
  std::vector<Snapshot> snapshots;
  std::optional<CoverageResult> coverage;
  std::optional<ClusterState> cluster;
  std::optional<VertexId> leader;
  std::size_t consensus_rounds = 0;
  std::optional<DispatchResult> dispatch;
  std::optional<BoundsReport> bounds;
  /// Summary metrics in insertion order.
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> log;
  /// Set when a stage failed; the artifacts hold whatever was produced.
  std::optional<std::string> failure;

  bool ok() const { return !failure; }
};

/// Coverage, weighting, consensus, clustering and dispatch in order, as far
/// as the selected stages reach. Bounds run only on an obstacle-free
/// axis-aligned rectangle.
RunArtifacts run_pipeline(
  const ScenarioFile& scenario,
  const RunConfig& config,
  std::uint64_t seed,
  const std::set<Stage>& stages);

/// Functional trace as CSV with a header row.
std::string trace_csv(const DispatchTrace& trace);

/// Snapshots (*.snap), their SVGs, trace.csv, trace.svg, metrics.txt and
/// run.log under `dir`, which is created if needed.
void write_artifacts(const RunArtifacts& artifacts, const std::filesystem::path& dir);

/// Width and height when the scenario is an obstacle-free axis-aligned
/// rectangle.
std::optional<std::pair<double, double>> rectangle_extent(const Scenario& scenario);

} // namespace swarmfocus

#endif // SWARMFOCUS__PIPELINE_HPP
