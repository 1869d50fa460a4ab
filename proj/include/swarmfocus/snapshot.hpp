#ifndef SWARMFOCUS__SNAPSHOT_HPP
#define SWARMFOCUS__SNAPSHOT_HPP

#include <swarmfocus/geometry.hpp>
#include <swarmfocus/netgraph.hpp>

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace swarmfocus {

/// Everything needed to recompute a run's metrics: scenario, radii, cut mode
/// and the graph with weights and flags.
struct Snapshot
{
  std::string stage;
  double r_b = 0.5;
  double r_v = 5.0;
  CutMode cut = CutMode::Weighted;
  Point base_station;
  Point event;
  Scenario scenario;
  SwarmGraph graph;
  /// Metrics as logged by the producing run, keyed by name.
  std::map<std::string, double> logged;
};

struct SnapshotMetrics
{
  std::size_t agents = 0;
  std::size_t edges = 0;
  std::size_t cluster_size = 0;
  double h = 0.0;
  double h_cl = 0.0;
  double eps_s = 0.0;
  double eps_sbar = 0.0;
  double eps_c = 0.0;
  bool connected = false;
  std::size_t covered = 0;
  std::size_t grid_points = 0;
  double coverage = 0.0;

  /// Name/value pairs in a fixed order.
  std::map<std::string, double> as_map() const;
};

/// Recomputes the metrics from the snapshot alone. Coverage uses a grid of
/// pitch r_b / 2.
SnapshotMetrics snapshot_metrics(const Snapshot& snapshot);

class SnapshotParseError : public std::runtime_error
{
public:
  SnapshotParseError(std::size_t line, const std::string& field, const std::string& what);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

private:
  std::size_t line_;
  std::string field_;
};

/// Line-oriented text; reals are written with 17 significant digits so a
/// round trip is lossless.
std::string write_snapshot(const Snapshot& snapshot);
Snapshot parse_snapshot(const std::string& text);

void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);

} // namespace swarmfocus

#endif // SWARMFOCUS__SNAPSHOT_HPP
