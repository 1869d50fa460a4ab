#ifndef SWARMFOCUS__CONFIG_HPP
#define SWARMFOCUS__CONFIG_HPP

#include <swarmfocus/bounds.hpp>
#include <swarmfocus/coverage.hpp>
#include <swarmfocus/dispatch.hpp>
#include <swarmfocus/geometry.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace swarmfocus {

class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Run parameters. Lengths in metres, angles in radians.
struct RunConfig
{
  double r_b = 0.5;
  double r_v = 5.0;
  double k_p = 1.0;
  int n_t = 1;
  Point event{1.0, 0.0};
  double k_ev = 160.0;
  double r_ev = 15.0;
  double sigma_w = 0.0;
  double alpha_w = 3.0;
  std::size_t n_cl = 15;
  std::size_t max_iter = 10;
  std::size_t fir_window = 5;
  /// Dispatch micro-step; r_b / 2 when unset.
  std::optional<double> step_length;
  std::size_t leg_steps = 20;
  double eps_ang = 1e-3;
  /// Overrides the scenario's base station when set.
  std::optional<Point> base_station;
  CutMode cut = CutMode::Weighted;
  std::size_t max_agents = 5000;
  double spacing_factor = 0.98;

  EventField event_field() const { return {event, k_ev, r_ev}; }
  NoiseModel noise() const { return {sigma_w, alpha_w}; }
  DeploymentConfig deployment(Point base) const;
  DispatchConfig dispatch(std::uint64_t seed) const;
};

/// Flat YAML mapping; unknown keys and malformed values throw ConfigError.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

struct ScenarioFile
{
  std::string name;
  Scenario scenario;
  Point base_station;
};

/// YAML scenario: enclosure, obstacles [{kind, vertices}], k_sc and
/// base_station. A scenario failing validation throws ConfigError listing the
/// violated properties.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Scenario fields plus rectangles [{origin, width, height, included}],
/// enclosure_sigma, obstacle_sigma and default_obstacle_sigma.
SegmentedScenario parse_segmentation(const std::string& text);
SegmentedScenario load_segmentation(const std::filesystem::path& path);

enum class Stage { Coverage, Clustering, Dispatch, Bounds };

std::string to_string(Stage stage);

/// Comma-separated stage names; empty selects every stage.
std::set<Stage> parse_stages(const std::string& list);

std::string to_string(CutMode mode);
CutMode parse_cut_mode(const std::string& text);

} // namespace swarmfocus

#endif // SWARMFOCUS__CONFIG_HPP
