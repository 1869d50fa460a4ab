#include <swarmfocus/config.hpp>

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace swarmfocus {

namespace {

std::string read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

YAML::Node parse_yaml(const std::string& text, const std::string& what)
{
  try
  {
    return YAML::Load(text);
  }
  catch (const YAML::Exception& e)
  {
    throw ConfigError(what + ": " + e.what());
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key)
{
  try
  {
    return node.as<T>();
  }
  catch (const YAML::Exception&)
  {
    throw ConfigError("key '" + key + "': malformed value");
  }
}

double positive(const YAML::Node& node, const std::string& key)
{
  const double v = scalar<double>(node, key);
  if (!(v > 0.0))
    throw ConfigError("key '" + key + "': must be positive");
  return v;
}

std::size_t count(const YAML::Node& node, const std::string& key, bool allow_zero = false)
{
  const long v = scalar<long>(node, key);
  if (v < 0 || (!allow_zero && v == 0))
    throw ConfigError("key '" + key + "': must be a " + (allow_zero ? "non-negative" : "positive") + " integer");
  return static_cast<std::size_t>(v);
}

Point point(const YAML::Node& node, const std::string& key)
{
  if (!node.IsSequence() || node.size() != 2)
    throw ConfigError("key '" + key + "': expected [x, y]");
  return {scalar<double>(node[0], key), scalar<double>(node[1], key)};
}

std::vector<Point> points(const YAML::Node& node, const std::string& key)
{
  if (!node.IsSequence())
    throw ConfigError("key '" + key + "': expected a list of [x, y] pairs");
  std::vector<Point> out;
  for (const auto& p : node)
    out.push_back(point(p, key));
  return out;
}

void require_map(const YAML::Node& root, const std::string& what)
{
  if (!root.IsMap())
    throw ConfigError(what + ": expected a mapping at the top level");
}

void reject_unknown(const YAML::Node& root, const std::set<std::string>& known, const std::string& what)
{
  for (const auto& kv : root)
  {
    const auto key = kv.first.as<std::string>();
    if (!known.contains(key))
      throw ConfigError(what + ": unknown key '" + key + "'");
  }
}

const std::set<std::string> kScenarioKeys = {"name", "enclosure", "obstacles", "k_sc", "base_station"};

ScenarioFile scenario_from_node(const YAML::Node& root)
{
  if (!root["enclosure"])
    throw ConfigError("scenario: missing key 'enclosure'");

  ScenarioFile out;
  if (root["name"])
    out.name = scalar<std::string>(root["name"], "name");
  const Polygon enclosure = points(root["enclosure"], "enclosure");

  std::vector<Obstacle> obstacles;
  if (const auto obs = root["obstacles"])
  {
    if (!obs.IsSequence())
      throw ConfigError("key 'obstacles': expected a list");
    for (const auto& o : obs)
    {
      if (!o.IsMap())
        throw ConfigError("key 'obstacles': each entry must be a mapping");
      reject_unknown(o, {"kind", "vertices"}, "obstacle");
      Obstacle ob;
      const std::string kind = o["kind"] ? scalar<std::string>(o["kind"], "kind") : "polygon";
      if (kind == "polygon")
        ob.kind = ObstacleKind::Polygon;
      else if (kind == "segment")
        ob.kind = ObstacleKind::Segment;
      else
        throw ConfigError("obstacle kind must be 'polygon' or 'segment', got '" + kind + "'");
      if (!o["vertices"])
        throw ConfigError("obstacle: missing key 'vertices'");
      ob.vertices = points(o["vertices"], "vertices");
      obstacles.push_back(std::move(ob));
    }
  }

  const double k_sc = root["k_sc"] ? scalar<double>(root["k_sc"], "k_sc") : 0.5;
  if (!(k_sc > 0.0) || !(k_sc < 1.0))
    throw ConfigError("key 'k_sc': must lie in (0, 1)");

  try
  {
    out.scenario = Scenario(enclosure, std::move(obstacles), k_sc);
  }
  catch (const GeometryError& e)
  {
    throw ConfigError(std::string("scenario: ") + e.what());
  }

  const ValidationReport report = validate_scenario(out.scenario);
  if (!report.ok())
  {
    std::string msg = "scenario is invalid:";
    for (const auto& v : report.violations)
      msg += " [" + to_string(v.property) + "] " + v.detail + ";";
    throw ConfigError(msg);
  }

  out.base_station = root["base_station"] ? point(root["base_station"], "base_station") : Point{};
  return out;
}

} // namespace

//==============================================================================
DeploymentConfig RunConfig::deployment(Point base) const
{
  DeploymentConfig c;
  c.base_station = base_station.value_or(base);
  c.r_b = r_b;
  c.r_v = r_v;
  c.k_p = k_p;
  c.max_agents = max_agents;
  c.eps_ang = eps_ang;
  c.spacing_factor = spacing_factor;
  c.touch.contact_points = n_t;
  return c;
}

DispatchConfig RunConfig::dispatch(std::uint64_t seed) const
{
  DispatchConfig c;
  c.max_iter = max_iter;
  c.step_length = step_length.value_or(0.5 * r_b);
  c.leg_steps = leg_steps;
  c.fir_window = fir_window;
  c.r_b = r_b;
  c.r_v = r_v;
  c.cut = cut;
  c.event = event_field();
  c.noise = noise();
  c.seed = seed;
  return c;
}

RunConfig parse_run_config(const std::string& text)
{
  const YAML::Node root = parse_yaml(text, "config");
  RunConfig c;
  if (root.IsNull())
    return c;
  require_map(root, "config");
  reject_unknown(root,
    {"r_b", "r_v", "k_p", "n_t", "event_x", "event_y", "k_ev", "r_ev", "sigma_w", "alpha_w",
     "n_cl", "max_iter", "fir_window", "step_length", "leg_steps", "eps_ang", "base_x", "base_y",
     "cut", "max_agents", "spacing_factor"},
    "config");

  auto get = [&](const char* key) { return root[key]; };
  if (get("r_b")) c.r_b = positive(get("r_b"), "r_b");
  if (get("r_v")) c.r_v = positive(get("r_v"), "r_v");
  if (get("k_p")) c.k_p = positive(get("k_p"), "k_p");
  if (get("n_t")) c.n_t = static_cast<int>(count(get("n_t"), "n_t"));
  if (get("event_x")) c.event.x = scalar<double>(get("event_x"), "event_x");
  if (get("event_y")) c.event.y = scalar<double>(get("event_y"), "event_y");
  if (get("k_ev")) c.k_ev = positive(get("k_ev"), "k_ev");
  if (get("r_ev")) c.r_ev = positive(get("r_ev"), "r_ev");
  if (get("sigma_w"))
  {
    c.sigma_w = scalar<double>(get("sigma_w"), "sigma_w");
    if (c.sigma_w < 0.0)
      throw ConfigError("key 'sigma_w': must be non-negative");
  }
  if (get("alpha_w")) c.alpha_w = positive(get("alpha_w"), "alpha_w");
  if (get("n_cl")) c.n_cl = count(get("n_cl"), "n_cl");
  if (get("max_iter")) c.max_iter = count(get("max_iter"), "max_iter", true);
  if (get("fir_window")) c.fir_window = count(get("fir_window"), "fir_window");
  if (get("step_length")) c.step_length = positive(get("step_length"), "step_length");
  if (get("leg_steps")) c.leg_steps = count(get("leg_steps"), "leg_steps");
  if (get("eps_ang")) c.eps_ang = positive(get("eps_ang"), "eps_ang");
  if (get("base_x") || get("base_y"))
  {
    if (!get("base_x") || !get("base_y"))
      throw ConfigError("keys 'base_x' and 'base_y' must be given together");
    c.base_station = Point{scalar<double>(get("base_x"), "base_x"), scalar<double>(get("base_y"), "base_y")};
  }
  if (get("cut")) c.cut = parse_cut_mode(scalar<std::string>(get("cut"), "cut"));
  if (get("max_agents")) c.max_agents = count(get("max_agents"), "max_agents");
  if (get("spacing_factor"))
  {
    c.spacing_factor = positive(get("spacing_factor"), "spacing_factor");
    if (c.spacing_factor > 1.0)
      throw ConfigError("key 'spacing_factor': must not exceed 1");
  }
  if (c.r_v < 4.0 * c.r_b)
    throw ConfigError("r_v must be at least 4 r_b");
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
  return parse_run_config(read_file(path));
}

ScenarioFile parse_scenario(const std::string& text)
{
  const YAML::Node root = parse_yaml(text, "scenario");
  require_map(root, "scenario");
  reject_unknown(root, kScenarioKeys, "scenario");
  return scenario_from_node(root);
}

ScenarioFile load_scenario(const std::filesystem::path& path)
{
  return parse_scenario(read_file(path));
}

SegmentedScenario parse_segmentation(const std::string& text)
{
  const YAML::Node root = parse_yaml(text, "segmentation");
  require_map(root, "segmentation");
  std::set<std::string> known = kScenarioKeys;
  known.insert({"rectangles", "enclosure_sigma", "obstacle_sigma", "default_obstacle_sigma"});
  reject_unknown(root, known, "segmentation");

  SegmentedScenario seg;
  seg.scenario = scenario_from_node(root).scenario;
  if (root["enclosure_sigma"])
    seg.enclosure_sigma = scalar<double>(root["enclosure_sigma"], "enclosure_sigma");
  if (root["default_obstacle_sigma"])
    seg.default_obstacle_sigma = scalar<double>(root["default_obstacle_sigma"], "default_obstacle_sigma");
  if (const auto sig = root["obstacle_sigma"])
  {
    if (!sig.IsSequence())
      throw ConfigError("key 'obstacle_sigma': expected a list");
    for (const auto& s : sig)
      seg.obstacle_sigma.push_back(scalar<double>(s, "obstacle_sigma"));
  }
  if (const auto rects = root["rectangles"])
  {
    if (!rects.IsSequence())
      throw ConfigError("key 'rectangles': expected a list");
    for (const auto& r : rects)
    {
      if (!r.IsMap())
        throw ConfigError("key 'rectangles': each entry must be a mapping");
      reject_unknown(r, {"origin", "width", "height", "included"}, "rectangle");
      if (!r["origin"] || !r["width"] || !r["height"])
        throw ConfigError("rectangle: 'origin', 'width' and 'height' are required");
      SegmentRect rect;
      rect.origin = point(r["origin"], "origin");
      rect.width = positive(r["width"], "width");
      rect.height = positive(r["height"], "height");
      if (r["included"])
        rect.included = scalar<bool>(r["included"], "included");
      seg.rectangles.push_back(rect);
    }
  }
  return seg;
}

SegmentedScenario load_segmentation(const std::filesystem::path& path)
{
  return parse_segmentation(read_file(path));
}

//==============================================================================
std::string to_string(Stage stage)
{
  switch (stage)
  {
    case Stage::Coverage: return "coverage";
    case Stage::Clustering: return "clustering";
    case Stage::Dispatch: return "dispatch";
    case Stage::Bounds: return "bounds";
  }
  return "unknown";
}

std::set<Stage> parse_stages(const std::string& list)
{
  std::set<Stage> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    item = first == std::string::npos ? std::string{} : item.substr(first, last - first + 1);
    if (item.empty())
      continue;
    if (item == "coverage") out.insert(Stage::Coverage);
    else if (item == "clustering") out.insert(Stage::Clustering);
    else if (item == "dispatch") out.insert(Stage::Dispatch);
    else if (item == "bounds") out.insert(Stage::Bounds);
    else throw ConfigError("unknown stage '" + item + "'");
  }
  if (out.empty())
    out = {Stage::Coverage, Stage::Clustering, Stage::Dispatch, Stage::Bounds};
  return out;
}

std::string to_string(CutMode mode)
{
  return mode == CutMode::Weighted ? "weighted" : "cardinal";
}

CutMode parse_cut_mode(const std::string& text)
{
  if (text == "weighted")
    return CutMode::Weighted;
  if (text == "cardinal")
    return CutMode::Cardinal;
  throw ConfigError("cut must be 'weighted' or 'cardinal', got '" + text + "'");
}

} // namespace swarmfocus
