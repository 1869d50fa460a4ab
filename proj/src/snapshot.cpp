#include <swarmfocus/snapshot.hpp>

#include <swarmfocus/coverage.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace swarmfocus {

namespace {

constexpr const char* kMagic = "swarmfocus-snapshot";
constexpr int kVersion = 1;

std::string real(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_list(const std::vector<Point>& pts)
{
  std::string out = std::to_string(pts.size());
  for (const auto& p : pts)
    out += " " + real(p.x) + " " + real(p.y);
  return out;
}

/// Tokenized line with positional accessors that report the line number.
class Line
{
public:
  Line(std::size_t number, const std::string& text) : number_(number)
  {
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok)
      tokens_.push_back(tok);
  }

  std::size_t number() const { return number_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& keyword() const { return tokens_.front(); }

  const std::string& text(std::size_t i, const std::string& field) const
  {
    if (i >= tokens_.size())
      throw SnapshotParseError(number_, field, "missing value");
    return tokens_[i];
  }

  double real(std::size_t i, const std::string& field) const
  {
    const std::string& t = text(i, field);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || errno == ERANGE)
      throw SnapshotParseError(number_, field, "not a number: '" + t + "'");
    return v;
  }

  std::size_t index(std::size_t i, const std::string& field) const
  {
    const std::string& t = text(i, field);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0' || errno == ERANGE || t.front() == '-')
      throw SnapshotParseError(number_, field, "not a non-negative integer: '" + t + "'");
    return static_cast<std::size_t>(v);
  }

  bool flag(std::size_t i, const std::string& field) const
  {
    const std::string& t = text(i, field);
    if (t == "0") return false;
    if (t == "1") return true;
    throw SnapshotParseError(number_, field, "expected 0 or 1, got '" + t + "'");
  }

  std::vector<Point> points(std::size_t first, const std::string& field) const
  {
    const std::size_t n = index(first, field + ".count");
    if (size() != first + 1 + 2 * n)
      throw SnapshotParseError(number_, field, "expected " + std::to_string(n) + " coordinate pairs");
    std::vector<Point> out;
    for (std::size_t k = 0; k < n; ++k)
      out.push_back({real(first + 1 + 2 * k, field), real(first + 2 + 2 * k, field)});
    return out;
  }

  void expect_size(std::size_t n, const std::string& field) const
  {
    if (size() != n)
      throw SnapshotParseError(number_, field,
        "expected " + std::to_string(n - 1) + " values, got " + std::to_string(size() - 1));
  }

private:
  std::size_t number_;
  std::vector<std::string> tokens_;
};

} // namespace

SnapshotParseError::SnapshotParseError(std::size_t line, const std::string& field, const std::string& what)
: std::runtime_error("snapshot line " + std::to_string(line) + ", field '" + field + "': " + what),
  line_(line),
  field_(field)
{
}

//==============================================================================
std::map<std::string, double> SnapshotMetrics::as_map() const
{
  return {
    {"agents", static_cast<double>(agents)},
    {"edges", static_cast<double>(edges)},
    {"cluster_size", static_cast<double>(cluster_size)},
    {"h", h},
    {"h_cl", h_cl},
    {"eps_s", eps_s},
    {"eps_sbar", eps_sbar},
    {"eps_c", eps_c},
    {"connected", connected ? 1.0 : 0.0},
    {"covered", static_cast<double>(covered)},
    {"grid_points", static_cast<double>(grid_points)},
    {"coverage", coverage},
  };
}

SnapshotMetrics snapshot_metrics(const Snapshot& s)
{
  SnapshotMetrics m;
  const SwarmGraph& g = s.graph;
  m.agents = g.size();
  m.edges = g.edge_count();
  const ClusterView view = ClusterView::from_flags(g);
  for (bool b : view.members)
    m.cluster_size += b ? 1 : 0;
  const Isoperimetric iso = isoperimetric(view, s.cut);
  m.h = iso.value;
  m.eps_s = iso.eps_s;
  m.eps_sbar = iso.eps_sbar;
  m.eps_c = iso.eps_c;
  m.h_cl = iso.eps_s > 0.0 ? iso.eps_c / iso.eps_s : std::numeric_limits<double>::infinity();
  m.connected = g.size() == 0 || is_connected(g);
  const GridCoverage cov = grid_coverage(g.positions(), s.scenario, s.base_station, s.r_v, 0.5 * s.r_b);
  m.covered = cov.covered;
  m.grid_points = cov.total;
  m.coverage = cov.fraction();
  return m;
}

//==============================================================================
std::string write_snapshot(const Snapshot& s)
{
  std::ostringstream out;
  out << kMagic << " " << kVersion << "\n";
  out << "stage " << (s.stage.empty() ? "unnamed" : s.stage) << "\n";
  out << "r_b " << real(s.r_b) << "\n";
  out << "r_v " << real(s.r_v) << "\n";
  out << "cut " << (s.cut == CutMode::Weighted ? "weighted" : "cardinal") << "\n";
  out << "base " << real(s.base_station.x) << " " << real(s.base_station.y) << "\n";
  out << "event " << real(s.event.x) << " " << real(s.event.y) << "\n";
  out << "k_sc " << real(s.scenario.k_sc()) << "\n";
  out << "enclosure " << point_list(s.scenario.enclosure()) << "\n";
  for (const auto& o : s.scenario.obstacles())
    out << "obstacle " << (o.kind == ObstacleKind::Polygon ? "polygon " : "segment ")
        << point_list(o.vertices) << "\n";
  for (VertexId v = 0; v < s.graph.size(); ++v)
  {
    const Vertex& x = s.graph.vertex(v);
    out << "vertex " << v << " " << real(x.position.x) << " " << real(x.position.y) << " "
        << real(x.weight) << " " << int(x.in_cluster) << " " << int(x.completed) << " "
        << int(x.contact) << "\n";
  }
  for (const auto& [i, j] : s.graph.edges())
    out << "edge " << i << " " << j << " " << real(s.graph.edge_weight(i, j)) << "\n";
  for (const auto& [name, value] : s.logged)
    out << "metric " << name << " " << real(value) << "\n";
  out << "end\n";
  return out.str();
}

Snapshot parse_snapshot(const std::string& text)
{
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  std::vector<Line> lines;
  while (std::getline(in, raw))
  {
    ++number;
    Line line(number, raw);
    if (!line.empty())
      lines.push_back(std::move(line));
  }
  if (lines.empty())
    throw SnapshotParseError(1, "header", "empty snapshot");

  const Line& header = lines.front();
  if (header.keyword() != kMagic)
    throw SnapshotParseError(header.number(), "header", "not a swarmfocus snapshot");
  header.expect_size(2, "header");
  if (header.index(1, "version") != static_cast<std::size_t>(kVersion))
    throw SnapshotParseError(header.number(), "version", "unsupported version");

  Snapshot s;
  Polygon enclosure;
  bool have_enclosure = false;
  double k_sc = 0.5;
  std::vector<Obstacle> obstacles;
  std::vector<std::pair<std::size_t, Vertex>> vertices;
  struct EdgeLine { std::size_t line; VertexId i; VertexId j; double w; };
  std::vector<EdgeLine> edges;
  bool ended = false;

  for (std::size_t k = 1; k < lines.size(); ++k)
  {
    const Line& l = lines[k];
    const std::string& key = l.keyword();
    if (ended)
      throw SnapshotParseError(l.number(), key, "content after 'end'");
    if (key == "stage")
    {
      l.expect_size(2, "stage");
      s.stage = l.text(1, "stage");
    }
    else if (key == "r_b")
    {
      l.expect_size(2, "r_b");
      s.r_b = l.real(1, "r_b");
    }
    else if (key == "r_v")
    {
      l.expect_size(2, "r_v");
      s.r_v = l.real(1, "r_v");
    }
    else if (key == "cut")
    {
      l.expect_size(2, "cut");
      const std::string& c = l.text(1, "cut");
      if (c == "weighted") s.cut = CutMode::Weighted;
      else if (c == "cardinal") s.cut = CutMode::Cardinal;
      else throw SnapshotParseError(l.number(), "cut", "expected weighted or cardinal");
    }
    else if (key == "base")
    {
      l.expect_size(3, "base");
      s.base_station = {l.real(1, "base.x"), l.real(2, "base.y")};
    }
    else if (key == "event")
    {
      l.expect_size(3, "event");
      s.event = {l.real(1, "event.x"), l.real(2, "event.y")};
    }
    else if (key == "k_sc")
    {
      l.expect_size(2, "k_sc");
      k_sc = l.real(1, "k_sc");
    }
    else if (key == "enclosure")
    {
      enclosure = l.points(1, "enclosure");
      have_enclosure = true;
    }
    else if (key == "obstacle")
    {
      Obstacle o;
      const std::string& kind = l.text(1, "obstacle.kind");
      if (kind == "polygon") o.kind = ObstacleKind::Polygon;
      else if (kind == "segment") o.kind = ObstacleKind::Segment;
      else throw SnapshotParseError(l.number(), "obstacle.kind", "expected polygon or segment");
      o.vertices = l.points(2, "obstacle");
      obstacles.push_back(std::move(o));
    }
    else if (key == "vertex")
    {
      l.expect_size(8, "vertex");
      const std::size_t id = l.index(1, "vertex.id");
      if (id != vertices.size())
        throw SnapshotParseError(l.number(), "vertex.id", "ids must be consecutive from 0");
      Vertex v;
      v.position = {l.real(2, "vertex.x"), l.real(3, "vertex.y")};
      v.weight = l.real(4, "vertex.weight");
      v.in_cluster = l.flag(5, "vertex.in_cluster");
      v.completed = l.flag(6, "vertex.completed");
      v.contact = l.flag(7, "vertex.contact");
      vertices.emplace_back(l.number(), v);
    }
    else if (key == "edge")
    {
      l.expect_size(4, "edge");
      edges.push_back({l.number(), l.index(1, "edge.i"), l.index(2, "edge.j"), l.real(3, "edge.weight")});
    }
    else if (key == "metric")
    {
      l.expect_size(3, "metric");
      s.logged[l.text(1, "metric.name")] = l.real(2, "metric.value");
    }
    else if (key == "end")
    {
      l.expect_size(1, "end");
      ended = true;
    }
    else
    {
      throw SnapshotParseError(l.number(), key, "unknown record");
    }
  }

  const std::size_t last = lines.back().number();
  if (!ended)
    throw SnapshotParseError(last, "end", "truncated snapshot (no 'end' record)");
  if (!have_enclosure)
    throw SnapshotParseError(last, "enclosure", "missing enclosure record");

  try
  {
    s.scenario = Scenario(enclosure, std::move(obstacles), k_sc);
  }
  catch (const std::exception& e)
  {
    throw SnapshotParseError(last, "enclosure", e.what());
  }

  for (const auto& [line, v] : vertices)
  {
    const VertexId id = s.graph.add_vertex(v.position, v.weight);
    s.graph.vertex(id).in_cluster = v.in_cluster;
    s.graph.vertex(id).completed = v.completed;
    s.graph.vertex(id).contact = v.contact;
  }
  for (const auto& e : edges)
  {
    if (e.i >= s.graph.size() || e.j >= s.graph.size() || e.i == e.j)
      throw SnapshotParseError(e.line, "edge", "endpoint out of range or self-loop");
    s.graph.add_edge(e.i, e.j, e.w);
  }
  return s;
}

void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << write_snapshot(snapshot);
}

Snapshot load_snapshot(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_snapshot(ss.str());
}

} // namespace swarmfocus
