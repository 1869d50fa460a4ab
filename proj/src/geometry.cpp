#include <swarmfocus/geometry.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace swarmfocus {

namespace {

double orient(Point a, Point b, Point c)
{
  return cross(b - a, c - a);
}

std::vector<Segment> closed_edges(std::span<const Point> v)
{
  std::vector<Segment> edges;
  if (v.size() == 2)
  {
    edges.push_back({v[0], v[1]});
    return edges;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    edges.push_back({v[i], v[(i + 1) % v.size()]});
  return edges;
}

std::vector<Segment> obstacle_edges(const Obstacle& o)
{
  return closed_edges(o.vertices);
}

// Parameters along `s` where it meets segment `t` (including collinear
// overlap endpoints).
void collect_crossings(const Segment& s, const Segment& t, std::vector<double>& out)
{
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0)
    return;

  auto project = [&](Point p) { return dot(p - s.a, d) / len2; };

  const Point e = t.b - t.a;
  const double denom = cross(d, e);
  if (std::abs(denom) > kEpsGeo * std::sqrt(len2) * norm(e))
  {
    const double u = cross(t.a - s.a, e) / denom;
    const double v = cross(t.a - s.a, d) / denom;
    if (u >= -kEpsGeo && u <= 1.0 + kEpsGeo && v >= -kEpsGeo && v <= 1.0 + kEpsGeo)
      out.push_back(std::clamp(u, 0.0, 1.0));
    return;
  }

  // Parallel: only collinear contact matters.
  if (point_segment_distance(t.a, s) <= kEpsGeo)
    out.push_back(std::clamp(project(t.a), 0.0, 1.0));
  if (point_segment_distance(t.b, s) <= kEpsGeo)
    out.push_back(std::clamp(project(t.b), 0.0, 1.0));
}

// Splits every edge of `edges` at its contacts with `other` and reports the
// location of each piece's midpoint relative to the polygon `region`.
template <typename Fn>
void for_each_piece(
  const std::vector<Segment>& edges,
  const std::vector<Segment>& other,
  Fn&& fn)
{
  for (const auto& s : edges)
  {
    std::vector<double> ts{0.0, 1.0};
    for (const auto& t : other)
      collect_crossings(s, t, ts);
    std::sort(ts.begin(), ts.end());
    const double len = distance(s.a, s.b);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
    {
      if ((ts[k + 1] - ts[k]) * len <= kEpsGeo)
        continue;
      const double tm = 0.5 * (ts[k] + ts[k + 1]);
      if (fn(s.a + tm * (s.b - s.a)))
        return;
    }
  }
}

bool any_piece_at(
  std::span<const Point> piece_source,
  std::span<const Point> region,
  Location wanted)
{
  bool found = false;
  for_each_piece(closed_edges(piece_source), closed_edges(region),
    [&](Point m)
    {
      found = locate(m, region) == wanted;
      return found;
    });
  return found;
}

// A point strictly inside a simple polygon.
Point interior_point(std::span<const Point> poly)
{
  std::vector<double> ys;
  for (auto p : poly)
    ys.push_back(p.y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const double y0 = ys.size() > 1 ? 0.5 * (ys[0] + ys[1]) : ys.front();

  std::vector<double> xs;
  for (std::size_t i = 0; i < poly.size(); ++i)
  {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % poly.size()];
    if ((a.y < y0) != (b.y < y0))
      xs.push_back(a.x + (y0 - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  std::sort(xs.begin(), xs.end());
  if (xs.size() < 2)
    return poly.front();
  return {0.5 * (xs[0] + xs[1]), y0};
}

} // namespace

//==============================================================================
double point_segment_distance(Point p, const Segment& s)
{
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0)
    return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.a + t * d);
}

double segment_segment_distance(const Segment& s, const Segment& t)
{
  const double o1 = orient(s.a, s.b, t.a);
  const double o2 = orient(s.a, s.b, t.b);
  const double o3 = orient(t.a, t.b, s.a);
  const double o4 = orient(t.a, t.b, s.b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0))
    && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return 0.0;

  return std::min({
    point_segment_distance(s.a, t),
    point_segment_distance(s.b, t),
    point_segment_distance(t.a, s),
    point_segment_distance(t.b, s)});
}

bool segments_touch(const Segment& s, const Segment& t)
{
  return segment_segment_distance(s, t) <= kEpsGeo;
}

//==============================================================================
double signed_area(std::span<const Point> v)
{
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    twice += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * twice;
}

bool is_simple_polygon(std::span<const Point> v)
{
  const std::size_t n = v.size();
  if (n < 3)
    return false;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (distance(v[i], v[j]) <= kEpsGeo)
        return false;

  const auto edges = closed_edges(v);
  for (std::size_t i = 0; i < n; ++i)
  {
    for (std::size_t j = i + 1; j < n; ++j)
    {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent)
      {
        if (segments_touch(edges[i], edges[j]))
          return false;
        continue;
      }

      // Adjacent edges share one vertex; they must not fold back on each other.
      const Segment& first = (j == i + 1) ? edges[i] : edges[j];
      const Segment& second = (j == i + 1) ? edges[j] : edges[i];
      if (point_segment_distance(first.a, second) <= kEpsGeo
        || point_segment_distance(second.b, first) <= kEpsGeo)
        return false;
    }
  }

  if (std::abs(signed_area(v)) <= kEpsGeo)
    return false;
  return true;
}

double polygon_area(std::span<const Point> v)
{
  if (v.size() == 2)
    return 0.0;
  if (!is_simple_polygon(v))
    throw GeometryError("polygon_area: input is not a simple polygon");
  return std::abs(signed_area(v));
}

double polygon_perimeter(std::span<const Point> v)
{
  if (v.size() < 2)
    throw GeometryError("polygon_perimeter: need at least two vertices");
  if (v.size() == 2)
  {
    const double len = distance(v[0], v[1]);
    if (len <= kEpsGeo)
      throw GeometryError("polygon_perimeter: degenerate segment");
    return len;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    total += distance(v[i], v[(i + 1) % v.size()]);
  return total;
}

Location locate(Point p, std::span<const Point> poly)
{
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++)
  {
    const Point a = poly[j];
    const Point b = poly[i];
    if (point_segment_distance(p, {a, b}) <= kEpsGeo)
      return Location::Boundary;
    if ((b.y > p.y) != (a.y > p.y))
    {
      const double x = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < x)
        inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

//==============================================================================
Scenario::Scenario(Polygon enclosure, std::vector<Obstacle> obstacles, double k_sc)
: enclosure_(std::move(enclosure)),
  obstacles_(std::move(obstacles)),
  k_sc_(k_sc)
{
  if (enclosure_.size() >= 3 && signed_area(enclosure_) < 0.0)
    std::reverse(enclosure_.begin(), enclosure_.end());
  for (auto& o : obstacles_)
    if (o.kind == ObstacleKind::Polygon && o.vertices.size() >= 3
      && signed_area(o.vertices) < 0.0)
      std::reverse(o.vertices.begin(), o.vertices.end());

  if (enclosure_.size() >= 2)
    edges_ = closed_edges(enclosure_);
  for (const auto& o : obstacles_)
  {
    if (o.vertices.size() < 2)
      continue;
    auto e = obstacle_edges(o);
    edges_.insert(edges_.end(), e.begin(), e.end());
  }

  min_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  max_ = {-min_.x, -min_.y};
  for (auto p : enclosure_)
  {
    min_ = {std::min(min_.x, p.x), std::min(min_.y, p.y)};
    max_ = {std::max(max_.x, p.x), std::max(max_.y, p.y)};
  }
}

Scenario make_rectangle_scenario(
  Point origin, double width, double height,
  std::vector<Obstacle> obstacles, double k_sc)
{
  Polygon en{
    origin,
    {origin.x + width, origin.y},
    {origin.x + width, origin.y + height},
    {origin.x, origin.y + height}};
  return Scenario(std::move(en), std::move(obstacles), k_sc);
}

Obstacle make_box_obstacle(Point lo, Point hi)
{
  return {ObstacleKind::Polygon, {lo, {hi.x, lo.y}, hi, {lo.x, hi.y}}};
}

//==============================================================================
std::string to_string(ScenarioProperty p)
{
  switch (p)
  {
    case ScenarioProperty::EnclosureSimple: return "enclosure-simple";
    case ScenarioProperty::ObstacleWellFormed: return "obstacle-well-formed";
    case ScenarioProperty::Overlap: return "overlap";
    case ScenarioProperty::Containment: return "containment";
    case ScenarioProperty::Occupancy: return "occupancy";
  }
  return "unknown";
}

bool ValidationReport::violates(ScenarioProperty p) const
{
  return std::any_of(violations.begin(), violations.end(),
    [p](const ScenarioViolation& v) { return v.property == p; });
}

namespace {

bool obstacle_well_formed(const Obstacle& o)
{
  if (o.kind == ObstacleKind::Segment)
    return o.vertices.size() == 2 && distance(o.vertices[0], o.vertices[1]) > kEpsGeo;
  return is_simple_polygon(o.vertices);
}

} // namespace

bool interiors_overlap(const Obstacle& a, const Obstacle& b)
{
  const bool a_poly = a.kind == ObstacleKind::Polygon;
  const bool b_poly = b.kind == ObstacleKind::Polygon;

  if (!a_poly && !b_poly)
  {
    // Collinear overlap of positive length.
    const Segment s{a.vertices[0], a.vertices[1]};
    const Segment t{b.vertices[0], b.vertices[1]};
    std::vector<double> ts;
    collect_crossings(s, t, ts);
    if (ts.size() < 2)
      return false;
    const auto [lo, hi] = std::minmax_element(ts.begin(), ts.end());
    return (*hi - *lo) * distance(s.a, s.b) > kEpsGeo;
  }

  if (a_poly && b_poly)
  {
    if (any_piece_at(a.vertices, b.vertices, Location::Inside)
      || any_piece_at(b.vertices, a.vertices, Location::Inside))
      return true;
    return locate(interior_point(a.vertices), b.vertices) == Location::Inside;
  }

  const Obstacle& seg = a_poly ? b : a;
  const Obstacle& poly = a_poly ? a : b;
  return any_piece_at(seg.vertices, poly.vertices, Location::Inside);
}

bool region_covered_by(std::span<const Point> inner, std::span<const Point> outer)
{
  if (any_piece_at(inner, outer, Location::Outside))
    return false;
  return !any_piece_at(outer, inner, Location::Inside);
}

ValidationReport validate_scenario(const Scenario& scenario)
{
  ValidationReport report;
  const auto& en = scenario.enclosure();
  const bool en_ok = is_simple_polygon(en);
  if (!en_ok)
    report.violations.push_back(
      {ScenarioProperty::EnclosureSimple, "enclosure is not a simple polygon"});

  const auto& obs = scenario.obstacles();
  std::vector<bool> ok(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i)
  {
    ok[i] = obstacle_well_formed(obs[i]);
    if (!ok[i])
      report.violations.push_back(
        {ScenarioProperty::ObstacleWellFormed,
         "obstacle " + std::to_string(i) + " is malformed"});
  }

  for (std::size_t i = 0; i < obs.size(); ++i)
    for (std::size_t j = i + 1; j < obs.size(); ++j)
      if (ok[i] && ok[j] && interiors_overlap(obs[i], obs[j]))
        report.violations.push_back(
          {ScenarioProperty::Overlap,
           "obstacles " + std::to_string(i) + " and " + std::to_string(j) + " overlap"});

  if (en_ok)
  {
    const auto en_edges = closed_edges(en);
    for (std::size_t i = 0; i < obs.size(); ++i)
    {
      if (!ok[i])
        continue;
      bool inside = std::all_of(obs[i].vertices.begin(), obs[i].vertices.end(),
        [&](Point p) { return locate(p, en) == Location::Inside; });
      if (inside)
      {
        for (const auto& e : obstacle_edges(obs[i]))
          for (const auto& f : en_edges)
            if (segments_touch(e, f))
              inside = false;
      }
      if (!inside)
        report.violations.push_back(
          {ScenarioProperty::Containment,
           "obstacle " + std::to_string(i) + " is not strictly inside the enclosure"});
    }

    double occupied = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i)
      if (ok[i])
        occupied += polygon_area(obs[i].vertices);
    const double limit = scenario.k_sc() * polygon_area(en);
    if (occupied > limit * (1.0 + 1e-12))
    {
      std::ostringstream msg;
      msg << "obstacle area " << occupied << " exceeds k_sc * enclosure area " << limit;
      report.violations.push_back({ScenarioProperty::Occupancy, msg.str()});
    }
  }

  if (!(scenario.k_sc() > 0.0 && scenario.k_sc() < 1.0))
    report.violations.push_back(
      {ScenarioProperty::Occupancy, "k_sc must lie in (0, 1)"});

  return report;
}

//==============================================================================
bool point_in_free_space(Point p, const Scenario& scenario)
{
  if (locate(p, scenario.enclosure()) != Location::Inside)
    return false;
  for (const auto& o : scenario.obstacles())
  {
    if (o.kind == ObstacleKind::Segment)
    {
      if (point_segment_distance(p, {o.vertices[0], o.vertices[1]}) <= kEpsGeo)
        return false;
    }
    else if (locate(p, o.vertices) != Location::Outside)
    {
      return false;
    }
  }
  return true;
}

bool segment_clear(Point p, Point q, const Scenario& scenario)
{
  const Segment pq{p, q};
  for (const auto& e : scenario.barrier_edges())
    if (segments_touch(pq, e))
      return false;
  return true;
}

double distance_to_barriers(Point p, const Scenario& scenario)
{
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : scenario.barrier_edges())
    best = std::min(best, point_segment_distance(p, e));
  return best;
}

bool disk_fits(Point p, double radius, const Scenario& scenario)
{
  return point_in_free_space(p, scenario) && distance_to_barriers(p, scenario) > radius;
}

} // namespace swarmfocus
