#ifndef SWARMFOCUS__GEOMETRY_HPP
#define SWARMFOCUS__GEOMETRY_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmfocus {

/// Tolerance used to break exact-arithmetic ties in the spatial predicates.
inline constexpr double kEpsGeo = 1e-9;

//==============================================================================
struct Point
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point unit_from_angle(double angle)
{
  return {std::cos(angle), std::sin(angle)};
}

using Polygon = std::vector<Point>;

//==============================================================================
struct Segment
{
  Point a;
  Point b;
};

double point_segment_distance(Point p, const Segment& s);
double segment_segment_distance(const Segment& s, const Segment& t);

/// True when the closed segments share at least one point, up to kEpsGeo.
bool segments_touch(const Segment& s, const Segment& t);

//==============================================================================
class GeometryError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Shoelace area. Two-vertex input is a segment and has area 0.
/// Throws GeometryError on a self-intersecting polygon.
double polygon_area(std::span<const Point> vertices);

/// Sum of edge lengths; for a two-vertex input, the segment length.
/// Throws GeometryError on degenerate (zero-length) segments.
double polygon_perimeter(std::span<const Point> vertices);

/// Pairwise O(n^2) edge test plus the repeated-vertex check.
bool is_simple_polygon(std::span<const Point> vertices);

double signed_area(std::span<const Point> vertices);

/// Point-in-polygon with boundary tolerance.
enum class Location { Inside, Boundary, Outside };
Location locate(Point p, std::span<const Point> polygon);

//==============================================================================
enum class ObstacleKind { Polygon, Segment };

struct Obstacle
{
  ObstacleKind kind = ObstacleKind::Polygon;
  std::vector<Point> vertices;
};

/// Enclosure plus obstacles. Polygons are stored counter-clockwise; the
/// barrier edge list is cached at construction.
class Scenario
{
public:
  Scenario() = default;
  Scenario(Polygon enclosure, std::vector<Obstacle> obstacles, double k_sc = 0.5);

  const Polygon& enclosure() const { return enclosure_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  double k_sc() const { return k_sc_; }

  /// Every enclosure and obstacle edge.
  const std::vector<Segment>& barrier_edges() const { return edges_; }

  Point min_corner() const { return min_; }
  Point max_corner() const { return max_; }

private:
  Polygon enclosure_;
  std::vector<Obstacle> obstacles_;
  double k_sc_ = 0.5;
  std::vector<Segment> edges_;
  Point min_;
  Point max_;
};

Scenario make_rectangle_scenario(
  Point origin, double width, double height,
  std::vector<Obstacle> obstacles = {}, double k_sc = 0.5);

Obstacle make_box_obstacle(Point lo, Point hi);

//==============================================================================
enum class ScenarioProperty
{
  EnclosureSimple,
  ObstacleWellFormed,
  Overlap,
  Containment,
  Occupancy,
};

std::string to_string(ScenarioProperty p);

struct ScenarioViolation
{
  ScenarioProperty property;
  std::string detail;
};

struct ValidationReport
{
  std::vector<ScenarioViolation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(ScenarioProperty p) const;
};

ValidationReport validate_scenario(const Scenario& scenario);

/// True when the open interiors of two obstacles intersect. A segment
/// obstacle overlaps a polygon when part of it runs through the polygon's
/// interior.
bool interiors_overlap(const Obstacle& a, const Obstacle& b);

/// True when the closed region of `inner` lies in the closure of `outer`.
bool region_covered_by(std::span<const Point> inner, std::span<const Point> outer);

//==============================================================================
/// Membership in int(EN) minus the closure of every obstacle.
bool point_in_free_space(Point p, const Scenario& scenario);

/// The open segment pq meets no barrier (enclosure or obstacle closure).
bool segment_clear(Point p, Point q, const Scenario& scenario);

/// Distance from p to the nearest barrier edge.
double distance_to_barriers(Point p, const Scenario& scenario);

/// The closed disk of radius r centred at p lies in the free space.
bool disk_fits(Point p, double radius, const Scenario& scenario);

} // namespace swarmfocus

#endif // SWARMFOCUS__GEOMETRY_HPP
