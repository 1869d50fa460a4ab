#include <swarmfocus/bounds.hpp>

#include <algorithm>
#include <cmath>

namespace swarmfocus {

double snap_integer(double x)
{
  const double r = std::round(x);
  return std::abs(x - r) <= kEpsGeo ? r : x;
}

long snapped_floor(double x)
{
  return static_cast<long>(std::floor(snap_integer(x)));
}

long snapped_ceil(double x)
{
  return static_cast<long>(std::ceil(snap_integer(x)));
}

long g_upper(double a, double b)
{
  return 1 + snapped_floor(a) * snapped_floor(b) + snapped_ceil(a) * snapped_ceil(b - 0.5);
}

long g_lower(double a, double b)
{
  return snapped_ceil(a) * (snapped_ceil(b + 0.5) + snapped_floor(b - 1.0))
    + snapped_floor(a) * snapped_ceil(b - 1.0)
    - snapped_floor(a + 1.0) * snapped_floor(b);
}

namespace {

void check_thin_domain(double b)
{
  if (!(b > 0.0) || snap_integer(b * b) > 3.0)
    throw BoundsDomainError("g_exact: second argument must lie in (0, sqrt(3)]");
}

} // namespace

long g_exact(double a, double b)
{
  check_thin_domain(b);
  return 1 + snapped_ceil(a - std::sqrt(std::max(0.0, 4.0 - b * b)));
}

long g_exact_alt(double a, double b)
{
  check_thin_domain(b);
  const double half = b / 2.0;
  return 1 + snapped_ceil(a - 2.0 * std::sqrt(std::max(0.0, 1.0 - half * half)));
}

ProofForms proof_form_check(double a, double b)
{
  const double sa = snap_integer(a);
  const double sb = snap_integer(b);
  const long fa = static_cast<long>(std::floor(sa));
  const long ca = static_cast<long>(std::ceil(sa));
  const long fb = static_cast<long>(std::floor(sb));
  const double frac_a = sa - std::floor(sa);
  const double frac_b = sb - std::floor(sb);
  const long above_half = frac_b > 0.5 ? 1 : 0;
  const long a_integral = frac_a == 0.0 ? 1 : 0;
  const long b_integral = frac_b == 0.0 ? 1 : 0;

  ProofForms out;
  out.upper = 1 + (fa + ca) * fb + ca * above_half;
  out.lower = (fa + ca) * fb + ca * above_half - fb * a_integral - fa * b_integral;
  return out;
}

//==============================================================================
double BoundsInput::rho_b3() const { return rho_b() / std::sqrt(3.0); }
double BoundsInput::rho_h3() const { return rho_h() / std::sqrt(3.0); }

std::string to_string(BoundsCase c)
{
  switch (c)
  {
    case BoundsCase::General: return "general";
    case BoundsCase::ThinHorizontal: return "thin-horizontal";
    case BoundsCase::ThinVertical: return "thin-vertical";
    case BoundsCase::Single: return "single";
  }
  return "unknown";
}

long perimeter_correction(double perimeter, double r_v)
{
  if (!(perimeter > 0.0) || !(r_v > 0.0))
    throw std::invalid_argument("perimeter_correction: inputs must be positive");
  return snapped_floor(perimeter / r_v);
}

BoundsReport rect_bounds(double width, double height, double r_v)
{
  if (!(width > 0.0) || !(height > 0.0) || !(r_v > 0.0))
    throw std::invalid_argument("rect_bounds: inputs must be positive");

  const BoundsInput in{width, height, r_v};
  const double rb = snap_integer(in.rho_b());
  const double rh = snap_integer(in.rho_h());
  const double rb3 = snap_integer(in.rho_b3());
  const double rh3 = snap_integer(in.rho_h3());

  BoundsReport out;
  out.perimeter_correction = perimeter_correction(2.0 * (width + height), r_v);

  if (rb <= 1.0 && rh <= 1.0)
  {
    out.kind = BoundsCase::Single;
    out.exact = 1;
    return out;
  }

  if (rb3 > 1.0 && rh3 > 1.0)
  {
    out.kind = BoundsCase::General;
    out.upper = std::min(g_upper(rb, rh3), g_upper(rh, rb3));
    out.lower = std::min(g_lower(rb, rh3), g_lower(rh, rb3));
    return out;
  }

  const bool horizontal = rh3 <= 1.0 && rb > 1.0;
  const bool vertical = rb3 <= 1.0 && rh > 1.0;
  if (horizontal && vertical)
  {
    const long h = g_exact(rb, rh);
    const long v = g_exact(rh, rb);
    out.kind = (h <= v) ? BoundsCase::ThinHorizontal : BoundsCase::ThinVertical;
    out.exact = std::min(h, v);
  }
  else if (horizontal)
  {
    out.kind = BoundsCase::ThinHorizontal;
    out.exact = g_exact(rb, rh);
  }
  else
  {
    out.kind = BoundsCase::ThinVertical;
    out.exact = g_exact(rh, rb);
  }
  return out;
}

//==============================================================================
Polygon SegmentRect::polygon() const
{
  return {
    origin,
    {origin.x + width, origin.y},
    {origin.x + width, origin.y + height},
    {origin.x, origin.y + height}};
}

bool rectangle_in_free_space(const SegmentRect& rect, const Scenario& scenario)
{
  const Polygon poly = rect.polygon();
  if (!region_covered_by(poly, scenario.enclosure()))
    return false;
  const Obstacle as_obstacle{ObstacleKind::Polygon, poly};
  for (const auto& o : scenario.obstacles())
    if (interiors_overlap(as_obstacle, o))
      return false;
  return true;
}

long segmented_lower_bound(const SegmentedScenario& seg, double r_v)
{
  double total = 0.0;
  if (seg.enclosure_sigma > 0.0)
    total += seg.enclosure_sigma
      * static_cast<double>(perimeter_correction(polygon_perimeter(seg.scenario.enclosure()), r_v));

  const auto& obstacles = seg.scenario.obstacles();
  for (std::size_t k = 0; k < obstacles.size(); ++k)
  {
    const double sigma = k < seg.obstacle_sigma.size()
      ? seg.obstacle_sigma[k] : seg.default_obstacle_sigma;
    if (sigma > 0.0)
      total += sigma
        * static_cast<double>(perimeter_correction(polygon_perimeter(obstacles[k].vertices), r_v));
  }

  for (std::size_t k = 0; k < seg.rectangles.size(); ++k)
  {
    const auto& rect = seg.rectangles[k];
    if (!rect.included)
      continue;
    if (!rectangle_in_free_space(rect, seg.scenario))
      throw SegmentationError(
        "segmented_lower_bound: rectangle " + std::to_string(k)
        + " is marked included but is not inside the free space");
    total += static_cast<double>(rect_bounds(rect.width, rect.height, r_v).lower_or_exact());
  }

  return static_cast<long>(std::floor(snap_integer(total)));
}

} // namespace swarmfocus
