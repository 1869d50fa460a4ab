#ifndef SWARMFOCUS__BOUNDS_HPP
#define SWARMFOCUS__BOUNDS_HPP

#include <swarmfocus/geometry.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmfocus {

// Bounds on the minimum number of agents covering an obstacle-free
// rectangle, in units of the visibility radius. Floors and ceilings snap
// arguments lying within kEpsGeo of an integer first.

double snap_integer(double x);
long snapped_floor(double x);
long snapped_ceil(double x);

/// 1 + floor(a)floor(b) + ceil(a)ceil(b - 1/2).
long g_upper(double a, double b);

/// ceil(a)(ceil(b + 1/2) + floor(b - 1)) + floor(a)ceil(b - 1) - floor(a + 1)floor(b).
long g_lower(double a, double b);

class BoundsDomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Exact count for thin strips, 1 + ceil(a - sqrt(4 - b^2)); 0 < b <= sqrt(3).
long g_exact(double a, double b);

/// Same quantity through the 1 + ceil(a - 2 sqrt(1 - (b/2)^2)) form.
long g_exact_alt(double a, double b);

/// Fractional-part / indicator forms used in the derivation.
struct ProofForms
{
  long upper = 0;
  long lower = 0;
};
ProofForms proof_form_check(double a, double b);

//==============================================================================
struct BoundsInput
{
  double width = 0.0;
  double height = 0.0;
  double r_v = 0.0;

  double rho_b() const { return width / r_v; }
  double rho_h() const { return height / r_v; }
  double rho_b3() const;
  double rho_h3() const;
};

enum class BoundsCase { General, ThinHorizontal, ThinVertical, Single };
std::string to_string(BoundsCase c);

struct BoundsReport
{
  BoundsCase kind = BoundsCase::General;
  std::optional<long> lower;
  std::optional<long> upper;
  std::optional<long> exact;
  long perimeter_correction = 0;

  /// exact when known, otherwise the lower bound.
  long lower_or_exact() const { return exact ? *exact : *lower; }
};

BoundsReport rect_bounds(double width, double height, double r_v);

/// floor(p / r_v).
long perimeter_correction(double perimeter, double r_v);

//==============================================================================
struct SegmentRect
{
  Point origin;
  double width = 0.0;
  double height = 0.0;
  bool included = true;

  Polygon polygon() const;
};

struct SegmentedScenario
{
  Scenario scenario;
  std::vector<SegmentRect> rectangles;
  double enclosure_sigma = 1.0;
  /// Per obstacle; missing entries fall back to `default_obstacle_sigma`.
  std::vector<double> obstacle_sigma;
  double default_obstacle_sigma = 0.5;
};

class SegmentationError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// True when the rectangle's interior lies inside the free space.
bool rectangle_in_free_space(const SegmentRect& rect, const Scenario& scenario);

/// Weighted sum of perimeter corrections and per-rectangle counts. Throws
/// SegmentationError when an included rectangle is not inside the free space.
long segmented_lower_bound(const SegmentedScenario& seg, double r_v);

} // namespace swarmfocus

#endif // SWARMFOCUS__BOUNDS_HPP
