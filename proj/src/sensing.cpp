#include <swarmfocus/sensing.hpp>

#include <cmath>
#include <limits>

namespace swarmfocus {

double wrap_angle(double angle)
{
  constexpr double two_pi = 2.0 * kPi;
  double w = angle - two_pi * std::floor((angle + kPi) / two_pi);
  // Rounding can land exactly on the excluded end point.
  if (w >= kPi)
    w -= two_pi;
  if (w < -kPi)
    w = -kPi;
  return w;
}

double bearing(Point measurer, double heading, Point target)
{
  const Point d = target - measurer;
  if (d.x == 0.0 && d.y == 0.0)
    throw SensingError("bearing: measurer and target coincide");
  return wrap_angle(std::atan2(d.y, d.x) - heading);
}

double relative_bearing(double theta_a, double theta_b)
{
  return wrap_angle(theta_a - theta_b);
}

double subtended_angle(double body_radius, double range)
{
  if (range <= body_radius)
    return kPi;
  return 2.0 * std::asin(body_radius / range);
}

double contact_direction(double impact_angle, const TouchConfig& touch)
{
  const double width = touch.resolution();
  const double sectors = 2.0 * touch.contact_points;
  const double offset = wrap_angle(impact_angle) + kPi;
  double index = std::floor(offset / width);
  if (index >= sectors)
    index = sectors - 1.0;
  return wrap_angle(-kPi + (index + 0.5) * width);
}

double event_intensity(Point p, const EventField& field)
{
  const Point d = p - field.source;
  return field.peak * std::exp(-dot(d, d) / (field.decay * field.decay));
}

double snr(const NoiseModel& noise)
{
  if (noise.sigma == 0.0)
    return std::numeric_limits<double>::infinity();
  return 3.0 / (noise.sigma * noise.sigma);
}

double snr_correction(const NoiseModel& noise)
{
  if (noise.sigma == 0.0)
    return 1.0;
  return 1.0 + noise.alpha / snr(noise);
}

//==============================================================================
namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t agent, std::uint64_t purpose)
{
  return splitmix64(splitmix64(splitmix64(root) ^ agent) ^ (purpose * 0xD1B54A32D192ED03ull));
}

AgentRng::AgentRng(std::uint64_t root_seed, std::uint64_t agent, std::uint64_t purpose)
: engine_(derive_seed(root_seed, agent, purpose))
{
}

double AgentRng::uniform()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double sense_event(Point p, const EventField& field, const NoiseModel& noise, AgentRng& rng)
{
  const double f = event_intensity(p, field);
  if (noise.sigma == 0.0)
    return f;
  const double u = (2.0 * rng.uniform() - 1.0) * f * noise.sigma;
  return f + u;
}

} // namespace swarmfocus
