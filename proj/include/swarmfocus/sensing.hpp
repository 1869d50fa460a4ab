#ifndef SWARMFOCUS__SENSING_HPP
#define SWARMFOCUS__SENSING_HPP

#include <swarmfocus/geometry.hpp>

#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace swarmfocus {

inline constexpr double kPi = std::numbers::pi;

/// Wraps any angle into the half-open range [-pi, pi).
double wrap_angle(double angle);

class SensingError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Direction of `target` seen from `measurer` in the measurer's own frame.
/// Throws SensingError when the two positions coincide.
double bearing(Point measurer, double heading, Point target);

/// Angle between two bearing directions taken at the same agent.
double relative_bearing(double theta_a, double theta_b);

/// Angular width of a disk of radius `body_radius` seen from distance `range`.
double subtended_angle(double body_radius, double range);

//==============================================================================
struct TouchConfig
{
  int contact_points = 1;

  /// Quantization bound of the touch sensor.
  double resolution() const { return kPi / contact_points; }
};

/// Quantizes an impact direction to the nearest of the 2*N_T sector centres.
double contact_direction(double impact_angle, const TouchConfig& touch);

//==============================================================================
struct EventField
{
  Point source;
  double peak = 160.0;
  double decay = 15.0;
};

double event_intensity(Point p, const EventField& field);

struct NoiseModel
{
  double sigma = 0.0;
  double alpha = 3.0;
};

/// Signal-to-noise ratio of the multiplicative uniform model, 3/sigma^2.
double snr(const NoiseModel& noise);

/// 1 + alpha / SNR; exactly 1 when the model is noiseless.
double snr_correction(const NoiseModel& noise);

//==============================================================================
/// Per-agent random stream. Seeds are derived from (root, agent, purpose) by
/// a counter-based mix, so streams do not depend on creation order.
class AgentRng
{
public:
  AgentRng(std::uint64_t root_seed, std::uint64_t agent, std::uint64_t purpose = 0);
  explicit AgentRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t agent, std::uint64_t purpose);

/// f + u with u ~ U[-f*sigma, f*sigma].
double sense_event(Point p, const EventField& field, const NoiseModel& noise, AgentRng& rng);

} // namespace swarmfocus

#endif // SWARMFOCUS__SENSING_HPP
