#ifndef SWARMFOCUS__EXACT_SUM_HPP
#define SWARMFOCUS__EXACT_SUM_HPP

#include <vector>

namespace swarmfocus {

/// Exact floating-point accumulator (non-overlapping expansion, components in
/// increasing magnitude, zeros eliminated). Sign and equality tests on the
/// represented real number are exact.
class ExactSum
{
public:
  ExactSum() = default;

  ExactSum& add(double value);
  ExactSum& add(const ExactSum& other);
  ExactSum& subtract(const ExactSum& other);

  /// Adds `value` `count` times without rounding.
  ExactSum& add_repeated(double value, long count);

  /// -1, 0 or +1.
  int sign() const;

  /// Nearest-ish double; components are summed smallest first.
  double value() const;

  bool is_zero() const { return components_.empty(); }

  const std::vector<double>& components() const { return components_; }

private:
  std::vector<double> components_;
};

} // namespace swarmfocus

#endif // SWARMFOCUS__EXACT_SUM_HPP
