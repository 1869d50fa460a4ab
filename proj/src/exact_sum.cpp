#include <swarmfocus/exact_sum.hpp>

namespace swarmfocus {

namespace {

// Knuth's branch-free two-sum: a + b == s + e exactly.
inline void two_sum(double a, double b, double& s, double& e)
{
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

} // namespace

ExactSum& ExactSum::add(double value)
{
  if (value == 0.0)
    return *this;

  std::vector<double> out;
  out.reserve(components_.size() + 1);
  double q = value;
  for (double c : components_)
  {
    double s, e;
    two_sum(q, c, s, e);
    if (e != 0.0)
      out.push_back(e);
    q = s;
  }
  if (q != 0.0)
    out.push_back(q);
  components_ = std::move(out);
  return *this;
}

ExactSum& ExactSum::add(const ExactSum& other)
{
  for (double c : other.components_)
    add(c);
  return *this;
}

ExactSum& ExactSum::subtract(const ExactSum& other)
{
  for (double c : other.components_)
    add(-c);
  return *this;
}

ExactSum& ExactSum::add_repeated(double value, long count)
{
  if (count < 0)
  {
    value = -value;
    count = -count;
  }
  for (long i = 0; i < count; ++i)
    add(value);
  return *this;
}

int ExactSum::sign() const
{
  if (components_.empty())
    return 0;
  return components_.back() > 0.0 ? 1 : -1;
}

double ExactSum::value() const
{
  double total = 0.0;
  for (double c : components_)
    total += c;
  return total;
}

} // namespace swarmfocus
