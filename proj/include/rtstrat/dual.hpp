// dual.hpp - Forward-mode dual number with a single derivative channel
//
// A Dual carries a value and the derivative of that value with respect to
// one seeded parameter. Arithmetic follows the exact dual rules; every
// comparison looks at the value only, so a Dual run takes the same branches
// as the equivalent double run.

#pragma once

#include <cmath>
#include <compare>
#include <ostream>

namespace rtstrat {

struct Dual
{
  double val = 0.0;
  double der = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double value, double derivative = 0.0) : val(value), der(derivative) {}

  /// Seeded variable: derivative channel set to one.
  static constexpr Dual variable(double value) { return {value, 1.0}; }

  constexpr Dual& operator+=(const Dual& o)
  {
    val += o.val;
    der += o.der;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o)
  {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o)
  {
    der = der * o.val + val * o.der;
    val *= o.val;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o)
  {
    der = (der * o.val - val * o.der) / (o.val * o.val);
    val /= o.val;
    return *this;
  }

  constexpr Dual operator-() const { return {-val, -der}; }
  constexpr Dual operator+() const { return *this; }

  friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }

  // Branches must follow the value only.
  friend constexpr bool operator==(const Dual& a, const Dual& b) { return a.val == b.val; }
  friend constexpr std::partial_ordering operator<=>(const Dual& a, const Dual& b)
  {
    return a.val <=> b.val;
  }

  friend std::ostream& operator<<(std::ostream& os, const Dual& d)
  {
    return os << d.val << " [d=" << d.der << "]";
  }
};

inline Dual exp(const Dual& x)
{
  const double e = std::exp(x.val);
  return {e, x.der * e};
}

inline Dual log(const Dual& x) { return {std::log(x.val), x.der / x.val}; }

inline Dual sqrt(const Dual& x)
{
  const double s = std::sqrt(x.val);
  return {s, s > 0.0 ? x.der / (2.0 * s) : 0.0};
}

inline Dual pow(const Dual& x, double p)
{
  if (p == 0.0) return {1.0, 0.0};
  return {std::pow(x.val, p), p * std::pow(x.val, p - 1.0) * x.der};
}

inline Dual pow(const Dual& x, const Dual& p)
{
  const double v = std::pow(x.val, p.val);
  double d = p.val * std::pow(x.val, p.val - 1.0) * x.der;
  if (x.val > 0.0) d += v * std::log(x.val) * p.der;
  return {v, d};
}

inline Dual abs(const Dual& x) { return x.val < 0.0 ? -x : x; }
inline Dual fabs(const Dual& x) { return abs(x); }

inline Dual max(const Dual& a, const Dual& b) { return a.val < b.val ? b : a; }
inline Dual min(const Dual& a, const Dual& b) { return b.val < a.val ? b : a; }

} // namespace rtstrat
