// special_functions.hpp - Exponential integrals, scaled Planck function, solar spectrum
//
// All quantities are dimensionless: frequencies in units of 1e14 Hz and
// temperatures in Kelvin divided by 4780. Physical constants are absorbed by
// that scaling, so the Planck function reads b(nu,T) = nu^3/(exp(nu/T)-1) and
// the Stefan-Boltzmann identity becomes int b dnu = pi^4 T^4 / 15.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rtstrat/scalar.hpp"

namespace rtstrat {

inline constexpr double euler_gamma = 0.577215664901533;

/// Below this argument E_1 is returned as zero (its integral over the
/// vanishing neighbourhood is negligible).
inline constexpr double expint_small_arg = 1e-10;

/// Largest argument accepted by the exponential integrals.
inline constexpr double expint_max_arg = 18.0;

/// Temperature and frequency floors of the Planck function.
inline constexpr double planck_min_temperature = 1e-7;
inline constexpr double planck_min_frequency = 1e-10;

/// Scaled Stefan-Boltzmann constant: int_0^inf b(nu,T) dnu = sigma_bar T^4.
inline constexpr double stefan_boltzmann_scaled = std::numbers::pi * std::numbers::pi *
                                                  std::numbers::pi * std::numbers::pi / 15.0;

namespace detail {

inline void check_expint_domain(int p, double t, int max_order)
{
  if (p < 1 || p > max_order)
    throw std::domain_error("expint: order " + std::to_string(p) + " outside 1.." +
                            std::to_string(max_order));
  if (!(t >= 0.0) || t > expint_max_arg)
    throw std::domain_error("expint: argument " + std::to_string(t) + " outside [0, " +
                            std::to_string(expint_max_arg) + "]");
}

// Power series for E_1. The original term count 9+4(t-1) is kept as a floor
// and the sum continues until the terms stop contributing.
inline double expint_e1_series(double t)
{
  if (t < expint_small_arg) return 0.0;
  const int legacy_terms = std::max(9, static_cast<int>(9 + (t - 1.0) * 4));
  double term = t;
  double sum = -euler_gamma - std::log(t) + term;
  for (int k = 2; k < 400; ++k) {
    term *= -t * (k - 1) / (static_cast<double>(k) * k);
    sum += term;
    if (k >= legacy_terms && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Modified Lentz evaluation of the continued fraction for E_p, t > 1.
inline double expint_continued_fraction(int p, double t)
{
  constexpr double tiny = 1e-300;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double b = t + p;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * (p - 1 + i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) <= eps) break;
  }
  return h * std::exp(-t);
}

/// E_p(t) for p in 0..6 in double precision; E_0(t) = exp(-t)/t.
inline double expint_value(int p, double t)
{
  if (p == 0) return t > 0.0 ? std::exp(-t) / t : std::numeric_limits<double>::infinity();
  if (t > 1.0) return expint_continued_fraction(p, t);
  const double decay = std::exp(-t);
  double e = expint_e1_series(t);
  for (int q = 2; q <= p; ++q) e = (decay - t * e) / (q - 1);
  return e;
}

/// E_p for p in 1..6 lifted to any Scalar; dE_p/dt = -E_{p-1}.
template <Scalar S>
S expint_any(int p, const S& t)
{
  const double v = value_of(t);
  check_expint_domain(p, v, 6);
  const double e = expint_value(p, v);
  if constexpr (std::same_as<S, double>) {
    return e;
  } else {
    double de = 0.0;
    if (p == 1) {
      de = v < expint_small_arg ? 0.0 : -expint_value(0, v);
    } else {
      de = (p == 2 && v < expint_small_arg) ? 0.0 : -expint_value(p - 1, v);
    }
    return chain(t, e, de);
  }
}

} // namespace detail

/// Exponential integral E_p(t) = int_0^1 exp(-t/mu) mu^(p-2) dmu, p in 1..5,
/// 0 <= t <= 18. E_1 is set to zero for t < 1e-10.
template <Scalar S>
S expint(int p, const S& t)
{
  detail::check_expint_domain(p, value_of(t), 5);
  return detail::expint_any(p, t);
}

/// Scaled Planck function b(nu,T) = nu^3 / (exp(nu/T) - 1).
template <Scalar S>
S planck(double nu, const S& T)
{
  using std::exp;
  if (value_of(T) < planck_min_temperature) return S{0.0};
  if (nu < planck_min_frequency) return T * (nu * nu);
  if (nu / value_of(T) > 700.0) return S{0.0};
  return (nu * nu * nu) / (exp(nu / T) - 1.0);
}

/// Temperature derivative of the scaled Planck function.
template <Scalar S>
S planck_dT(double nu, const S& T)
{
  using std::exp;
  if (value_of(T) < planck_min_temperature) return S{0.0};
  if (nu < planck_min_frequency) return S{nu * nu};
  if (nu / value_of(T) > 350.0) return S{0.0};
  const S a = exp(nu / T);
  const S q = (nu * nu) / (a - 1.0) / T;
  return a * q * q;
}

/// Solar source spectrum Q0(nu) = scale * nu^3 / (exp(nu/T_sun) - 1).
struct SolarSource
{
  /// Sun temperature, 5780 K in scaled units.
  double temperature = 1.209;
  /// Default amplitude; alternate_scale is the rounded normalization 5.66e-5.
  double scale = 2.03e-5 * (2.0 * std::numbers::sqrt2) / 0.7;

  static constexpr double alternate_scale = 5.66e-5;

  double operator()(double nu) const { return scale * planck(nu, temperature); }
};

} // namespace rtstrat
