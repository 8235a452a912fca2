// scalar.hpp - Scalar concept shared by the plain and the differentiated pipeline

#pragma once

#include <concepts>
#include <type_traits>

#include "rtstrat/dual.hpp"

namespace rtstrat {

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Dual>;

inline constexpr double value_of(double x) { return x; }
inline constexpr double value_of(const Dual& x) { return x.val; }

inline constexpr double derivative_of(double) { return 0.0; }
inline constexpr double derivative_of(const Dual& x) { return x.der; }

/// Lift f(x) with known f and f' at value_of(x) to the scalar type of x.
template <Scalar S>
constexpr S chain(const S& x, double f, double df)
{
  if constexpr (std::same_as<S, double>) {
    (void)x;
    (void)df;
    return f;
  } else {
    return S{f, df * x.der};
  }
}

template <Scalar S>
constexpr S max_value(const S& a, const S& b)
{
  return value_of(a) < value_of(b) ? b : a;
}

} // namespace rtstrat
