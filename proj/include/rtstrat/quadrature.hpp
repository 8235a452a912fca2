// quadrature.hpp - Gauss-Legendre node sets on (0,1)

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace rtstrat {

/// Nodes mu_q in (0,1), ascending, with weights summing to one.
struct AngularQuadrature
{
  std::vector<double> mu;
  std::vector<double> weight;

  std::size_t size() const { return mu.size(); }

  template <typename F>
  double integrate(F&& f) const
  {
    double s = 0.0;
    for (std::size_t q = 0; q < mu.size(); ++q) s += weight[q] * f(mu[q]);
    return s;
  }

  static AngularQuadrature gauss_legendre(std::size_t n = 64);
};

namespace detail {

template <unsigned N>
AngularQuadrature map_gauss()
{
  using rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  AngularQuadrature q;
  // Boost stores the positive half of the (even, symmetric) rule.
  static_assert(N % 2 == 0);
  for (std::size_t k = x.size(); k-- > 0;) {
    q.mu.push_back(0.5 * (1.0 - x[k]));
    q.weight.push_back(0.5 * w[k]);
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    q.mu.push_back(0.5 * (1.0 + x[k]));
    q.weight.push_back(0.5 * w[k]);
  }
  return q;
}

} // namespace detail

inline AngularQuadrature AngularQuadrature::gauss_legendre(std::size_t n)
{
  switch (n) {
  case 2: return detail::map_gauss<2>();
  case 4: return detail::map_gauss<4>();
  case 8: return detail::map_gauss<8>();
  case 16: return detail::map_gauss<16>();
  case 32: return detail::map_gauss<32>();
  case 64: return detail::map_gauss<64>();
  default: throw std::invalid_argument("gauss_legendre: supported sizes are 2, 4, 8, 16, 32, 64");
  }
}

/// Gauss-Legendre points and weights on [a, b].
inline void gauss_on_interval(const AngularQuadrature& unit, double a, double b,
                              std::vector<double>& points, std::vector<double>& weights)
{
  for (std::size_t q = 0; q < unit.size(); ++q) {
    points.push_back(a + (b - a) * unit.mu[q]);
    weights.push_back((b - a) * unit.weight[q]);
  }
}

} // namespace rtstrat
