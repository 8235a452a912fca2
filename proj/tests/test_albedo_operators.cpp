#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "rtstrat/albedo_operators.hpp"

using namespace rtstrat;

TEST(Quadrature, GaussLegendreOnUnitInterval)
{
  for (std::size_t n : {2u, 4u, 8u, 16u, 32u, 64u}) {
    const auto q = AngularQuadrature::gauss_legendre(n);
    ASSERT_EQ(q.size(), n);
    EXPECT_NEAR(std::accumulate(q.weight.begin(), q.weight.end(), 0.0), 1.0, 1e-14);
    for (std::size_t k = 1; k < n; ++k) EXPECT_GT(q.mu[k], q.mu[k - 1]);
    EXPECT_GT(q.mu.front(), 0.0);
    EXPECT_LT(q.mu.back(), 1.0);
    // Exact for polynomials of degree 2n - 1.
    const int deg = static_cast<int>(2 * n - 1);
    EXPECT_NEAR(q.integrate([deg](double x) { return std::pow(x, deg); }), 1.0 / (deg + 1), 1e-14);
  }
  EXPECT_THROW(AngularQuadrature::gauss_legendre(5), std::invalid_argument);
}

TEST(AlbedoOperators, ProvidedOperatorsAreNonAccretive)
{
  const auto quad = AngularQuadrature::gauss_legendre(32);
  for (const auto& op : {specular_diffuse(0.5, 1.0, quad), specular_diffuse(0.0, 2.0, quad),
                         thermal_accommodation(0.5, 0.06, 0.7), thermal_accommodation(1.0, 0.06, 0.7),
                         identity_albedo()}) {
    const auto rep = check_non_accretive(op, quad, 10000);
    EXPECT_EQ(rep.violations, 0u) << op.name();
    EXPECT_GE(rep.min_D, -1e-12) << op.name();
  }
}

TEST(AlbedoOperators, ThermalAccommodationIsPointwiseContraction)
{
  const auto quad = AngularQuadrature::gauss_legendre(16);
  EXPECT_EQ(check_non_accretive(thermal_accommodation(0.3, 0.06, 1.0), quad, 2000).pointwise_violations, 0u);
}

TEST(AlbedoOperators, AccretiveCounterexampleDetected)
{
  const auto quad = AngularQuadrature::gauss_legendre(32);
  const AlbedoOperator gain("gain", [](const AngularFunction& f) {
    AngularFunction out(f);
    for (auto& v : out) v *= 1.5;
    return out;
  }, false);
  const auto rep = check_non_accretive(gain, quad, 10000);
  EXPECT_GT(rep.violations, 0u);
  EXPECT_LT(rep.min_D, -1e-12);
}

TEST(AlbedoOperators, Definitions)
{
  const auto quad = AngularQuadrature::gauss_legendre(8);
  AngularFunction f(quad.size());
  for (std::size_t q = 0; q < f.size(); ++q) f[q] = quad.mu[q];
  // int_0^1 mu * mu dmu = 1/3.
  const auto g = specular_diffuse(0.25, 1.0, quad)(f);
  for (std::size_t q = 0; q < f.size(); ++q) EXPECT_NEAR(g[q], 0.25 * f[q] + 0.75 / 3.0, 1e-14);
  const auto h = thermal_accommodation(0.4, 0.5, 1.0)(f);
  for (std::size_t q = 0; q < f.size(); ++q) EXPECT_NEAR(h[q], 0.4 * f[q] + 0.6 * planck(1.0, 0.5), 1e-14);
  EXPECT_TRUE(thermal_accommodation(0.4, 0.5, 1.0).frequency_dependent());
  EXPECT_THROW(specular_diffuse(1.2, 1.0, quad), std::invalid_argument);
  EXPECT_THROW(specular_diffuse(0.5, 0.0, quad), std::invalid_argument);
  EXPECT_THROW(thermal_accommodation(-0.1, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(specular_diffuse(0.5, 1.0, quad)(AngularFunction(3, 1.0)), std::invalid_argument);
}

TEST(AlbedoOperators, SeededSamplingIsReproducible)
{
  const auto quad = AngularQuadrature::gauss_legendre(16);
  const auto op = specular_diffuse(0.5, 1.0, quad);
  const auto a = check_non_accretive(op, quad, 500, 7);
  const auto b = check_non_accretive(op, quad, 500, 7);
  EXPECT_EQ(a.min_D, b.min_D);
}
