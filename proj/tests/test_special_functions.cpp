#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rtstrat/dual.hpp"
#include "rtstrat/special_functions.hpp"

using namespace rtstrat;

namespace {

std::vector<double> log_points(std::size_t n, double lo, double hi)
{
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k)
    t[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
  return t;
}

} // namespace

TEST(Expint, KnownValues)
{
  EXPECT_NEAR(expint(1, 1.0), 0.219383934395520, 1e-12);
  EXPECT_NEAR(expint(2, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(expint(3, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(expint(5, 2.0), oracle::boost_expint(5, 2.0), 1e-12);
}

TEST(Expint, OracleAgreementOnLogGrid)
{
  for (double t : log_points(200, 1e-6, 17.0))
    for (int p = 1; p <= 5; ++p) {
      ASSERT_NEAR(expint(p, t), oracle::expint(p, t), 1e-8) << "p=" << p << " t=" << t;
      ASSERT_NEAR(expint(p, t), oracle::boost_expint(p, t), 1e-8) << "p=" << p << " t=" << t;
    }
}

TEST(Expint, TwoOraclesAgree)
{
  for (double t : log_points(40, 1e-6, 17.0))
    for (int p = 1; p <= 5; ++p) EXPECT_NEAR(oracle::expint(p, t), oracle::boost_expint(p, t), 1e-12);
}

TEST(Expint, RecurrenceResidual)
{
  for (double t : log_points(200, 1e-6, 17.0))
    for (int p = 2; p <= 5; ++p) {
      const double r = (p - 1) * expint(p, t) - (std::exp(-t) - t * expint(p - 1, t));
      ASSERT_LT(std::abs(r), 1e-12) << "p=" << p << " t=" << t;
    }
}

TEST(Expint, PositiveAndDecreasing)
{
  const auto t = log_points(300, 1e-6, 17.0);
  for (int p = 1; p <= 5; ++p)
    for (std::size_t k = 1; k < t.size(); ++k) {
      EXPECT_GT(expint(p, t[k]), 0.0);
      EXPECT_LT(expint(p, t[k]), expint(p, t[k - 1]));
    }
}

TEST(Expint, SmallArgumentCutoff)
{
  EXPECT_EQ(expint(1, 1e-11), 0.0);
  EXPECT_EQ(expint(1, 0.0), 0.0);
}

TEST(Expint, DomainErrors)
{
  EXPECT_THROW(expint(0, 1.0), std::domain_error);
  EXPECT_THROW(expint(6, 1.0), std::domain_error);
  EXPECT_THROW(expint(2, -0.1), std::domain_error);
  EXPECT_THROW(expint(2, 18.5), std::domain_error);
  EXPECT_NO_THROW(expint(2, 18.0));
}

TEST(Expint, DualDerivativeIsLowerOrder)
{
  for (double t : {0.01, 0.3, 1.0, 4.0, 12.0}) {
    for (int p = 2; p <= 5; ++p) {
      const Dual e = expint(p, Dual::variable(t));
      EXPECT_DOUBLE_EQ(e.val, expint(p, t));
      EXPECT_NEAR(e.der, -expint(p - 1, t), 1e-14);
    }
    const Dual e1 = expint(1, Dual::variable(t));
    EXPECT_NEAR(e1.der, -std::exp(-t) / t, 1e-12 * std::exp(-t) / t);
  }
}

TEST(Planck, ValuesAndFloors)
{
  EXPECT_NEAR(planck(1.0, 1.0), 1.0 / (std::exp(1.0) - 1.0), 1e-15);
  EXPECT_EQ(planck(1.0, 0.0), 0.0);
  EXPECT_EQ(planck(1.0, 1e-8), 0.0);
  EXPECT_NEAR(planck(1e-12, 0.5), 0.5 * 1e-24, 1e-30);
  EXPECT_EQ(planck(800.0, 1.0), 0.0);
}

TEST(Planck, DerivativeMatchesFiniteDifference)
{
  for (double nu : {0.05, 0.3, 1.0, 3.0, 10.0})
    for (double T : {0.05, 0.2, 0.5, 1.2}) {
      const double h = 1e-6 * T;
      const double fd = (planck(nu, T + h) - planck(nu, T - h)) / (2.0 * h);
      const double d = planck_dT(nu, T);
      if (d < 1e-200) continue;
      EXPECT_NEAR(fd / d, 1.0, 1e-5) << "nu=" << nu << " T=" << T;
    }
}

TEST(Planck, DualMatchesAnalyticDerivative)
{
  for (double nu : {0.1, 1.0, 5.0}) {
    const Dual b = planck(nu, Dual::variable(0.4));
    EXPECT_NEAR(b.der / planck_dT(nu, 0.4), 1.0, 1e-12);
  }
}
