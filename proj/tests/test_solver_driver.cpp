#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "rtstrat/rtstrat.hpp"

using namespace rtstrat;

namespace {

struct GreyRun
{
  ExperimentSettings s;
  Problem<double> p;
  Solution<double> sol;
};

const GreyRun& default_grey()
{
  static const GreyRun run = [] {
    ExperimentSettings s;
    auto p = s.problem([](double) { return 0.5; });
    auto sol = fixed_point_solve(p, s.solver);
    return GreyRun{s, std::move(p), std::move(sol)};
  }();
  return run;
}

} // namespace

TEST(SolverDriver, ConvergesWithClosure)
{
  const auto& r = default_grey();
  EXPECT_EQ(r.sol.report.iterations, 16);
  EXPECT_LT(r.sol.report.final_sup_diff, 1e-5);
  EXPECT_TRUE(r.sol.report.flagged.empty());
  // Every node satisfies the balance the Newton step drives to zero.
  for (std::size_t i = 0; i < r.p.n_tau(); ++i) {
    const double rhs = kirchhoff_rhs(i, r.sol.field, r.p.spectrum);
    EXPECT_LT(std::abs(midpoint_balance(r.sol.T[i], rhs, r.p.spectrum).first), 1e-12) << i;
  }
  // The solution is the fixed point: one more transport sweep leaves T alone.
  const auto next = solve_profile(update_field(r.sol.field, r.sol.T, r.p, r.s.solver), r.sol.T, r.p, r.s.solver);
  for (std::size_t i = 0; i < r.p.n_tau(); ++i) EXPECT_NEAR(next.T[i], r.sol.T[i], 1e-6);
}

TEST(SolverDriver, TemperatureFallsAboveBoundaryLayer)
{
  const auto& r = default_grey();
  for (std::size_t i = 4; i < r.p.n_tau(); ++i) EXPECT_LT(r.sol.T[i], r.sol.T[i - 1]) << i;
}

TEST(SolverDriver, MomentConsistency)
{
  const auto& r = default_grey();
  const auto ang = AngularQuadrature::gauss_legendre(64);
  for (std::size_t j = 0; j < r.p.n_nu(); j += 7) {
    const auto src = cell_sources(j, r.sol.field, r.sol.T, r.p, r.s.solver.kernel);
    const auto up = [&](double mu) { return intensity_along_ray(mu, j, src, r.p, r.s.solver, r.p.depth.tau); };
    std::vector<double> mean(r.p.n_tau(), 0.0);
    for (std::size_t q = 0; q < ang.size(); ++q) {
      const auto a = up(ang.mu[q]);
      const auto b = up(-ang.mu[q]);
      for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += 0.5 * ang.weight[q] * (a[i] + b[i]);
    }
    for (std::size_t i = 1; i + 1 < r.p.n_tau(); ++i) {
      const double J = r.sol.field.j(j, i);
      if (J < 1e-200) continue;
      EXPECT_NEAR(mean[i] / J, 1.0, 1e-3) << "j=" << j << " i=" << i;
    }
  }
}

TEST(SolverDriver, EnergyIdentityResidual)
{
  const auto& r = default_grey();
  const auto e = energy_balance(r.sol, r.p, r.s.solver);
  EXPECT_GT(e.volume, 0.0);
  EXPECT_LT(e.residual(), 0.05);
}

TEST(SolverDriver, EnergyResidualShrinksWithFrequencyRefinement)
{
  // The residual floor comes from node versus midpoint frequency quadrature.
  const auto& r = default_grey();
  const double coarse = energy_identity_check(r.sol, r.p, r.s.solver);
  ExperimentSettings s;
  s.jmax = 800;
  const auto p = s.problem([](double) { return 0.5; });
  const auto sol = fixed_point_solve(p, s.solver);
  EXPECT_LT(energy_identity_check(sol, p, s.solver), 0.5 * coarse);
}

TEST(SolverDriver, Deterministic)
{
  const auto& r = default_grey();
  const auto again = fixed_point_solve(r.p, r.s.solver);
  ASSERT_EQ(again.T.size(), r.sol.T.size());
  EXPECT_EQ(std::memcmp(again.T.data(), r.sol.T.data(), r.sol.T.size() * sizeof(double)), 0);
  EXPECT_EQ(again.report.to_text(), r.sol.report.to_text());
}

TEST(SolverDriver, EarlyStop)
{
  const auto& r = default_grey();
  SolverConfig c = r.s.solver;
  c.driver.early_stop = 1e-4;
  const auto sol = fixed_point_solve(r.p, c);
  EXPECT_LT(sol.report.iterations, 16);
  EXPECT_LT(sol.report.final_sup_diff, 1e-4);
}

TEST(SolverDriver, RejectsBadConfig)
{
  const auto& r = default_grey();
  SolverConfig c = r.s.solver;
  c.driver.k_max = -1;
  EXPECT_THROW(fixed_point_solve(r.p, c), std::invalid_argument);
  c = r.s.solver;
  c.kernel.albedo_levels = {{0.2, 0.6}, {0.4, 0.5}};
  EXPECT_THROW(fixed_point_solve(r.p, c), std::invalid_argument);
}

TEST(SolverDriver, ReportText)
{
  const auto txt = default_grey().sol.report.to_text();
  EXPECT_NE(txt.find("iterations 16"), std::string::npos);
  EXPECT_EQ(txt.find("wall_seconds"), std::string::npos);
  EXPECT_NE(default_grey().sol.report.to_text(true).find("wall_seconds"), std::string::npos);
}
