#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rtstrat/rtstrat.hpp"

using namespace rtstrat;

namespace {

SolverConfig quiet_config()
{
  SolverConfig c;
  c.boundary.earth_albedo = 0.0;
  c.sun.scale = 0.0;
  return c;
}

Problem<double> small_problem(std::size_t n_tau, std::size_t jmax)
{
  auto g = build_wavelength_uniform(jmax, 0.1, 6.0);
  // Spread of absorption levels so several kernel scales are exercised.
  for (std::size_t j = 0; j < g.size(); ++j) g.kappa[j] = 0.3 + 0.9 * static_cast<double>(j) / jmax;
  return make_problem(std::move(g), build_grid(n_tau, 12.0));
}

std::vector<double> wavy_profile(std::size_t n)
{
  std::vector<double> T(n);
  for (std::size_t i = 0; i < n; ++i) T[i] = 0.06 + 0.02 * std::sin(0.9 * static_cast<double>(i));
  return T;
}

} // namespace

TEST(TransportKernel, ColumnSumIdentity)
{
  auto p = make_problem(kappa_grey<double>(build_wavelength_uniform(8, 0.2, 4.0), 0.5), build_grid(60, 12.0));
  const auto cfg = quiet_config();
  const double T0 = 0.3;
  const std::vector<double> T(p.n_tau(), T0);
  const auto f = update_field(RadiationField<double>::zeros(p.n_nu(), p.n_tau()), T, p, cfg);
  for (std::size_t j = 0; j < p.n_nu(); ++j)
    for (std::size_t i = 0; i < p.n_tau(); ++i) {
      const double tau = p.depth.tau[i];
      const double want = planck(p.spectrum.nu[j], T0) *
                          (1.0 - 0.5 * expint(2, 0.5 * tau) - 0.5 * expint(2, 0.5 * (p.depth.Z - tau)));
      ASSERT_NEAR(f.j(j, i), want, 1e-6 * planck(p.spectrum.nu[j], T0)) << j << "," << i;
    }
}

TEST(TransportKernel, BruteForceOracle8x4)
{
  for (double alpha_bottom : {1.0, 0.4}) {
    auto p = small_problem(8, 4);
    SolverConfig cfg;
    cfg.boundary.earth_albedo = 0.0;
    cfg.boundary.alpha_bottom = alpha_bottom;
    const auto T = wavy_profile(p.n_tau());
    const auto f = update_field(RadiationField<double>::zeros(p.n_nu(), p.n_tau()), T, p, cfg);
    for (std::size_t j = 0; j < p.n_nu(); ++j)
      for (std::size_t i = 0; i < p.n_tau(); ++i) {
        const auto m = oracle::brute_force_moments(p, cfg, T, j, i);
        EXPECT_NEAR(f.j(j, i) / m.J, 1.0, 1e-4) << "J j=" << j << " i=" << i;
        EXPECT_NEAR(f.s2(j, i) / m.S2, 1.0, 1e-4) << "S2 j=" << j << " i=" << i;
      }
  }
}

TEST(TransportKernel, SampledConvergesToExact)
{
  auto p = small_problem(12, 6);
  SolverConfig exact;
  exact.boundary.earth_albedo = 0.3;
  const auto T = wavy_profile(p.n_tau());
  const auto zero = RadiationField<double>::zeros(p.n_nu(), p.n_tau());
  const auto a = update_field(zero, T, p, exact);
  auto worst = [&](double dt) {
    SolverConfig sampled = exact;
    sampled.kernel.quadrature = KernelQuadrature::sampled;
    sampled.kernel.dt_max = dt;
    const auto b = update_field(zero, T, p, sampled);
    double w = 0.0;
    for (std::size_t k = 0; k < a.J.size(); ++k) w = std::max(w, std::abs(b.J[k] / a.J[k] - 1.0));
    return w;
  };
  const double e1 = worst(0.005);
  const double e2 = worst(0.00125);
  EXPECT_LT(e1, 0.05);
  EXPECT_LT(e2, 0.5 * e1);
}

TEST(TransportKernel, NodeTablesMatchFlatTables)
{
  auto p = small_problem(15, 5);
  auto q = p;
  q.depth = grid_from_nodes(p.depth.tau, p.depth.altitude);
  SolverConfig cfg;
  cfg.boundary.earth_albedo = 0.3;
  const auto T = wavy_profile(p.n_tau());
  const auto zero = RadiationField<double>::zeros(p.n_nu(), p.n_tau());
  const auto a = update_field(zero, T, p, cfg);
  const auto b = update_field(zero, T, q, cfg);
  for (std::size_t k = 0; k < a.J.size(); ++k) {
    EXPECT_NEAR(a.J[k], b.J[k], 1e-13 * std::abs(a.J[k]) + 1e-300);
    EXPECT_NEAR(a.S2[k], b.S2[k], 1e-13 * std::abs(a.S2[k]) + 1e-300);
  }
}

TEST(TransportKernel, ReflectionOnlyAddsRadiation)
{
  auto p = small_problem(10, 4);
  SolverConfig dark, bright;
  dark.boundary.earth_albedo = 0.0;
  bright.boundary.earth_albedo = 0.3;
  const auto T = wavy_profile(p.n_tau());
  const auto zero = RadiationField<double>::zeros(p.n_nu(), p.n_tau());
  const auto a = update_field(zero, T, p, dark);
  const auto b = update_field(zero, T, p, bright);
  for (std::size_t k = 0; k < a.J.size(); ++k) EXPECT_GT(b.J[k], a.J[k]);
}

TEST(TransportKernel, DualValuesMatchDouble)
{
  const auto p = small_problem(9, 4);
  Problem<Dual> pd{with_kappa<Dual>(p.spectrum, [&](double nu) {
                     for (std::size_t j = 0; j < p.n_nu(); ++j)
                       if (p.spectrum.nu[j] == nu) return Dual::variable(p.spectrum.kappa[j]);
                     return Dual{0.0};
                   }),
                   p.depth, p.scattering};
  SolverConfig cfg;
  const auto T = wavy_profile(p.n_tau());
  std::vector<Dual> Td(T.begin(), T.end());
  const auto a = update_field(RadiationField<double>::zeros(p.n_nu(), p.n_tau()), T, p, cfg);
  const auto b = update_field(RadiationField<Dual>::zeros(p.n_nu(), p.n_tau()), Td, pd, cfg);
  for (std::size_t k = 0; k < a.J.size(); ++k) EXPECT_NEAR(b.J[k].val, a.J[k], 1e-15 * a.J[k] + 1e-300);
}

TEST(TransportKernel, RayMarchMatchesPointwise)
{
  const auto p = small_problem(10, 4);
  SolverConfig cfg;
  const auto T = wavy_profile(p.n_tau());
  const auto field = update_field(RadiationField<double>::zeros(p.n_nu(), p.n_tau()), T, p, cfg);
  const std::vector<double> taus{0.0, 0.013, 0.2, 0.5, 0.5, 0.91, p.depth.Z};
  for (std::size_t j = 0; j < p.n_nu(); ++j) {
    const auto src = cell_sources(j, field, T, p, cfg.kernel);
    for (double mu : {-0.9, -0.2, 0.05, 0.7}) {
      const auto ray = intensity_along_ray(mu, j, src, p, cfg, taus);
      for (std::size_t k = 0; k < taus.size(); ++k)
        EXPECT_NEAR(ray[k], reconstruct_intensity(taus[k], mu, j, src, p, cfg), 1e-12 * std::abs(ray[k]) + 1e-300);
    }
  }
}

TEST(TransportKernel, DomainChecks)
{
  auto p = make_problem(kappa_grey<double>(build_wavelength_uniform(4, 0.2, 4.0), 10.0), build_grid(8, 12.0));
  SolverConfig cfg;
  const std::vector<double> T(p.n_tau(), 0.1);
  EXPECT_THROW(update_field(RadiationField<double>::zeros(p.n_nu(), p.n_tau()), T, p, cfg), std::domain_error);
  p.spectrum.kappa.assign(p.n_nu(), 0.5);
  EXPECT_THROW(update_field(RadiationField<double>::zeros(p.n_nu(), p.n_tau() + 1), T, p, cfg),
               std::invalid_argument);
  EXPECT_THROW(reconstruct_intensity(0.1, 0.0, 0, RadiationField<double>::zeros(p.n_nu(), p.n_tau()), T, p, cfg),
               std::invalid_argument);
}
