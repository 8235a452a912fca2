// sensitivity.hpp - Temperature sensitivity to an absorption perturbation
//
// kappa_nu(eps) = base + eps 1{nu1 < nu < nu2}. The whole solve runs on dual
// numbers seeded with d eps = 1, so T'(tau) = dT/d eps at eps = 0 comes out of
// the same code path as T itself.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rtstrat/atmosphere.hpp"
#include "rtstrat/config.hpp"
#include "rtstrat/dual.hpp"
#include "rtstrat/quadrature.hpp"
#include "rtstrat/solver_driver.hpp"
#include "rtstrat/spectral_grid.hpp"

namespace rtstrat {

/// Where the band perturbation lives.
struct BandPerturbation
{
  double base = 0.5;
  double nu_lo = 0.6;
  double nu_hi = 0.8;
};

struct SensitivityResult
{
  std::vector<double> T;
  std::vector<double> dT;
  SolveReport report;
};

inline Problem<Dual> dual_problem(const SpectralGrid<double>& nodes, const BandPerturbation& band,
                                  const OpticalGrid& depth, const ScatteringProfile& scattering)
{
  auto spectrum =
      kappa_banded<Dual>(nodes, Dual{band.base}, Dual::variable(0.0), band.nu_lo, band.nu_hi);
  return {std::move(spectrum), depth, scattering};
}

inline Problem<double> shifted_problem(const SpectralGrid<double>& nodes,
                                       const BandPerturbation& band, double eps,
                                       const OpticalGrid& depth,
                                       const ScatteringProfile& scattering)
{
  auto spectrum = kappa_banded<double>(nodes, band.base, eps, band.nu_lo, band.nu_hi);
  return {std::move(spectrum), depth, scattering};
}

/// T and dT/d eps at eps = 0.
inline SensitivityResult sensitivity_run(const SpectralGrid<double>& nodes,
                                         const BandPerturbation& band, const OpticalGrid& depth,
                                         const ScatteringProfile& scattering,
                                         const SolverConfig& cfg)
{
  const auto problem = dual_problem(nodes, band, depth, scattering);
  auto sol = fixed_point_solve(problem, cfg);
  SensitivityResult out;
  out.report = std::move(sol.report);
  for (const auto& t : sol.T) {
    out.T.push_back(t.val);
    out.dT.push_back(t.der);
  }
  return out;
}

struct FiniteDifferenceCheck
{
  std::vector<double> dual;
  std::vector<double> central;
  /// max |dual - central| / |dual| over nodes with |dual| > threshold.
  double max_relative = 0.0;
  std::size_t compared = 0;
};

/// Central difference (T(h) - T(-h)) / 2h against the dual derivative.
inline FiniteDifferenceCheck finite_difference_check(const SpectralGrid<double>& nodes,
                                                     const BandPerturbation& band, double h,
                                                     const OpticalGrid& depth,
                                                     const ScatteringProfile& scattering,
                                                     const SolverConfig& cfg,
                                                     double threshold = 1e-6)
{
  FiniteDifferenceCheck out;
  out.dual = sensitivity_run(nodes, band, depth, scattering, cfg).dT;
  const auto plus = fixed_point_solve(shifted_problem(nodes, band, h, depth, scattering), cfg).T;
  const auto minus = fixed_point_solve(shifted_problem(nodes, band, -h, depth, scattering), cfg).T;
  out.central.resize(plus.size());
  for (std::size_t i = 0; i < plus.size(); ++i) {
    out.central[i] = (plus[i] - minus[i]) / (2.0 * h);
    if (std::abs(out.dual[i]) > threshold) {
      ++out.compared;
      out.max_relative = std::max(out.max_relative,
                                  std::abs(out.dual[i] - out.central[i]) / std::abs(out.dual[i]));
    }
  }
  return out;
}

/// J_nu(tau) - b_nu(T(tau)) and its sign, [frequency][depth].
struct SignMap
{
  std::size_t n_nu = 0;
  std::size_t n_tau = 0;
  std::vector<double> value;
  std::vector<int> sign;

  double at(std::size_t j, std::size_t i) const { return value[j * n_tau + i]; }
  int sign_at(std::size_t j, std::size_t i) const { return sign[j * n_tau + i]; }
};

inline SignMap sign_criterion(const RadiationField<double>& field, const TemperatureProfile<double>& T,
                              const SpectralGrid<double>& grid)
{
  SignMap m{field.n_nu, field.n_tau, std::vector<double>(field.J.size()),
            std::vector<int>(field.J.size())};
  for (std::size_t j = 0; j < field.n_nu; ++j)
    for (std::size_t i = 0; i < field.n_tau; ++i) {
      const double d = field.j(j, i) - planck(grid.nu[j], T[i]);
      m.value[j * field.n_tau + i] = d;
      m.sign[j * field.n_tau + i] = (d > 0.0) - (d < 0.0);
    }
  return m;
}

struct SwitchPoint
{
  double altitude = 0.0;
  double nu = 0.0;
};

/// Sign changes of the criterion located by linear interpolation between
/// neighbouring nodes. `along_nu` scans frequency at fixed depth, otherwise
/// depth at fixed frequency. Node 0 (the ground) is skipped as in the
/// temperature files.
inline std::vector<SwitchPoint> switch_points(const SignMap& m, const SpectralGrid<double>& grid,
                                              const OpticalGrid& depth, bool along_nu,
                                              double max_altitude = 6.0,
                                              double max_nu = 1e300)
{
  std::vector<SwitchPoint> pts;
  auto flip = [](double a, double b) { return (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0); };
  if (along_nu) {
    for (std::size_t i = 1; i < m.n_tau; ++i) {
      const double z = depth.altitude[i];
      if (z > max_altitude) continue;
      for (std::size_t j = 1; j < m.n_nu; ++j) {
        const double a = m.at(j - 1, i), b = m.at(j, i);
        if (!flip(a, b)) continue;
        const double nu = grid.nu[j - 1] + (grid.nu[j] - grid.nu[j - 1]) * a / (a - b);
        if (nu <= max_nu) pts.push_back({z, nu});
      }
    }
  } else {
    for (std::size_t j = 0; j < m.n_nu; ++j) {
      if (grid.nu[j] > max_nu) continue;
      for (std::size_t i = 2; i < m.n_tau; ++i) {
        const double a = m.at(j, i - 1), b = m.at(j, i);
        if (!flip(a, b)) continue;
        const double z0 = depth.altitude[i - 1], z1 = depth.altitude[i];
        const double z = z0 + (z1 - z0) * a / (a - b);
        if (z <= max_altitude) pts.push_back({z, grid.nu[j]});
      }
    }
  }
  return pts;
}

/// Heuristic prediction of T' for a perturbation concentrated near one
/// frequency j_star (delta kappa = 1):
///
///   Phi'(tau) = -| int_0^tau 1/2 int_0^1 (I(t,mu) - I(t,-mu))/mu dmu dt |
///               + (J(tau) - b(T(tau))) / kappa.
///
/// The angular mean of I/mu is taken with the two directions paired so the
/// 1/mu singularities cancel.
inline std::vector<double> perturbation_predictor(const Solution<double>& sol,
                                                  const Problem<double>& problem,
                                                  const SolverConfig& cfg, std::size_t j_star,
                                                  std::size_t angular_nodes = 64,
                                                  std::size_t depth_nodes_per_cell = 4)
{
  const auto& depth = problem.depth;
  const double kappa = problem.spectrum.kappa.at(j_star);
  detail::check_kernel_domain(kappa, 2.0 * depth.Z);
  const auto ang = AngularQuadrature::gauss_legendre(angular_nodes);
  const auto cellq = AngularQuadrature::gauss_legendre(depth_nodes_per_cell);

  std::vector<double> taus;
  std::vector<double> wt;
  for (std::size_t c = 0; c < depth.cells(); ++c)
    gauss_on_interval(cellq, depth.tau[c], depth.tau[c + 1], taus, wt);

  const auto src = cell_sources(j_star, sol.field, sol.T, problem, cfg.kernel);
  std::vector<double> odd(taus.size(), 0.0);
  for (std::size_t q = 0; q < ang.size(); ++q) {
    const double mu = ang.mu[q];
    const auto up = intensity_along_ray(mu, j_star, src, problem, cfg, taus);
    const auto down = intensity_along_ray(-mu, j_star, src, problem, cfg, taus);
    for (std::size_t p = 0; p < taus.size(); ++p)
      odd[p] += 0.5 * ang.weight[q] * (up[p] - down[p]) / mu;
  }

  std::vector<double> phi(depth.size(), 0.0);
  const double nu = problem.spectrum.nu[j_star];
  const std::size_t per_cell = cellq.size();
  double integral = 0.0;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (i > 0) {
      const std::size_t c = i - 1;
      for (std::size_t k = 0; k < per_cell; ++k)
        integral += wt[c * per_cell + k] * odd[c * per_cell + k];
    }
    phi[i] = -std::abs(integral) + (sol.field.j(j_star, i) - planck(nu, sol.T[i])) / kappa;
  }
  return phi;
}

/// Sum of the single-frequency predictions over a band, weighted by dnu.
inline std::vector<double> band_predictor(const Solution<double>& sol, const Problem<double>& problem,
                                          const SolverConfig& cfg, double nu_lo, double nu_hi)
{
  std::vector<double> total(problem.n_tau(), 0.0);
  const auto& g = problem.spectrum;
  for (std::size_t j = 1; j < g.size(); ++j) {
    if (!(g.nu[j] > nu_lo && g.nu[j] < nu_hi)) continue;
    const auto phi = perturbation_predictor(sol, problem, cfg, j);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += phi[i] * g.dnu(j);
  }
  return total;
}

} // namespace rtstrat
