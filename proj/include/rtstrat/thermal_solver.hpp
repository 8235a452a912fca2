// thermal_solver.hpp - Kirchhoff energy balance int kappa b(T) dnu = int kappa J dnu

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "rtstrat/config.hpp"
#include "rtstrat/scalar.hpp"
#include "rtstrat/special_functions.hpp"
#include "rtstrat/spectral_grid.hpp"
#include "rtstrat/transport_kernel.hpp"

namespace rtstrat {

/// Optional per-frequency weights on the balance (scattering-weighted mode).
using BalanceWeights = std::vector<double>;

/// int kappa b(T0) dnu - rhs at node frequencies.
template <Scalar S>
S balance_residual(const S& T0, const S& rhs, const SpectralGrid<S>& grid,
                   const BalanceWeights* weights = nullptr)
{
  S r = -rhs;
  for (std::size_t j = 1; j < grid.size(); ++j) {
    S term = grid.kappa[j] * planck(grid.nu[j], T0) * grid.dnu(j);
    if (weights) term *= (*weights)[j];
    r += term;
  }
  return r;
}

/// Balance evaluated at interval midpoints, the form driven to zero by Newton.
/// Returns {residual, derivative in T}.
template <Scalar S>
std::pair<S, S> midpoint_balance(const S& T0, const S& rhs, const SpectralGrid<S>& grid,
                                 const BalanceWeights* weights = nullptr)
{
  S left{0.0};
  S deriv{0.0};
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double nu1 = grid.nu_mid(j);
    S k = grid.kappa[j] * grid.dnu(j);
    if (weights) k *= (*weights)[j];
    left += k * planck(nu1, T0);
    deriv += k * planck_dT(nu1, T0);
  }
  return {left - rhs, deriv};
}

/// int kappa J(tau_i) dnu.
template <Scalar S>
S kirchhoff_rhs(std::size_t i, const RadiationField<S>& field, const SpectralGrid<S>& grid,
                const BalanceWeights* weights = nullptr)
{
  S rhs{0.0};
  for (std::size_t j = 1; j < grid.size(); ++j) {
    S term = grid.kappa[j] * field.j(j, i) * grid.dnu(j);
    if (weights) term *= (*weights)[j];
    rhs += term;
  }
  return rhs;
}

/// (1 - a_nu(tau_i)) for the scattering-weighted balance.
template <Scalar S>
BalanceWeights absorption_weights(std::size_t i, const Problem<S>& problem, const KernelOptions& opts)
{
  const auto& sc = problem.scattering;
  BalanceWeights w(problem.n_nu());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double ar = opts.rayleigh ? rayleigh_band(sc.a_ray[i], problem.spectrum.nu[j]) : 0.0;
    w[j] = 1.0 - sc.a_iso[i] - ar;
  }
  return w;
}

template <Scalar S>
struct NodeSolution
{
  S T{0.0};
  /// Midpoint balance at the returned temperature.
  double residual = 0.0;
  int newton_iterations = 0;
  bool converged = true;
};

/// Temperature at one node: bracket by halving/doubling, bisect, then Newton
/// on the midpoint balance. A non-positive rhs gives T = 0.
template <Scalar S>
NodeSolution<S> solve_node(const S& rhs, const SpectralGrid<S>& grid, const S& T_init,
                           const ThermalOptions& opts, const BalanceWeights* weights = nullptr)
{
  NodeSolution<S> out;
  if (!(value_of(rhs) > 0.0)) return out;

  S T0 = value_of(T_init) < opts.bracket_floor ? S{opts.bracket_floor} : T_init;
  S T1 = T0;
  for (int k = 0; k < 2000 && balance_residual(T0, rhs, grid, weights) > 0.0; ++k) T0 = T0 / 2.0;
  for (int k = 0; k < 2000 && balance_residual(T1, rhs, grid, weights) < 0.0; ++k) T1 = 2.0 * T1;
  while (value_of(T1 - T0) > opts.eps_bisection) {
    const S mid = (T1 + T0) / 2.0;
    if (balance_residual(mid, rhs, grid, weights) > 0.0)
      T1 = mid;
    else
      T0 = mid;
  }

  S T = (T1 + T0) / 2.0;
  double res = 1.0;
  int it = 0;
  while (it < opts.max_newton && std::abs(res) > opts.eps_newton) {
    ++it;
    const auto [r, d] = midpoint_balance(T, rhs, grid, weights);
    res = value_of(r);
    if (std::abs(value_of(d)) > 1e-10) T = T - r / d;
  }
  out.T = T;
  out.newton_iterations = it;
  out.residual = value_of(midpoint_balance(T, rhs, grid, weights).first);
  out.converged = std::abs(res) <= opts.eps_newton || std::abs(out.residual) <= opts.eps_newton;
  return out;
}

template <Scalar S>
struct ProfileSolution
{
  TemperatureProfile<S> T;
  std::vector<std::size_t> flagged;
  double max_residual = 0.0;
};

/// Solves every depth node, starting each from its previous temperature.
template <Scalar S>
ProfileSolution<S> solve_profile(const RadiationField<S>& field, const TemperatureProfile<S>& T_prev,
                                 const Problem<S>& problem, const SolverConfig& cfg)
{
  ProfileSolution<S> out;
  out.T.resize(problem.n_tau());
  for (std::size_t i = 0; i < problem.n_tau(); ++i) {
    BalanceWeights w;
    const BalanceWeights* wp = nullptr;
    if (cfg.thermal.scattering_weighted_balance) {
      w = absorption_weights(i, problem, cfg.kernel);
      wp = &w;
    }
    const S rhs = kirchhoff_rhs(i, field, problem.spectrum, wp);
    const auto node = solve_node(rhs, problem.spectrum, T_prev[i], cfg.thermal, wp);
    out.T[i] = node.T;
    out.max_residual = std::max(out.max_residual, std::abs(node.residual));
    if (!node.converged) out.flagged.push_back(i);
  }
  return out;
}

/// Closed form for constant kappa: T = (15 int J dnu)^(1/4) / pi.
template <Scalar S>
TemperatureProfile<S> solve_profile_grey(const RadiationField<S>& field, const SpectralGrid<S>& grid)
{
  using std::sqrt;
  TemperatureProfile<S> T(field.n_tau, S{0.0});
  for (std::size_t i = 0; i < field.n_tau; ++i) {
    S integral{0.0};
    for (std::size_t j = 1; j < grid.size(); ++j) integral += field.j(j, i) * grid.dnu(j);
    if (value_of(integral) > 0.0) T[i] = sqrt(sqrt(15.0 * integral)) / std::numbers::pi;
  }
  return T;
}

} // namespace rtstrat
