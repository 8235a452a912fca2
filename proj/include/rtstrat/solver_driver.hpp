// solver_driver.hpp - Outer fixed point between the transport update and the energy balance

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "rtstrat/config.hpp"
#include "rtstrat/quadrature.hpp"
#include "rtstrat/thermal_solver.hpp"
#include "rtstrat/transport_kernel.hpp"

namespace rtstrat {

struct FlaggedNode
{
  int iteration = 0;
  std::size_t node = 0;
};

struct SolveReport
{
  int iterations = 0;
  std::vector<double> norm_J;
  std::vector<double> norm_S2;
  std::vector<double> probe_T;
  /// sup_i |T_k - T_{k-1}| per iteration.
  std::vector<double> sup_diff;
  double final_sup_diff = 0.0;
  std::vector<FlaggedNode> flagged;
  double max_residual = 0.0;
  double wall_seconds = 0.0;

  /// Per-iteration table. Timing is left out unless asked for, so two runs
  /// of the same configuration print identical reports.
  std::string to_text(bool with_timing = false) const
  {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "k\tT_probe\tnorm_J\tnorm_S2\tsup_dT\n";
    for (int k = 0; k < iterations; ++k)
      os << k << '\t' << probe_T[k] << '\t' << norm_J[k] << '\t' << norm_S2[k] << '\t'
         << sup_diff[k] << '\n';
    os << "iterations " << iterations << "\nfinal_sup_dT " << final_sup_diff
       << "\nmax_balance_residual " << max_residual << "\nflagged " << flagged.size() << '\n';
    for (const auto& f : flagged) os << "  iteration " << f.iteration << " node " << f.node << '\n';
    if (with_timing) os << "wall_seconds " << wall_seconds << '\n';
    return os.str();
  }
};

template <Scalar S = double>
struct Solution
{
  TemperatureProfile<S> T;
  RadiationField<S> field;
  SolveReport report;
};

/// k_max sweeps of: new field from (T, J, S2), then new T from the field.
template <Scalar S>
Solution<S> fixed_point_solve(const Problem<S>& problem, const SolverConfig& cfg)
{
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_tau = problem.n_tau();
  const std::size_t probe = std::min(cfg.driver.probe_node, n_tau - 1);

  Solution<S> sol;
  sol.T.assign(n_tau, S{cfg.driver.T_init});
  sol.field = RadiationField<S>::zeros(problem.n_nu(), n_tau);
  auto& rep = sol.report;

  for (int k = 0; k < cfg.driver.k_max; ++k) {
    sol.field = update_field(sol.field, sol.T, problem, cfg);
    auto prof = solve_profile(sol.field, sol.T, problem, cfg);

    double nJ = 0.0;
    double nS = 0.0;
    for (const auto& v : sol.field.J) nJ += std::abs(value_of(v));
    for (const auto& v : sol.field.S2) nS += std::abs(value_of(v));
    double sup = 0.0;
    for (std::size_t i = 0; i < n_tau; ++i)
      sup = std::max(sup, std::abs(value_of(prof.T[i]) - value_of(sol.T[i])));

    sol.T = std::move(prof.T);
    rep.iterations = k + 1;
    rep.norm_J.push_back(nJ);
    rep.norm_S2.push_back(nS);
    rep.probe_T.push_back(value_of(sol.T[probe]));
    rep.sup_diff.push_back(sup);
    rep.final_sup_diff = sup;
    rep.max_residual = prof.max_residual;
    for (auto i : prof.flagged) rep.flagged.push_back({k, i});
    if (cfg.driver.early_stop && sup < *cfg.driver.early_stop) break;
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

/// Terms of the L2 energy identity of the frequency-integrated intensity I
/// for constant kappa and no scattering:
///
///   kappa int int (I - I_m)^2 dmu dtau + 1/2 int mu I(Z,mu)^2 + 1/2 int mu I(0,-mu)^2
///     = 1/2 int mu I(Z,-mu)^2 + 1/2 int mu I(0,mu)^2,
///
/// with I_m = 1/2 int I dmu and mu-integrals over (0,1).
struct EnergyBalance
{
  double volume = 0.0;
  double outgoing = 0.0;
  double incoming = 0.0;

  double residual() const
  {
    const double lhs = volume + outgoing;
    const double scale = std::max(lhs, incoming);
    return scale > 0.0 ? std::abs(lhs - incoming) / scale : 0.0;
  }
};

inline EnergyBalance energy_balance(const Solution<double>& sol, const Problem<double>& problem,
                                    const SolverConfig& cfg, std::size_t angular_nodes = 64,
                                    std::size_t depth_nodes_per_cell = 4)
{
  const auto ang = AngularQuadrature::gauss_legendre(angular_nodes);
  const auto cellq = AngularQuadrature::gauss_legendre(depth_nodes_per_cell);
  const auto& depth = problem.depth;
  const auto& spec = problem.spectrum;
  const double kappa = spec.kappa.empty() ? 0.0 : spec.kappa.front();

  std::vector<double> taus;
  std::vector<double> wt;
  for (std::size_t c = 0; c < depth.cells(); ++c)
    gauss_on_interval(cellq, depth.tau[c], depth.tau[c + 1], taus, wt);
  taus.insert(taus.begin(), 0.0);
  wt.insert(wt.begin(), 0.0);
  taus.push_back(depth.Z);
  wt.push_back(0.0);

  const std::size_t nq = ang.size();
  const std::size_t np = taus.size();
  // Frequency-integrated intensity, [direction][depth]; up = mu > 0.
  std::vector<double> up(nq * np, 0.0);
  std::vector<double> down(nq * np, 0.0);
  for (std::size_t j = 1; j < spec.size(); ++j) {
    const double dnu = spec.dnu(j);
    const auto src = cell_sources(j, sol.field, sol.T, problem, cfg.kernel);
    for (std::size_t q = 0; q < nq; ++q) {
      const auto Iu = intensity_along_ray(ang.mu[q], j, src, problem, cfg, taus);
      const auto Id = intensity_along_ray(-ang.mu[q], j, src, problem, cfg, taus);
      for (std::size_t p = 0; p < np; ++p) {
        up[q * np + p] += Iu[p] * dnu;
        down[q * np + p] += Id[p] * dnu;
      }
    }
  }

  EnergyBalance e;
  for (std::size_t p = 0; p < np; ++p) {
    if (wt[p] == 0.0) continue;
    double mean = 0.0;
    for (std::size_t q = 0; q < nq; ++q)
      mean += 0.5 * ang.weight[q] * (up[q * np + p] + down[q * np + p]);
    double var = 0.0;
    for (std::size_t q = 0; q < nq; ++q) {
      const double a = up[q * np + p] - mean;
      const double b = down[q * np + p] - mean;
      var += ang.weight[q] * (a * a + b * b);
    }
    e.volume += kappa * wt[p] * var;
  }
  const std::size_t top = np - 1;
  for (std::size_t q = 0; q < nq; ++q) {
    const double w = 0.5 * ang.weight[q] * ang.mu[q];
    e.outgoing += w * (up[q * np + top] * up[q * np + top] + down[q * np] * down[q * np]);
    e.incoming += w * (down[q * np + top] * down[q * np + top] + up[q * np] * up[q * np]);
  }
  return e;
}

/// Relative residual of the energy identity (0 for a vanishing solution).
inline double energy_identity_check(const Solution<double>& sol, const Problem<double>& problem,
                                    const SolverConfig& cfg, std::size_t angular_nodes = 64)
{
  return energy_balance(sol, problem, cfg, angular_nodes).residual();
}

} // namespace rtstrat
