// config.hpp - Solver options and the problem bundle

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rtstrat/atmosphere.hpp"
#include "rtstrat/scalar.hpp"
#include "rtstrat/special_functions.hpp"
#include "rtstrat/spectral_grid.hpp"

namespace rtstrat {

/// How the depth convolution is integrated.
enum class KernelQuadrature
{
  /// Exact integration of the kernel over each depth cell (E_{p+1} antiderivatives).
  exact_cells,
  /// Midpoint sampling with step min(dt_max, length/min_steps).
  sampled,
};

/// Additional reflecting level: intensity leaving level tau_k downwards is
/// sent back up from the ground with weight alpha_k.
struct AlbedoLevel
{
  double tau = 0.0;
  double alpha = 0.0;
};

struct KernelOptions
{
  KernelQuadrature quadrature = KernelQuadrature::exact_cells;
  double dt_max = 0.005;
  int min_steps = 5;
  /// Rayleigh band term; with no Rayleigh profile the result does not depend on it.
  bool rayleigh = true;
  std::vector<AlbedoLevel> albedo_levels;
};

struct ThermalOptions
{
  double eps_bisection = 0.01;
  double eps_newton = 1e-12;
  int max_newton = 50;
  double bracket_floor = 0.1;
  /// Weight the energy balance by (1 - a_nu) instead of plain kappa.
  bool scattering_weighted_balance = false;
};

struct DriverOptions
{
  int k_max = 16;
  double T_init = 0.0;
  /// Stop once the sup-norm change of T falls below this value.
  std::optional<double> early_stop;
  /// Depth node whose temperature is traced per iteration.
  std::size_t probe_node = 2;
};

struct SolverConfig
{
  BoundaryConfig boundary;
  SolarSource sun;
  KernelOptions kernel;
  ThermalOptions thermal;
  DriverOptions driver;
  /// Reproduce the original program where it differs: left-endpoint sampling
  /// with step min(dt_max, min_steps/length), second-moment ground source
  /// E5(kappa tau) and a 0.01 floor on kappa in the boundary source.
  bool strict_compat = false;

  void validate() const
  {
    boundary.validate();
    if (driver.k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    if (!(kernel.dt_max > 0.0) || kernel.min_steps < 1)
      throw std::invalid_argument("kernel step controls must be positive");
    double total = 0.0;
    for (const auto& level : kernel.albedo_levels) {
      if (level.alpha < 0.0) throw std::invalid_argument("albedo level weight must be >= 0");
      total += level.alpha;
    }
    if (total >= 1.0) throw std::invalid_argument("albedo level weights must sum below 1");
  }
};

/// Everything that defines one atmosphere: spectrum, depth grid and scattering.
template <Scalar S = double>
struct Problem
{
  SpectralGrid<S> spectrum;
  OpticalGrid depth;
  ScatteringProfile scattering;

  std::size_t n_nu() const { return spectrum.size(); }
  std::size_t n_tau() const { return depth.size(); }
};

template <Scalar S>
Problem<S> make_problem(SpectralGrid<S> spectrum, OpticalGrid depth)
{
  Problem<S> p{std::move(spectrum), std::move(depth), {}};
  p.scattering = no_scattering(p.depth);
  return p;
}

} // namespace rtstrat
