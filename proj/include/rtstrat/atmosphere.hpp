// atmosphere.hpp - Optical-depth grid, scattering profiles and boundary configuration

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace rtstrat {

/// Uniform optical-depth nodes tau_i = i Z/(n-1) on [0, Z] with the altitude
/// of each node. For the exponential density profile rho ~ exp(-z) the optical
/// depth is tau(z) = 1 - exp(-z), so Z = 1 - exp(-H) and z = -ln(1 - tau).
struct OpticalGrid
{
  double Z = 0.0;
  std::vector<double> tau;
  std::vector<double> altitude;
  /// tau_i = i Z/(n-1); false for grids built from arbitrary nodes.
  bool equal_spacing = true;

  std::size_t size() const { return tau.size(); }
  std::size_t cells() const { return tau.size() - 1; }
  /// Node spacing of an equally spaced grid.
  double step() const { return Z / static_cast<double>(tau.size() - 1); }

  /// Cell holding depth t; cell c spans [tau_c, tau_{c+1}).
  std::size_t cell_of(double t) const
  {
    if (uniform()) {
      const auto c = static_cast<std::ptrdiff_t>(static_cast<double>(cells()) * t / Z);
      return static_cast<std::size_t>(
          std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(cells()) - 1));
    }
    const auto it = std::upper_bound(tau.begin(), tau.end(), t);
    const auto c = std::distance(tau.begin(), it) - 1;
    return static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(cells()) - 1));
  }

  bool uniform() const { return equal_spacing; }
};

inline double optical_depth_of_altitude(double z) { return -std::expm1(-z); }
inline double altitude_of_optical_depth(double tau) { return -std::log1p(-tau); }

inline OpticalGrid build_grid(std::size_t n_tau = 60, double H = 12.0)
{
  if (n_tau < 2) throw std::invalid_argument("optical grid: need at least two depth nodes");
  if (!(H > 0.0)) throw std::invalid_argument("optical grid: height must be positive");
  OpticalGrid g;
  g.Z = optical_depth_of_altitude(H);
  g.tau.resize(n_tau);
  g.altitude.resize(n_tau);
  for (std::size_t i = 0; i < n_tau; ++i) {
    g.tau[i] = static_cast<double>(i) * g.Z / static_cast<double>(n_tau - 1);
    g.altitude[i] = altitude_of_optical_depth(g.tau[i]);
  }
  g.tau.back() = g.Z;
  g.altitude.back() = H;
  return g;
}

/// Grid on arbitrary nodes 0 = tau_0 < ... < tau_{n-1} = Z with given altitudes.
inline OpticalGrid grid_from_nodes(std::vector<double> tau, std::vector<double> altitude)
{
  if (tau.size() < 2 || tau.size() != altitude.size())
    throw std::invalid_argument("optical grid: need matching tau/altitude arrays of size >= 2");
  if (tau.front() != 0.0) throw std::invalid_argument("optical grid: first node must be tau = 0");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) throw std::invalid_argument("optical grid: tau must increase");
  OpticalGrid g;
  g.Z = tau.back();
  g.tau = std::move(tau);
  g.altitude = std::move(altitude);
  g.equal_spacing = false;
  return g;
}

/// Depth-dependent scattering albedos: an isotropic part peaked between
/// t1 = 0.6 Z and t2 = 0.9 Z (by default) and a Rayleigh part growing
/// linearly above t2.
struct ScatteringProfile
{
  std::vector<double> a_iso;
  std::vector<double> a_ray;

  bool any_isotropic() const
  {
    return std::any_of(a_iso.begin(), a_iso.end(), [](double a) { return a != 0.0; });
  }
  bool any_rayleigh() const
  {
    return std::any_of(a_ray.begin(), a_ray.end(), [](double a) { return a != 0.0; });
  }
};

/// Profiles at the grid nodes. With `legacy_offset` they are sampled at
/// t_i = i Z/n instead, reproducing the original program.
inline ScatteringProfile build_scattering(const OpticalGrid& grid, double a_is, double a_rs,
                                          bool legacy_offset = false, double t1_frac = 0.6,
                                          double t2_frac = 0.9)
{
  if (a_is < 0.0 || a_is >= 1.0 || a_rs < 0.0 || a_rs >= 1.0)
    throw std::invalid_argument("scattering maxima must lie in [0,1)");
  if (!(t1_frac >= 0.0 && t1_frac < t2_frac && t2_frac < 1.0))
    throw std::invalid_argument("scattering layer: need 0 <= t1 < t2 < 1 (fractions of Z)");
  const double Z = grid.Z;
  const double t1 = t1_frac * Z;
  const double t2 = t2_frac * Z;
  const std::size_t n = grid.size();
  ScatteringProfile p;
  p.a_iso.resize(n);
  p.a_ray.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = legacy_offset ? static_cast<double>(i) * Z / static_cast<double>(n) : grid.tau[i];
    p.a_iso[i] =
        a_is * std::max(t - t1, 0.0) * std::max(t2 - t, 0.0) * 4.0 / ((t2 - t1) * (t2 - t1));
    p.a_ray[i] = a_rs * std::max(t - t2, 0.0) / (Z - t2);
  }
  return p;
}

inline ScatteringProfile no_scattering(const OpticalGrid& grid)
{
  return {std::vector<double>(grid.size(), 0.0), std::vector<double>(grid.size(), 0.0)};
}

/// Boundary data. The solar source enters either at the top of the
/// atmosphere (fraction 1 - alpha_bottom) or at the ground (fraction
/// alpha_bottom), optionally attenuated by the full column exp(-kappa Z/mu).
/// The ground reflects a fraction earth_albedo of the downward thermal
/// radiation.
struct BoundaryConfig
{
  double earth_albedo = 0.3;
  double alpha_bottom = 1.0;
  bool attenuate_bottom = true;
  /// Multiplier lambda on the solar spectrum.
  double source_scale = 1.0;
  /// Effective ground temperature (288 K scaled) for the thermal albedo operator.
  double ground_temperature = 288.0 / 4780.0;

  void validate() const
  {
    if (earth_albedo < 0.0 || earth_albedo >= 1.0)
      throw std::invalid_argument("earth albedo must lie in [0,1)");
    if (alpha_bottom < 0.0 || alpha_bottom > 1.0)
      throw std::invalid_argument("alpha_bottom must lie in [0,1]");
    if (ground_temperature < 0.0) throw std::invalid_argument("ground temperature must be >= 0");
    if (source_scale < 0.0) throw std::invalid_argument("source scale must be >= 0");
  }
};

} // namespace rtstrat
