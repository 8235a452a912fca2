// spectral_grid.hpp - Frequency nodes, absorption spectra and frequency quadrature

#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtstrat/scalar.hpp"

namespace rtstrat {

/// Absorption floor applied to every assignment.
inline constexpr double kappa_min = 0.001;

/// Line limit of absorption files.
inline constexpr std::size_t max_file_nodes = 600;

/// Frequency nodes with one absorption coefficient per node. The coefficient
/// type is a template parameter so a perturbation amplitude can be carried as
/// a dual number.
template <Scalar S = double>
struct SpectralGrid
{
  std::vector<double> nu;
  std::vector<S> kappa;

  std::size_t size() const { return nu.size(); }

  /// Width of the interval ending at node j (j >= 1).
  double dnu(std::size_t j) const { return nu[j] - nu[j - 1]; }

  /// Midpoint of the interval ending at node j (j >= 1).
  double nu_mid(std::size_t j) const { return 0.5 * (nu[j] + nu[j - 1]); }

  S kappa_max() const
  {
    S m = kappa.empty() ? S{0.0} : kappa.front();
    for (const auto& k : kappa) m = max_value(m, k);
    return m;
  }
};

namespace detail {

inline void check_bounds(std::size_t jmax, double nu_min, double nu_max)
{
  if (jmax < 2) throw std::invalid_argument("spectral grid: need at least two nodes");
  if (!(nu_min > 0.0) || !(nu_min < nu_max))
    throw std::invalid_argument("spectral grid: require 0 < nu_min < nu_max");
}

inline void check_nodes(const std::vector<double>& nu)
{
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (!(nu[j] > 0.0)) throw std::invalid_argument("spectral grid: frequencies must be > 0");
    if (j > 0 && !(nu[j] > nu[j - 1]))
      throw std::invalid_argument("spectral grid: frequencies must be strictly increasing");
  }
}

} // namespace detail

/// Node j of the wavelength-uniform map,
/// nu_max / (1 + (jmax - j)(nu_max - nu_min)/(nu_min jmax)).
/// j = 0 gives nu_min and j = jmax gives nu_max.
inline double wavelength_uniform_node(double j, double jmax, double nu_min, double nu_max)
{
  return nu_max / (1.0 + (jmax - j) * (nu_max - nu_min) / nu_min / jmax);
}

/// Nodes j = 0..jmax-1 uniform in wavelength; the top node stays just below nu_max.
inline SpectralGrid<double> build_wavelength_uniform(std::size_t jmax = 400, double nu_min = 0.05,
                                                     double nu_max = 15.0)
{
  detail::check_bounds(jmax, nu_min, nu_max);
  SpectralGrid<double> g;
  g.nu.resize(jmax);
  for (std::size_t j = 0; j < jmax; ++j)
    g.nu[j] = wavelength_uniform_node(static_cast<double>(j), static_cast<double>(jmax), nu_min,
                                      nu_max);
  g.kappa.assign(jmax, kappa_min);
  return g;
}

/// Nodes uniform in frequency; used for refinement studies.
inline SpectralGrid<double> build_frequency_uniform(std::size_t jmax, double nu_min, double nu_max)
{
  detail::check_bounds(jmax, nu_min, nu_max);
  SpectralGrid<double> g;
  g.nu.resize(jmax);
  for (std::size_t j = 0; j < jmax; ++j)
    g.nu[j] = nu_min + (nu_max - nu_min) * static_cast<double>(j) / static_cast<double>(jmax - 1);
  g.kappa.assign(jmax, kappa_min);
  return g;
}

/// Copy of the nodes of `base` with kappa(nu) assigned by `f` and clamped at kappa_min.
template <Scalar S, typename F>
SpectralGrid<S> with_kappa(const SpectralGrid<double>& base, F&& f)
{
  SpectralGrid<S> g;
  g.nu = base.nu;
  g.kappa.reserve(base.size());
  for (double nu : base.nu) g.kappa.push_back(max_value(S{f(nu)}, S{kappa_min}));
  return g;
}

/// Grey absorption: kappa(nu) = level.
template <Scalar S = double>
SpectralGrid<S> kappa_grey(const SpectralGrid<double>& base, S level = S{0.5})
{
  return with_kappa<S>(base, [&](double) { return level; });
}

/// Banded absorption: kappa(nu) = base_level + step * 1{nu_lo < nu < nu_hi}.
template <Scalar S = double>
SpectralGrid<S> kappa_banded(const SpectralGrid<double>& grid, S base_level, S step, double nu_lo,
                             double nu_hi)
{
  return with_kappa<S>(grid, [&](double nu) {
    return (nu > nu_lo && nu < nu_hi) ? S{base_level + step} : S{base_level};
  });
}

/// Reads an absorption file: one node per line, whitespace separated columns
/// "nu kappa0 kappa1 kappa2 unused". `column` selects kappa0/1/2.
inline SpectralGrid<double> kappa_from_stream(std::istream& in, int column,
                                              const std::string& source = "<stream>",
                                              double kappa_floor = kappa_min,
                                              std::size_t max_nodes = max_file_nodes)
{
  if (column < 0 || column > 2)
    throw std::invalid_argument("absorption file: column must be 0, 1 or 2");
  SpectralGrid<double> g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double v[5];
    for (double& x : v) {
      if (!(ls >> x))
        throw std::runtime_error(source + ":" + std::to_string(lineno) +
                                 ": expected 5 numeric columns");
    }
    if (g.size() == max_nodes)
      throw std::runtime_error(source + ":" + std::to_string(lineno) + ": more than " +
                               std::to_string(max_nodes) + " frequency nodes");
    g.nu.push_back(v[0]);
    g.kappa.push_back(std::max(v[1 + column], kappa_floor));
  }
  if (g.size() < 2) throw std::runtime_error(source + ": need at least two frequency nodes");
  try {
    detail::check_nodes(g.nu);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
  return g;
}

inline SpectralGrid<double> kappa_from_file(const std::string& path, int column = 0,
                                            double kappa_floor = kappa_min,
                                            std::size_t max_nodes = max_file_nodes)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open absorption file " + path);
  return kappa_from_stream(in, column, path, kappa_floor, max_nodes);
}

/// Left-endpoint frequency quadrature: sum_{j>=1} values[j] (nu[j] - nu[j-1]).
template <typename T, typename Grid, typename Values>
T integrate_nu(const Grid& grid, const Values& values)
{
  T sum{0.0};
  for (std::size_t j = 1; j < grid.size(); ++j) sum += values[j] * grid.dnu(j);
  return sum;
}

template <typename Grid, typename Values>
auto integrate_nu(const Grid& grid, const Values& values)
{
  using T = std::decay_t<decltype(values[0] * 1.0)>;
  return integrate_nu<T>(grid, values);
}

} // namespace rtstrat
