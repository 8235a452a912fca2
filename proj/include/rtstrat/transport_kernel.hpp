// transport_kernel.hpp - Mean-intensity update of the integral formulation
//
// For each frequency the zeroth and second angular moments of the intensity,
//
//   J(tau)  = 1/2 int_{-1}^{1} I dmu,     S2(tau) = 1/2 int_{-1}^{1} mu^2 I dmu,
//
// are obtained from the current temperature and moments by convolving the
// source with exponential-integral kernels,
//
//   J(tau) = boundary source + kappa/2 int_0^Z [E1(kappa|tau-t|) + a_e E1(kappa(tau+t))] h0(t) dt
//                            + kappa/2 int_0^Z [E3(kappa|tau-t|) + a_e E3(kappa(tau+t))] h2(t) dt,
//
// and likewise for S2 with kernels E3/E5. h0 and h2 are the isotropic and
// mu^2 parts of the source per unit absorption; they are piecewise constant
// on depth cells, cell c carrying the values of node c.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtstrat/config.hpp"
#include "rtstrat/scalar.hpp"
#include "rtstrat/special_functions.hpp"

namespace rtstrat {

/// Angular moments J and S2 stored frequency-major: row j is contiguous over depth.
template <Scalar S = double>
struct RadiationField
{
  std::size_t n_nu = 0;
  std::size_t n_tau = 0;
  std::vector<S> J;
  std::vector<S> S2;

  static RadiationField zeros(std::size_t n_nu, std::size_t n_tau)
  {
    return {n_nu, n_tau, std::vector<S>(n_nu * n_tau, S{0.0}),
            std::vector<S>(n_nu * n_tau, S{0.0})};
  }

  S& j(std::size_t nu, std::size_t i) { return J[nu * n_tau + i]; }
  const S& j(std::size_t nu, std::size_t i) const { return J[nu * n_tau + i]; }
  S& s2(std::size_t nu, std::size_t i) { return S2[nu * n_tau + i]; }
  const S& s2(std::size_t nu, std::size_t i) const { return S2[nu * n_tau + i]; }

  std::span<const S> J_row(std::size_t nu) const { return {J.data() + nu * n_tau, n_tau}; }
  std::span<const S> S2_row(std::size_t nu) const { return {S2.data() + nu * n_tau, n_tau}; }
};

template <Scalar S = double>
using TemperatureProfile = std::vector<S>;

template <Scalar S = double>
struct Moments
{
  S m0{0.0};
  S m2{0.0};
};

/// Rayleigh band weight a_r(tau) (nu-0.8)^2 (nu-1.2)^2 40 on 0.8 < nu < 1.2.
inline double rayleigh_band(double a_ray, double nu)
{
  if (!(nu > 0.8 && nu < 1.2)) return 0.0;
  const double l = nu - 0.8;
  const double r = nu - 1.2;
  return a_ray * l * l * r * r * 40.0;
}

/// Source per unit absorption on each depth cell for one frequency.
template <Scalar S>
struct CellSources
{
  std::vector<S> h0; // isotropic part
  std::vector<S> h2; // mu^2 part (Rayleigh)
  bool has_h2 = false;
};

template <Scalar S>
CellSources<S> cell_sources(std::size_t j, const RadiationField<S>& field,
                            const TemperatureProfile<S>& T, const Problem<S>& problem,
                            const KernelOptions& opts)
{
  const double nu = problem.spectrum.nu[j];
  const auto& sc = problem.scattering;
  const std::size_t cells = problem.depth.cells();
  CellSources<S> out;
  out.h0.resize(cells);
  out.h2.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const double ar4 = opts.rayleigh ? rayleigh_band(sc.a_ray[c], nu) : 0.0;
    const S& Jc = field.j(j, c);
    const S& Sc = field.s2(j, c);
    out.h0[c] = planck(nu, T[c]) * (1.0 - ar4) + (sc.a_iso[c] + 1.125 * ar4) * Jc -
                1.125 * ar4 * Sc;
    out.h2[c] = -0.375 * ar4 * (Jc - 3.0 * Sc);
    if (value_of(out.h2[c]) != 0.0) out.has_h2 = true;
  }
  return out;
}

namespace detail {

template <Scalar S>
void check_kernel_domain(const S& kappa, double length)
{
  const double arg = value_of(kappa) * length;
  if (arg > expint_max_arg)
    throw std::domain_error("transport kernel: kappa*length = " + std::to_string(arg) +
                            " exceeds the exponential-integral range; reduce kappa or Z");
}

// kappa int_a^b E_p(kappa |tau - t|) dt through the antiderivative E_{p+1}.
template <Scalar S>
S direct_cell_weight(int p, const S& kappa, double tau, double a, double b)
{
  const int q = p + 1;
  if (b <= tau) return expint_any(q, kappa * (tau - b)) - expint_any(q, kappa * (tau - a));
  if (a >= tau) return expint_any(q, kappa * (a - tau)) - expint_any(q, kappa * (b - tau));
  const double at_zero = 1.0 / p;
  return 2.0 * at_zero - expint_any(q, kappa * (tau - a)) - expint_any(q, kappa * (b - tau));
}

// kappa int_a^b E_p(kappa (t + shift)) dt, shift >= 0.
template <Scalar S>
S shifted_cell_weight(int p, const S& kappa, double shift, double a, double b)
{
  const int q = p + 1;
  return expint_any(q, kappa * (a + shift)) - expint_any(q, kappa * (b + shift));
}

// Sample positions and weights of the sampled quadrature on [lo, hi].
struct Samples
{
  double first = 0.0;
  double step = 0.0;
  std::size_t count = 0;
};

inline Samples sampling(double lo, double hi, const KernelOptions& opts, bool strict)
{
  const double length = hi - lo;
  if (!(length > 0.0)) return {};
  if (strict) {
    // Left endpoints with the original step expression.
    const double dt = std::min(opts.dt_max, opts.min_steps / length);
    std::size_t n = 0;
    for (double t = lo; t < hi; t += dt) ++n;
    return {lo, dt, n};
  }
  const double target = std::min(opts.dt_max, length / opts.min_steps);
  const auto n = static_cast<std::size_t>(std::ceil(length / target - 1e-12));
  const double dt = length / static_cast<double>(n);
  return {lo + 0.5 * dt, dt, n};
}

template <Scalar S>
void accumulate_sample(Moments<S>& out, const S& kappa, const S& H0, const S& H2, const S& x_direct,
                       const S& x_reflect, double albedo, double dt)
{
  const S half_dt = S{0.5 * dt};
  auto pair = [&](int p) {
    S v = expint_any(p, x_direct);
    if (albedo != 0.0) v += albedo * expint_any(p, x_reflect);
    return v;
  };
  const S k1 = pair(1);
  const S k3 = pair(3);
  out.m0 += half_dt * H0 * k1;
  out.m2 += half_dt * H0 * k3;
  if (value_of(H2) != 0.0) {
    out.m0 += half_dt * H2 * k3;
    out.m2 += half_dt * H2 * pair(5);
  }
  (void)kappa;
}

} // namespace detail

/// Convolution moments at depth tau for frequency j from precomputed cell
/// sources, including the ground reflection of weight earth_albedo.
template <Scalar S>
Moments<S> source_moments(std::size_t j, double tau, const CellSources<S>& src,
                          const Problem<S>& problem, const SolverConfig& cfg)
{
  const auto& depth = problem.depth;
  const S& kappa = problem.spectrum.kappa[j];
  const double Z = depth.Z;
  const double albedo = cfg.boundary.earth_albedo;
  if (tau < 0.0 || tau > Z) throw std::domain_error("source_moments: tau outside [0, Z]");
  detail::check_kernel_domain(kappa, Z + tau);

  Moments<S> out;
  if (cfg.kernel.quadrature == KernelQuadrature::exact_cells) {
    for (std::size_t c = 0; c < depth.cells(); ++c) {
      const double a = depth.tau[c];
      const double b = depth.tau[c + 1];
      S w1 = detail::direct_cell_weight(1, kappa, tau, a, b);
      S w3 = detail::direct_cell_weight(3, kappa, tau, a, b);
      if (albedo != 0.0) {
        w1 += albedo * detail::shifted_cell_weight(1, kappa, tau, a, b);
        w3 += albedo * detail::shifted_cell_weight(3, kappa, tau, a, b);
      }
      out.m0 += 0.5 * src.h0[c] * w1;
      out.m2 += 0.5 * src.h0[c] * w3;
      if (src.has_h2) {
        S w5 = detail::direct_cell_weight(5, kappa, tau, a, b);
        if (albedo != 0.0) w5 += albedo * detail::shifted_cell_weight(5, kappa, tau, a, b);
        out.m0 += 0.5 * src.h2[c] * w3;
        out.m2 += 0.5 * src.h2[c] * w5;
      }
    }
    return out;
  }

  // The original program sweeps [0, Z] in one pass; otherwise the range is
  // split at tau so the E1 singularity sits on a sampling boundary.
  auto sweep = [&](double lo, double hi) {
    const auto smp = detail::sampling(lo, hi, cfg.kernel, cfg.strict_compat);
    for (std::size_t m = 0; m < smp.count; ++m) {
      const double t = smp.first + static_cast<double>(m) * smp.step;
      if (value_of(kappa) * (t - tau) == 0.0) continue;
      const std::size_t c = depth.cell_of(t);
      detail::accumulate_sample(out, kappa, kappa * src.h0[c], kappa * src.h2[c],
                                kappa * std::abs(tau - t), kappa * (tau + t), albedo, smp.step);
    }
  };
  if (cfg.strict_compat) {
    sweep(0.0, Z);
  } else {
    sweep(0.0, tau);
    sweep(tau, Z);
  }
  return out;
}

/// Convolution moments at depth tau for frequency j from the current state.
template <Scalar S>
Moments<S> source_moments(std::size_t j, double tau, const RadiationField<S>& field,
                          const TemperatureProfile<S>& T, const Problem<S>& problem,
                          const SolverConfig& cfg)
{
  return source_moments(j, tau, cell_sources(j, field, T, problem, cfg.kernel), problem, cfg);
}

/// Solar contribution to the moments at depth tau: the top-of-atmosphere
/// beam (fraction 1 - alpha_bottom) and the ground beam (fraction alpha_bottom),
/// the latter attenuated by the whole column unless attenuate_bottom is off.
template <Scalar S>
Moments<S> boundary_source(std::size_t j, double tau, const Problem<S>& problem,
                           const SolverConfig& cfg)
{
  const auto& bc = cfg.boundary;
  const double Z = problem.depth.Z;
  const double q = bc.source_scale * cfg.sun(problem.spectrum.nu[j]);
  Moments<S> out;
  if (q == 0.0) return out;
  S kappa = problem.spectrum.kappa[j];
  if (cfg.strict_compat) kappa = max_value(kappa, S{0.01});
  const double bottom_shift = bc.attenuate_bottom ? Z : 0.0;
  const double bottom_shift_s2 = cfg.strict_compat ? 0.0 : bottom_shift;
  if (bc.alpha_bottom != 0.0) {
    out.m0 += bc.alpha_bottom * detail::expint_any(3, kappa * (tau + bottom_shift));
    out.m2 += bc.alpha_bottom * detail::expint_any(5, kappa * (tau + bottom_shift_s2));
  }
  if (bc.alpha_bottom != 1.0) {
    out.m0 += (1.0 - bc.alpha_bottom) * detail::expint_any(3, kappa * (Z - tau));
    out.m2 += (1.0 - bc.alpha_bottom) * detail::expint_any(5, kappa * (Z - tau));
  }
  out.m0 *= 0.5 * q;
  out.m2 *= 0.5 * q;
  return out;
}

/// Generalized albedo: levels (tau_k, alpha_k) reflect the radiation emitted
/// above them back up from the ground,
///   sum_k alpha_k kappa/2 int_{tau_k}^Z E1(kappa(t + tau - tau_k)) h0(t) dt
/// (plus the matching E3 term for the mu^2 source and the S2 analogue).
template <Scalar S>
Moments<S> multilayer_albedo_moments(std::size_t j, double tau, const CellSources<S>& src,
                                     const Problem<S>& problem,
                                     const std::vector<AlbedoLevel>& levels,
                                     const SolverConfig& cfg)
{
  const auto& depth = problem.depth;
  const S& kappa = problem.spectrum.kappa[j];
  const double Z = depth.Z;
  double total = 0.0;
  for (const auto& lv : levels) {
    if (lv.tau < 0.0 || lv.tau >= Z)
      throw std::domain_error("albedo level depth outside [0, Z)");
    total += lv.alpha;
  }
  if (total >= 1.0) throw std::invalid_argument("albedo level weights must sum below 1");

  Moments<S> out;
  for (const auto& lv : levels) {
    if (lv.alpha == 0.0) continue;
    const double shift = tau - lv.tau;
    detail::check_kernel_domain(kappa, Z + shift);
    Moments<S> part;
    if (cfg.kernel.quadrature == KernelQuadrature::exact_cells) {
      for (std::size_t c = depth.cell_of(lv.tau); c < depth.cells(); ++c) {
        const double a = std::max(depth.tau[c], lv.tau);
        const double b = depth.tau[c + 1];
        if (!(b > a)) continue;
        const S w1 = detail::shifted_cell_weight(1, kappa, shift, a, b);
        const S w3 = detail::shifted_cell_weight(3, kappa, shift, a, b);
        part.m0 += 0.5 * src.h0[c] * w1;
        part.m2 += 0.5 * src.h0[c] * w3;
        if (src.has_h2) {
          const S w5 = detail::shifted_cell_weight(5, kappa, shift, a, b);
          part.m0 += 0.5 * src.h2[c] * w3;
          part.m2 += 0.5 * src.h2[c] * w5;
        }
      }
    } else {
      const auto smp = detail::sampling(lv.tau, Z, cfg.kernel, cfg.strict_compat);
      for (std::size_t m = 0; m < smp.count; ++m) {
        const double t = smp.first + static_cast<double>(m) * smp.step;
        const std::size_t c = depth.cell_of(t);
        const S x = kappa * (t + shift);
        const S half = S{0.5 * smp.step};
        part.m0 += half * kappa * src.h0[c] * detail::expint_any(1, x);
        part.m2 += half * kappa * src.h0[c] * detail::expint_any(3, x);
        if (src.has_h2) {
          part.m0 += half * kappa * src.h2[c] * detail::expint_any(3, x);
          part.m2 += half * kappa * src.h2[c] * detail::expint_any(5, x);
        }
      }
    }
    out.m0 += lv.alpha * part.m0;
    out.m2 += lv.alpha * part.m2;
  }
  return out;
}

/// Mean-intensity contribution of the albedo levels.
template <Scalar S>
S multilayer_albedo_kernel(double tau, std::size_t j, const RadiationField<S>& field,
                           const TemperatureProfile<S>& T, const Problem<S>& problem,
                           const std::vector<AlbedoLevel>& levels, const SolverConfig& cfg)
{
  if (levels.empty()) return S{0.0};
  const auto src = cell_sources(j, field, T, problem, cfg.kernel);
  return multilayer_albedo_moments(j, tau, src, problem, levels, cfg).m0;
}

namespace detail {

// Node moments for one frequency. Cell weights are differences of E2/E4/E6
// at node-pair arguments kappa|tau_i - tau_k| and kappa(tau_i + tau_k); on an
// equally spaced grid these depend only on |i - k| and i + k, so a 1D table
// of length 2(n-1)+1 suffices, otherwise an n x n table per order is built.
template <Scalar S>
void exact_node_moments(std::size_t j, const CellSources<S>& src, const Problem<S>& problem,
                        double albedo, std::span<S> m0, std::span<S> m2)
{
  const auto& depth = problem.depth;
  const std::size_t n = depth.size();
  const std::size_t cells = depth.cells();
  const S& kappa = problem.spectrum.kappa[j];
  const bool reflect = albedo != 0.0;
  const bool h2 = src.has_h2;
  const bool flat = depth.uniform();

  // tab[o] holds E_{2+2o}; direct and reflected arguments share one table when flat.
  std::vector<S> direct[3], reflected[3];
  auto fill = [&](std::vector<S>& t, int q, auto arg, std::size_t count) {
    t.resize(count);
    for (std::size_t m = 0; m < count; ++m) t[m] = expint_any(q, kappa * arg(m));
  };
  for (int o = 0; o < 3; ++o) {
    if (o == 2 && !h2) break;
    const int q = 2 + 2 * o;
    if (flat) {
      const double h = depth.step();
      fill(direct[o], q, [h](std::size_t m) { return static_cast<double>(m) * h; },
           reflect ? 2 * cells + 1 : cells + 1);
    } else {
      fill(direct[o], q,
           [&](std::size_t m) { return std::abs(depth.tau[m / n] - depth.tau[m % n]); }, n * n);
      if (reflect)
        fill(reflected[o], q, [&](std::size_t m) { return depth.tau[m / n] + depth.tau[m % n]; },
             n * n);
    }
  }
  auto Ed = [&](int o, std::size_t i, std::size_t k) -> const S& {
    return flat ? direct[o][i > k ? i - k : k - i] : direct[o][i * n + k];
  };
  auto Er = [&](int o, std::size_t i, std::size_t k) -> const S& {
    return flat ? direct[o][i + k] : reflected[o][i * n + k];
  };
  auto weight = [&](int o, std::size_t i, std::size_t c) {
    S w = c < i ? S{Ed(o, i, c + 1) - Ed(o, i, c)} : S{Ed(o, i, c) - Ed(o, i, c + 1)};
    if (reflect) w += albedo * (Er(o, i, c) - Er(o, i, c + 1));
    return w;
  };

  for (std::size_t i = 0; i < n; ++i) {
    S a0{0.0};
    S a2{0.0};
    for (std::size_t c = 0; c < cells; ++c) {
      const S w1 = weight(0, i, c);
      const S w3 = weight(1, i, c);
      a0 += src.h0[c] * w1;
      a2 += src.h0[c] * w3;
      if (h2) {
        a0 += src.h2[c] * w3;
        a2 += src.h2[c] * weight(2, i, c);
      }
    }
    m0[i] = 0.5 * a0;
    m2[i] = 0.5 * a2;
  }
}

} // namespace detail

/// One sweep of the integral equation: new J and S2 at every (frequency,
/// depth) node from the current temperature and moments. Frequencies are
/// independent; the inputs are only read.
template <Scalar S>
RadiationField<S> update_field(const RadiationField<S>& field, const TemperatureProfile<S>& T,
                               const Problem<S>& problem, const SolverConfig& cfg)
{
  const std::size_t n_nu = problem.n_nu();
  const std::size_t n_tau = problem.n_tau();
  if (field.n_nu != n_nu || field.n_tau != n_tau || T.size() != n_tau)
    throw std::invalid_argument("update_field: field/temperature shape mismatch");
  const double Z = problem.depth.Z;
  for (std::size_t j = 0; j < n_nu; ++j) detail::check_kernel_domain(problem.spectrum.kappa[j], 2 * Z);

  auto out = RadiationField<S>::zeros(n_nu, n_tau);
  const bool exact = cfg.kernel.quadrature == KernelQuadrature::exact_cells;
  std::vector<S> m0(n_tau), m2(n_tau);
  for (std::size_t j = 0; j < n_nu; ++j) {
    const auto src = cell_sources(j, field, T, problem, cfg.kernel);
    if (exact) {
      detail::exact_node_moments<S>(j, src, problem, cfg.boundary.earth_albedo, m0, m2);
    } else {
      for (std::size_t i = 0; i < n_tau; ++i) {
        const auto mo = source_moments(j, problem.depth.tau[i], src, problem, cfg);
        m0[i] = mo.m0;
        m2[i] = mo.m2;
      }
    }
    for (std::size_t i = 0; i < n_tau; ++i) {
      const double tau = problem.depth.tau[i];
      const auto bs = boundary_source(j, tau, problem, cfg);
      S J = m0[i] + bs.m0;
      S S2 = m2[i] + bs.m2;
      if (!cfg.kernel.albedo_levels.empty()) {
        const auto lv =
            multilayer_albedo_moments(j, tau, src, problem, cfg.kernel.albedo_levels, cfg);
        J += lv.m0;
        S2 += lv.m2;
      }
      out.j(j, i) = J;
      out.s2(j, i) = S2;
    }
  }
  return out;
}

/// Intensity I_nu(tau, mu) rebuilt from the converged sources by integrating
/// along the ray. Upward rays start from the ground with the (possibly
/// attenuated) solar beam plus the reflected downward thermal intensity;
/// downward rays start from the top with the top-of-atmosphere beam. Albedo
/// levels beyond the ground are not included.
template <Scalar S>
S reconstruct_intensity(double tau, double mu, std::size_t j, const CellSources<S>& src,
                        const Problem<S>& problem, const SolverConfig& cfg)
{
  using std::exp;
  if (mu == 0.0 || !(std::abs(mu) <= 1.0))
    throw std::invalid_argument("reconstruct_intensity: mu must be in [-1,1] and nonzero");
  const auto& depth = problem.depth;
  const auto& bc = cfg.boundary;
  const double Z = depth.Z;
  if (tau < 0.0 || tau > Z) throw std::domain_error("reconstruct_intensity: tau outside [0, Z]");
  const S& kappa = problem.spectrum.kappa[j];
  const double q = bc.source_scale * cfg.sun(problem.spectrum.nu[j]);
  const double m = std::abs(mu);
  const double m2 = m * m;
  auto source = [&](std::size_t c) { return src.has_h2 ? S{src.h0[c] + src.h2[c] * m2} : src.h0[c]; };

  S I{0.0};
  if (mu > 0.0) {
    S ground = bc.alpha_bottom * q * m * (bc.attenuate_bottom ? exp(-kappa * Z / m) : S{1.0});
    if (bc.earth_albedo != 0.0) {
      S down{0.0};
      for (std::size_t c = 0; c < depth.cells(); ++c)
        down += source(c) * (exp(-kappa * depth.tau[c] / m) - exp(-kappa * depth.tau[c + 1] / m));
      ground += bc.earth_albedo * down;
    }
    I = exp(-kappa * tau / m) * ground;
    for (std::size_t c = 0; c < depth.cells() && depth.tau[c] < tau; ++c) {
      const double b = std::min(depth.tau[c + 1], tau);
      I += source(c) * (exp(-kappa * (tau - b) / m) - exp(-kappa * (tau - depth.tau[c]) / m));
    }
  } else {
    I = exp(-kappa * (Z - tau) / m) * ((1.0 - bc.alpha_bottom) * q * m);
    for (std::size_t c = 0; c < depth.cells(); ++c) {
      if (!(depth.tau[c + 1] > tau)) continue;
      const double a = std::max(depth.tau[c], tau);
      I += source(c) * (exp(-kappa * (a - tau) / m) - exp(-kappa * (depth.tau[c + 1] - tau) / m));
    }
  }
  return I;
}

/// Intensity along the ray of direction mu at every depth of `taus`
/// (ascending), marching cell by cell from the boundary where the ray enters.
/// Agrees with reconstruct_intensity at each point at a cost of
/// O(cells + points) instead of O(cells) per point.
template <Scalar S>
std::vector<S> intensity_along_ray(double mu, std::size_t j, const CellSources<S>& src,
                                   const Problem<S>& problem, const SolverConfig& cfg,
                                   const std::vector<double>& taus)
{
  using std::exp;
  if (mu == 0.0 || !(std::abs(mu) <= 1.0))
    throw std::invalid_argument("intensity_along_ray: mu must be in [-1,1] and nonzero");
  const auto& depth = problem.depth;
  const std::size_t cells = depth.cells();
  const double Z = depth.Z;
  const S& kappa = problem.spectrum.kappa[j];
  const double m = std::abs(mu);
  auto source = [&](std::size_t c) { return src.has_h2 ? S{src.h0[c] + src.h2[c] * (m * m)} : src.h0[c]; };
  auto advance = [&](S& I, std::size_t c, double length) {
    const S decay = exp(-kappa * length / m);
    I = I * decay + source(c) * (1.0 - decay);
  };

  std::vector<S> out(taus.size());
  if (mu > 0.0) {
    S I = reconstruct_intensity(0.0, mu, j, src, problem, cfg);
    double pos = 0.0;
    std::size_t c = 0;
    for (std::size_t k = 0; k < taus.size(); ++k) {
      const double target = taus[k];
      while (pos < target) {
        while (c + 1 < cells && depth.tau[c + 1] <= pos) ++c;
        const double b = std::min(depth.tau[c + 1], target);
        advance(I, c, b - pos);
        pos = b;
      }
      out[k] = I;
    }
  } else {
    S I = reconstruct_intensity(Z, mu, j, src, problem, cfg);
    double pos = Z;
    std::size_t c = cells - 1;
    for (std::size_t k = taus.size(); k-- > 0;) {
      const double target = taus[k];
      while (pos > target) {
        while (c > 0 && depth.tau[c] >= pos) --c;
        const double a = std::max(depth.tau[c], target);
        advance(I, c, pos - a);
        pos = a;
      }
      out[k] = I;
    }
  }
  return out;
}

template <Scalar S>
S reconstruct_intensity(double tau, double mu, std::size_t j, const RadiationField<S>& field,
                        const TemperatureProfile<S>& T, const Problem<S>& problem,
                        const SolverConfig& cfg)
{
  return reconstruct_intensity(tau, mu, j, cell_sources(j, field, T, problem, cfg.kernel), problem,
                               cfg);
}

} // namespace rtstrat
