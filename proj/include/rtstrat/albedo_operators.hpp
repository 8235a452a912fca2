// albedo_operators.hpp - Ground boundary operators on angular node values
//
// An albedo operator maps the outgoing intensity at the ground, f(mu) =
// I(0,-mu), to the incoming one, I(0,mu), both sampled on a fixed
// Gauss-Legendre node set mu_q in (0,1).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtstrat/quadrature.hpp"
#include "rtstrat/special_functions.hpp"

namespace rtstrat {

using AngularFunction = std::vector<double>;

class AlbedoOperator
{
public:
  using Map = std::function<AngularFunction(const AngularFunction&)>;

  AlbedoOperator(std::string name, Map map, bool frequency_dependent)
      : name_(std::move(name)), map_(std::move(map)), frequency_dependent_(frequency_dependent)
  {
  }

  AngularFunction operator()(const AngularFunction& f) const { return map_(f); }
  const std::string& name() const { return name_; }
  bool frequency_dependent() const { return frequency_dependent_; }

private:
  std::string name_;
  Map map_;
  bool frequency_dependent_;
};

namespace detail {

inline void check_alpha(double alpha)
{
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("albedo operator: alpha must lie in [0,1]");
}

} // namespace detail

inline AlbedoOperator identity_albedo()
{
  return {"identity", [](const AngularFunction& f) { return f; }, false};
}

/// (A f)(mu) = alpha f(mu) + (1 - alpha) int_0^1 mu'^p f(mu') dmu'.
inline AlbedoOperator specular_diffuse(double alpha, double p, const AngularQuadrature& quad)
{
  detail::check_alpha(alpha);
  if (!(p > 0.0)) throw std::invalid_argument("specular_diffuse: p must be positive");
  std::vector<double> w(quad.size());
  for (std::size_t q = 0; q < w.size(); ++q) w[q] = quad.weight[q] * std::pow(quad.mu[q], p);
  return {"specular_diffuse",
          [alpha, w](const AngularFunction& f) {
            if (f.size() != w.size())
              throw std::invalid_argument("specular_diffuse: node count mismatch");
            double diffuse = 0.0;
            for (std::size_t q = 0; q < f.size(); ++q) diffuse += w[q] * f[q];
            AngularFunction out(f.size());
            for (std::size_t q = 0; q < f.size(); ++q)
              out[q] = alpha * f[q] + (1.0 - alpha) * diffuse;
            return out;
          },
          false};
}

/// (A f)(mu) = alpha f(mu) + (1 - alpha) b(nu, T_e).
inline AlbedoOperator thermal_accommodation(double alpha, double T_e, double nu)
{
  detail::check_alpha(alpha);
  if (T_e < 0.0) throw std::invalid_argument("thermal_accommodation: T_e must be >= 0");
  const double emission = (1.0 - alpha) * planck(nu, T_e);
  return {"thermal_accommodation",
          [alpha, emission](const AngularFunction& f) {
            AngularFunction out(f.size());
            for (std::size_t q = 0; q < f.size(); ++q) out[q] = alpha * f[q] + emission;
            return out;
          },
          true};
}

struct AccretivityReport
{
  double min_D = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  std::size_t trials = 0;
  /// Pairs violating the pointwise contraction (Af2 - Af1)+ <= (f2 - f1)+.
  std::size_t pointwise_violations = 0;
};

/// Samples nonnegative pairs (f1, f2) and evaluates
/// D = sum_q w_q mu_q [(f2 - f1)+ - (A f2 - A f1)+].
/// A violation is D < -tol. Pairs mix smooth, spiky and sign-alternating shapes.
inline AccretivityReport check_non_accretive(const AlbedoOperator& op, const AngularQuadrature& quad,
                                             std::size_t trials, std::uint64_t seed = 20240607,
                                             double tol = 1e-12)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> shape(0, 2);
  const std::size_t n = quad.size();

  auto sample = [&]() {
    AngularFunction f(n);
    switch (shape(rng)) {
    case 0:
      for (auto& v : f) v = unit(rng);
      break;
    case 1: {
      const double a = unit(rng), b = 4.0 * unit(rng), c = unit(rng);
      for (std::size_t q = 0; q < n; ++q) f[q] = a + c * std::pow(quad.mu[q], b);
      break;
    }
    default:
      for (auto& v : f) v = unit(rng) < 0.2 ? 10.0 * unit(rng) : 0.0;
    }
    return f;
  };

  AccretivityReport rep;
  rep.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto f1 = sample();
    const auto f2 = sample();
    const auto g1 = op(f1);
    const auto g2 = op(f2);
    double D = 0.0;
    bool pointwise = true;
    for (std::size_t q = 0; q < n; ++q) {
      const double in = std::max(f2[q] - f1[q], 0.0);
      const double outp = std::max(g2[q] - g1[q], 0.0);
      D += quad.weight[q] * quad.mu[q] * (in - outp);
      if (outp > in + tol) pointwise = false;
    }
    rep.min_D = std::min(rep.min_D, D);
    if (D < -tol) ++rep.violations;
    if (!pointwise) ++rep.pointwise_violations;
  }
  return rep;
}

} // namespace rtstrat
