// experiments.hpp - Numerical studies built on the solver
//
// Every study returns its data; writing files is left to the caller (see
// write_curve and the command line tool).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "rtstrat/atmosphere.hpp"
#include "rtstrat/config.hpp"
#include "rtstrat/sensitivity.hpp"
#include "rtstrat/solver_driver.hpp"
#include "rtstrat/spectral_grid.hpp"
#include "rtstrat/tsv.hpp"

namespace rtstrat {

struct ExperimentSettings
{
  std::size_t n_tau = 60;
  double height = 12.0;
  std::size_t jmax = 400;
  double nu_min = 0.05;
  double nu_max = 15.0;
  double a_is = 0.0;
  double a_rs = 0.0;
  bool legacy_scattering_offset = false;
  /// Isotropic scattering layer bounds as fractions of Z.
  double t1_frac = 0.6;
  double t2_frac = 0.9;
  /// Absorption 0.5 1{nu<6} + 0.1 for the first three boundary cases instead
  /// of 0.5 (0.1 + 1{nu<3}).
  bool legacy_prop2_kappa = false;
  double grey_kappa = 0.5;
  SolverConfig solver;

  SpectralGrid<double> nodes() const { return build_wavelength_uniform(jmax, nu_min, nu_max); }
  OpticalGrid depth() const { return build_grid(n_tau, height); }

  template <typename F>
  Problem<double> problem(F&& kappa) const
  {
    auto d = depth();
    auto sc = scattering(d);
    return {with_kappa<double>(nodes(), kappa), std::move(d), std::move(sc)};
  }

  ScatteringProfile scattering(const OpticalGrid& d) const
  {
    return build_scattering(d, a_is, a_rs, legacy_scattering_offset, t1_frac, t2_frac);
  }
};

/// Altitude/temperature pairs for nodes i >= 1.
struct Curve
{
  std::vector<double> altitude;
  std::vector<double> T;

  Table rows() const
  {
    Table t;
    for (std::size_t k = 0; k < T.size(); ++k) t.push_back({altitude[k], T[k]});
    return t;
  }
};

inline Curve make_curve(const OpticalGrid& depth, const std::vector<double>& T)
{
  Curve c;
  for (std::size_t i = 1; i < depth.size(); ++i) {
    c.altitude.push_back(depth.altitude[i]);
    c.T.push_back(T[i]);
  }
  return c;
}

inline double max_abs_difference(const Curve& a, const Curve& b)
{
  double m = 0.0;
  for (std::size_t k = 0; k < std::min(a.T.size(), b.T.size()); ++k)
    m = std::max(m, std::abs(a.T[k] - b.T[k]));
  return m;
}

struct CaseResult
{
  Curve curve;
  SolveReport report;
};

inline CaseResult run_case(const Problem<double>& problem, const SolverConfig& cfg)
{
  auto sol = fixed_point_solve(problem, cfg);
  return {make_curve(problem.depth, sol.T), std::move(sol.report)};
}

// Grey reference ------------------------------------------------------------

inline CaseResult run_grey(const ExperimentSettings& s)
{
  const double k = s.grey_kappa;
  return run_case(s.problem([k](double) { return k; }), s.solver);
}

// Top versus ground illumination ---------------------------------------------

struct Prop2Result
{
  /// T0 grey reference, T1 top source, T2 ground source attenuated, T3 ground
  /// source unattenuated, T4/T5 as T1/T2 with a doubled sun temperature and
  /// absorption confined to nu < 0.2.
  std::map<std::string, CaseResult> cases;
  double gap_12 = 0.0;
  double gap_45 = 0.0;
};

inline Prop2Result run_prop2(const ExperimentSettings& s)
{
  Prop2Result r;
  r.cases["T0"] = run_grey(s);

  auto wide = [&](double nu) {
    return s.legacy_prop2_kappa ? 0.5 * (nu < 6.0) + 0.1 : 0.5 * (0.1 + (nu < 3.0));
  };
  auto narrow = [](double nu) { return 0.5 * (0.1 + (nu < 0.2)); };

  auto cfg_for = [&](double alpha_bottom, bool attenuate, bool hot) {
    SolverConfig c = s.solver;
    c.boundary.earth_albedo = 0.0;
    c.boundary.alpha_bottom = alpha_bottom;
    c.boundary.attenuate_bottom = attenuate;
    if (hot) c.sun.temperature = 2.0 * s.solver.sun.temperature;
    return c;
  };

  const auto p_wide = s.problem(wide);
  const auto p_narrow = s.problem(narrow);
  r.cases["T1"] = run_case(p_wide, cfg_for(0.0, true, false));
  r.cases["T2"] = run_case(p_wide, cfg_for(1.0, true, false));
  r.cases["T3"] = run_case(p_wide, cfg_for(1.0, false, false));
  r.cases["T4"] = run_case(p_narrow, cfg_for(0.0, true, true));
  r.cases["T5"] = run_case(p_narrow, cfg_for(1.0, true, true));
  r.gap_12 = max_abs_difference(r.cases["T1"].curve, r.cases["T2"].curve);
  r.gap_45 = max_abs_difference(r.cases["T4"].curve, r.cases["T5"].curve);
  return r;
}

inline const std::map<std::string, std::string>& prop2_files()
{
  static const std::map<std::string, std::string> f{{"T0", "grey.txt"},
                                                    {"T1", "truethrough.txt"},
                                                    {"T2", "correctedthrough.txt"},
                                                    {"T3", "through.txt"},
                                                    {"T4", "truethrough2.txt"},
                                                    {"T5", "correctedthrough2.txt"}};
  return f;
}

// Ground albedo ----------------------------------------------------------------

struct AlbedoResult
{
  /// Q1: lambda = 1; Q07: lambda = 0.7; mirror3: albedo 0.3 with attenuated
  /// source scaled by 1/0.7; albedo03Q0: albedo 0.3 with the plain source.
  std::map<std::string, CaseResult> cases;
};

inline AlbedoResult run_albedo(const ExperimentSettings& s)
{
  const auto p = s.problem([](double nu) { return 0.5 * ((nu < 6.0) + 0.1); });
  auto cfg_for = [&](double albedo, bool attenuate, double lambda) {
    SolverConfig c = s.solver;
    c.boundary.alpha_bottom = 1.0;
    c.boundary.earth_albedo = albedo;
    c.boundary.attenuate_bottom = attenuate;
    c.boundary.source_scale = lambda;
    return c;
  };
  AlbedoResult r;
  r.cases["Q1"] = run_case(p, cfg_for(0.0, false, 1.0));
  r.cases["Q07"] = run_case(p, cfg_for(0.0, false, 0.7));
  r.cases["mirror3"] = run_case(p, cfg_for(0.3, true, 1.0 / 0.7));
  r.cases["albedo03Q0"] = run_case(p, cfg_for(0.3, false, 1.0));
  return r;
}

// Sign map -----------------------------------------------------------------------

struct SignmapResult
{
  std::vector<SwitchPoint> along_nu;
  std::vector<SwitchPoint> along_altitude;
  SignMap map;
};

inline Table switch_rows(const std::vector<SwitchPoint>& pts)
{
  Table t;
  for (const auto& p : pts) t.push_back({p.altitude, p.nu});
  return t;
}

inline SignmapResult run_signmap(const ExperimentSettings& s, double max_altitude = 6.0)
{
  const double k = s.grey_kappa;
  const auto p = s.problem([k](double) { return k; });
  const auto sol = fixed_point_solve(p, s.solver);
  SignmapResult r;
  r.map = sign_criterion(sol.field, sol.T, p.spectrum);
  r.along_nu = switch_points(r.map, p.spectrum, p.depth, true, max_altitude);
  r.along_altitude = switch_points(r.map, p.spectrum, p.depth, false, max_altitude);
  return r;
}

// Sensitivity to band absorption ----------------------------------------------------

inline const std::vector<BandPerturbation>& sensitivity_bands()
{
  // Column order of the output file: case 1, case 2, case 0.
  static const std::vector<BandPerturbation> b{{0.5, 0.3, 0.4}, {0.5, 0.6, 0.8}, {0.5, 0.2, 0.3}};
  return b;
}

struct SensitivityTable
{
  std::vector<double> altitude;
  /// One derivative profile per band of sensitivity_bands(), nodes i >= 1.
  std::vector<std::vector<double>> dT;

  Table rows() const
  {
    Table t;
    for (std::size_t k = 0; k < altitude.size(); ++k) {
      std::vector<double> row{altitude[k], 0.0};
      for (const auto& col : dT) row.push_back(col[k]);
      t.push_back(std::move(row));
    }
    return t;
  }
};

inline SensitivityTable run_sensitivity(const ExperimentSettings& s,
                                        std::vector<BandPerturbation> bands = sensitivity_bands())
{
  const auto nodes = s.nodes();
  const auto depth = s.depth();
  const auto sc = s.scattering(depth);
  SensitivityTable t;
  for (std::size_t i = 1; i < depth.size(); ++i) t.altitude.push_back(depth.altitude[i]);
  for (auto band : bands) {
    band.base = s.grey_kappa;
    const auto r = sensitivity_run(nodes, band, depth, sc, s.solver);
    t.dT.emplace_back(r.dT.begin() + 1, r.dT.end());
  }
  return t;
}

/// Number of strict sign changes of a profile restricted to altitude <= z_max
/// (exact zeros are skipped).
inline int sign_changes(const std::vector<double>& altitude, const std::vector<double>& v,
                        double z_max)
{
  int changes = 0;
  int last = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (altitude[k] > z_max) break;
    const int sg = (v[k] > 0.0) - (v[k] < 0.0);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

// Predictor versus the differentiated solver ---------------------------------------

struct PredictorComparison
{
  std::vector<double> altitude;
  std::vector<double> predicted;
  std::vector<double> dT;
  double agreement = 0.0;
};

inline PredictorComparison run_predictor(const ExperimentSettings& s, BandPerturbation band)
{
  const auto nodes = s.nodes();
  const auto depth = s.depth();
  const auto sc = s.scattering(depth);
  const auto problem = shifted_problem(nodes, band, 0.0, depth, sc);
  const auto sol = fixed_point_solve(problem, s.solver);
  const auto pred = band_predictor(sol, problem, s.solver, band.nu_lo, band.nu_hi);
  const auto sens = sensitivity_run(nodes, band, depth, sc, s.solver);

  PredictorComparison c;
  std::size_t agree = 0;
  for (std::size_t i = 1; i < depth.size(); ++i) {
    c.altitude.push_back(depth.altitude[i]);
    c.predicted.push_back(pred[i]);
    c.dT.push_back(sens.dT[i]);
    if ((pred[i] > 0.0) == (sens.dT[i] > 0.0)) ++agree;
  }
  c.agreement = static_cast<double>(agree) / static_cast<double>(c.dT.size());
  return c;
}

// Local absorption bump --------------------------------------------------------------

struct Prop1Result
{
  std::vector<double> altitude;
  std::vector<double> T;
  std::vector<double> T_bumped;
  /// Nodes where the unperturbed profile decreases with altitude.
  std::vector<bool> decreasing;
  /// Largest shift T_bumped - T over decreasing nodes (should be <= 0).
  double max_shift_where_decreasing = 0.0;
  std::size_t bump_cell = 0;
  double bump_altitude = 0.0;
  double measured_at_bump = 0.0;
  double predicted_at_bump = 0.0;
};

/// Absorption r(z) = 1 + delta on the altitude cell holding y. The optical
/// depth tau_r(z) = int_0^z r exp(-zeta) dzeta is used as the depth variable
/// of the bumped problem, whose nodes are tau_r at the original altitudes, so
/// both temperatures are compared at identical altitudes.
inline Prop1Result run_prop1_check(const ExperimentSettings& s, double delta = 0.05, double y = 2.0)
{
  const double k = s.grey_kappa;
  const auto base = s.problem([k](double) { return k; });
  const auto& d = base.depth;

  Prop1Result r;
  r.bump_cell = d.cell_of(optical_depth_of_altitude(y));
  const std::size_t c = r.bump_cell;
  const double shift = delta * (d.tau[c + 1] - d.tau[c]);
  std::vector<double> tau_r(d.tau);
  for (std::size_t i = c + 1; i < tau_r.size(); ++i) tau_r[i] += shift;

  Problem<double> bumped{base.spectrum, grid_from_nodes(tau_r, d.altitude), base.scattering};
  const auto s0 = fixed_point_solve(base, s.solver);
  const auto s1 = fixed_point_solve(bumped, s.solver);

  const std::size_t n = d.size();
  r.altitude = d.altitude;
  r.T = s0.T;
  r.T_bumped = s1.T;
  r.decreasing.resize(n);
  r.max_shift_where_decreasing = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    r.decreasing[i] = s0.T[hi] < s0.T[lo];
    if (r.decreasing[i])
      r.max_shift_where_decreasing = std::max(r.max_shift_where_decreasing, s1.T[i] - s0.T[i]);
  }

  r.bump_altitude = 0.5 * (d.altitude[c] + d.altitude[c + 1]);
  r.measured_at_bump = 0.5 * ((s1.T[c] - s0.T[c]) + (s1.T[c + 1] - s0.T[c + 1]));
  const double Ty = 0.5 * (s0.T[c] + s0.T[c + 1]);
  const double dTdz = (s0.T[c + 1] - s0.T[c]) / (d.altitude[c + 1] - d.altitude[c]);
  r.predicted_at_bump = 4.0 * stefan_boltzmann_scaled * Ty * Ty * Ty * delta * dTdz;
  return r;
}

} // namespace rtstrat
