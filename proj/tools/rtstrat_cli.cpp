// rtstrat_cli - run the numerical studies and write their TSV files
//
//   rtstrat_cli grey --out results
//   rtstrat_cli prop2 --ntau 119 --strict-compat
//   rtstrat_cli solve --kappa-file kappa.dat --column 1
//
// Options may come from a config file (--config, TOML/INI key = value);
// command line flags win over the file, the file over the built-in defaults.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "rtstrat/rtstrat.hpp"

namespace fs = std::filesystem;
using namespace rtstrat;

namespace {

struct Options
{
  ExperimentSettings s;
  std::string out = ".";
  std::string quadrature = "exact";
  bool no_attenuate = false;
  double kappa_floor = kappa_min;
  std::size_t max_nodes = max_file_nodes;
  double early_stop = 0.0;
  bool show_report = false;

  // solve
  std::string kappa_file;
  int column = 0;
  std::string name = "solution.txt";

  // prop1
  double bump_delta = 0.05;
  double bump_altitude = 2.0;
};

void add_options(CLI::App& app, Options& o)
{
  auto& s = o.s;
  auto& c = s.solver;
  app.add_option("--out", o.out, "output directory")->capture_default_str();

  // Grids
  app.add_option("--ntau", s.n_tau, "depth nodes")->capture_default_str();
  app.add_option("--height", s.height, "top altitude (km); Z = 1 - exp(-height)")->capture_default_str();
  app.add_option("--jmax", s.jmax, "frequency nodes")->capture_default_str();
  app.add_option("--nu-min", s.nu_min, "lowest frequency (wavelength end)")->capture_default_str();
  app.add_option("--nu-max", s.nu_max, "highest frequency")->capture_default_str();
  app.add_option("--grey-kappa", s.grey_kappa, "constant absorption of the grey runs")->capture_default_str();

  // Scattering
  app.add_option("--ais", s.a_is, "isotropic scattering maximum")->capture_default_str();
  app.add_option("--ars", s.a_rs, "Rayleigh scattering maximum")->capture_default_str();
  app.add_option("--tm1", s.t1_frac, "lower scattering level, fraction of Z")->capture_default_str();
  app.add_option("--tm2", s.t2_frac, "upper scattering level, fraction of Z")->capture_default_str();
  app.add_flag("--legacy-scattering-offset", s.legacy_scattering_offset,
               "sample scattering at i Z/n like the original program");
  app.add_flag("--legacy-prop2-kappa", s.legacy_prop2_kappa,
               "prop2: use 0.5*1{nu<6}+0.1 for the first three boundary cases");

  // Sun and boundary
  app.add_option("--tsun", c.sun.temperature, "scaled sun temperature")->capture_default_str();
  app.add_option("--sb-sun", c.sun.scale, "scaled sunlight power")->capture_default_str();
  app.add_option("--ealb", c.boundary.earth_albedo, "ground albedo")->capture_default_str();
  app.add_option("--alpha", c.boundary.alpha_bottom,
                 "fraction of the solar source entering at the ground")
      ->capture_default_str();
  app.add_option("--source-scale", c.boundary.source_scale, "multiplier on the solar source")
      ->capture_default_str();
  app.add_flag("--no-attenuate", o.no_attenuate, "ground source not attenuated by the column");

  // Kernel
  app.add_option("--quadrature", o.quadrature, "depth integration: exact or sampled")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  app.add_option("--dtt", c.kernel.dt_max, "largest sampling step")->capture_default_str();
  app.add_option("--nt", c.kernel.min_steps, "least sampling steps per interval")->capture_default_str();
  app.add_flag("--strict-compat", c.strict_compat, "reproduce the original program's quirks");

  // Thermal balance and driver
  app.add_option("--eps-bisection", c.thermal.eps_bisection, "bisection bracket width")->capture_default_str();
  app.add_option("--eps-newton", c.thermal.eps_newton, "Newton stopping tolerance")->capture_default_str();
  app.add_option("--kmax", c.driver.k_max, "fixed point iterations")->capture_default_str();
  app.add_option("--t-init", c.driver.T_init, "initial temperature")->capture_default_str();
  app.add_option("--early-stop", o.early_stop, "stop when sup |dT| falls below this (0 = off)")
      ->capture_default_str();
  app.add_flag("--report", o.show_report, "print the iteration table");

  // Absorption files
  app.add_option("--kappamin", o.kappa_floor, "floor on file absorption")->capture_default_str();
  app.add_option("--jmaxmax", o.max_nodes, "most nodes read from a file")->capture_default_str();
}

void finish_options(Options& o)
{
  auto& c = o.s.solver;
  c.kernel.quadrature = o.quadrature == "sampled" ? KernelQuadrature::sampled : KernelQuadrature::exact_cells;
  if (o.no_attenuate) c.boundary.attenuate_bottom = false;
  if (o.early_stop > 0.0) c.driver.early_stop = o.early_stop;
  c.validate();
  fs::create_directories(o.out);
}

std::string path_in(const Options& o, const std::string& file) { return (fs::path(o.out) / file).string(); }

// Returns the number of flagged nodes so the caller can fail the run.
std::size_t note(const Options& o, const std::string& label, const SolveReport& r)
{
  if (o.show_report) std::cout << "# " << label << '\n' << r.to_text();
  std::cout << label << ": " << r.iterations << " iterations, final sup|dT| " << r.final_sup_diff
            << '\n';
  for (const auto& f : r.flagged)
    std::cerr << label << ": balance not converged at node " << f.node << " (iteration "
              << f.iteration << ")\n";
  return r.flagged.size();
}

int run_grey(const Options& o)
{
  const auto r = rtstrat::run_grey(o.s);
  write_tsv(path_in(o, "grey.txt"), r.curve.rows());
  return note(o, "grey", r.report) ? 2 : 0;
}

int run_prop2(const Options& o)
{
  const auto r = rtstrat::run_prop2(o.s);
  std::size_t flagged = 0;
  for (const auto& [key, file] : prop2_files()) {
    const auto& c = r.cases.at(key);
    write_tsv(path_in(o, file), c.curve.rows());
    flagged += note(o, key, c.report);
  }
  std::cout << "max|T1-T2| " << r.gap_12 << "\nmax|T4-T5| " << r.gap_45 << '\n';
  return flagged ? 2 : 0;
}

int run_albedo(const Options& o)
{
  const auto r = rtstrat::run_albedo(o.s);
  std::size_t flagged = 0;
  for (const auto& [key, c] : r.cases) {
    write_tsv(path_in(o, key + ".txt"), c.curve.rows());
    flagged += note(o, key, c.report);
  }
  return flagged ? 2 : 0;
}

int run_signmap(const Options& o)
{
  const auto r = rtstrat::run_signmap(o.s);
  write_tsv(path_in(o, "switch11.txt"), switch_rows(r.along_nu));
  write_tsv(path_in(o, "switch12.txt"), switch_rows(r.along_altitude));
  std::cout << "sign changes: " << r.along_nu.size() << " along nu, " << r.along_altitude.size()
            << " along altitude\n";
  return 0;
}

int run_sensitivity(const Options& o)
{
  const auto t = rtstrat::run_sensitivity(o.s);
  write_tsv(path_in(o, "derivative.txt"), t.rows());
  const auto& bands = sensitivity_bands();
  for (std::size_t b = 0; b < bands.size(); ++b)
    std::cout << "band (" << bands[b].nu_lo << "," << bands[b].nu_hi << "): "
              << sign_changes(t.altitude, t.dT[b], 5.0) << " sign changes below 5 km\n";
  return 0;
}

int run_prop1(const Options& o)
{
  const auto r = run_prop1_check(o.s, o.bump_delta, o.bump_altitude);
  Table rows;
  for (std::size_t i = 1; i < r.altitude.size(); ++i)
    rows.push_back({r.altitude[i], r.T[i], r.T_bumped[i], r.T_bumped[i] - r.T[i]});
  write_tsv(path_in(o, "prop1.txt"), rows);
  std::cout << "bump cell " << r.bump_cell << " at " << r.bump_altitude << " km\n"
            << "shift at bump " << r.measured_at_bump << " (predicted " << r.predicted_at_bump
            << ")\nlargest shift where T decreases " << r.max_shift_where_decreasing << '\n';
  return 0;
}

int run_solve(const Options& o)
{
  auto spectrum = kappa_from_file(o.kappa_file, o.column, o.kappa_floor, o.max_nodes);
  auto depth = o.s.depth();
  auto sc = o.s.scattering(depth);
  const Problem<double> p{std::move(spectrum), std::move(depth), std::move(sc)};
  const auto r = run_case(p, o.s.solver);
  write_tsv(path_in(o, o.name), r.curve.rows());
  return note(o, "solve", r.report) ? 2 : 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Radiative transfer in a stratified atmosphere"};
  app.set_config("--config", "", "read options from a file");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  add_options(app, o);

  std::map<std::string, int (*)(const Options&)> actions{
      {"grey", run_grey},       {"prop2", run_prop2},
      {"albedo", run_albedo},   {"signmap", run_signmap},
      {"sensitivity", run_sensitivity}, {"prop1", run_prop1},
      {"solve", run_solve}};

  app.add_subcommand("grey", "grey atmosphere, kappa constant -> grey.txt");
  app.add_subcommand("prop2", "top versus ground illumination -> six temperature files");
  app.add_subcommand("albedo", "ground albedo and source scaling -> Q1, Q07, mirror3, albedo03Q0");
  app.add_subcommand("signmap", "zeros of J - b(T) -> switch11.txt, switch12.txt");
  app.add_subcommand("sensitivity", "dT/d kappa for three bands -> derivative.txt");
  auto* prop1 = app.add_subcommand("prop1", "local absorption bump -> prop1.txt");
  prop1->add_option("--delta", o.bump_delta, "relative bump height")->capture_default_str();
  prop1->add_option("--at", o.bump_altitude, "bump altitude (km)")->capture_default_str();
  auto* solve = app.add_subcommand("solve", "absorption read from a 5-column file");
  solve->add_option("--kappa-file", o.kappa_file, "nu kappa0 kappa1 kappa2 unused")->required();
  solve->add_option("--column", o.column, "absorption column 0, 1 or 2")
      ->check(CLI::Range(0, 2))
      ->capture_default_str();
  solve->add_option("--name", o.name, "output file name")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    finish_options(o);
    const auto* sub = app.get_subcommands().front();
    return actions.at(sub->get_name())(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
