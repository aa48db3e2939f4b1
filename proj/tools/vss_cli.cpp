// vss: batch front end for the virtual-state spectroscopy toolkit.
//
//   vss spectroscopy --t-plus 10ps --t-minus 2:10ps --dt-minus 3fs --tau 0:2ps
//   vss tpa --family rectangular --t-p 10ps
//   vss entropy --family gaussian --t-minus 2,5,10,20,40ps
//
// A --config JSON file is applied first; flags given on the command line override it.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "vss/errors.hpp"
#include "vss/io.hpp"
#include "vss/scenario.hpp"

namespace {

struct Flags {
  std::optional<std::string> config, medium, family, t_plus, t_minus, dt_minus, tau, tau_step, t_p, level, window,
      out, quadrature, classical_profile;
  std::optional<int> n_max;
  std::optional<double> omega0, min_prominence;
  std::optional<std::size_t> max_peaks, points;
  std::optional<unsigned> threads;
  bool spectrum = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON scenario file (flags override it)");
  cmd->add_option("--medium", f.medium, "'hydrogen' or a medium JSON document")->capture_default_str();
  cmd->add_option("--n-max", f.n_max, "highest np intermediate of the builtin hydrogen ladder (default 8)");
  cmd->add_option("--family", f.family, "gaussian | sinc | rectangular | classical");
  cmd->add_option("--t-plus", f.t_plus, "pump duration T+, e.g. 10ps");
  cmd->add_option("--t-p", f.t_p, "rectangular pulse duration, e.g. 10ps");
  cmd->add_option("--omega0", f.omega0, "carrier in eV (0 = two-photon resonance)");
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  cmd->add_option("--out", f.out, "output directory");
}

void apply_flags(const std::string& command, const Flags& f, vss::Scenario& s) {
  using namespace vss;
  s.command = command_from_string(command);
  if (f.medium) s.medium = *f.medium;
  if (f.n_max) s.n_max = *f.n_max;
  if (f.family) {
    try {
      s.state.family = family_from_string(*f.family);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("--family: ") + e.what());
    }
  }
  if (f.classical_profile) {
    try {
      s.state.classical_profile = family_from_string(*f.classical_profile);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("--classical-profile: ") + e.what());
    }
  }
  if (f.t_plus) s.state.t_plus = io::parse_duration(*f.t_plus, "--t-plus");
  if (f.t_p) s.state.t_p = io::parse_duration(*f.t_p, "--t-p");
  if (f.omega0) s.state.omega0 = *f.omega0;
  if (f.threads) s.threads = *f.threads;
  if (f.out) s.out_dir = *f.out;
  if (f.points) s.grid_points = *f.points;
  if (f.level) s.level = *f.level;
  if (f.spectrum) s.spectrum = true;
  if (f.max_peaks) s.peaks.max_peaks = *f.max_peaks;
  if (f.min_prominence) s.peaks.min_prominence = *f.min_prominence;
  if (f.window) {
    try {
      s.window = window_from_string(*f.window);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("--window: ") + e.what());
    }
  }
  if (f.quadrature) {
    try {
      s.average_method = average_method_from_string(*f.quadrature);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("--t-minus-quadrature: ") + e.what());
    }
  }
  if (f.t_minus) {
    if (f.t_minus->find(':') != std::string::npos) {
      const auto [lo, hi] = io::parse_range(*f.t_minus, "--t-minus");
      s.average.t_minus_min = lo;
      s.average.t_minus_max = hi;
      s.t_minus_is_range = true;
    } else {
      s.t_minus_list = io::parse_duration_list(*f.t_minus, "--t-minus");
      s.t_minus_is_range = false;
      s.state.t_minus = s.t_minus_list.front();
    }
  }
  if (f.dt_minus) s.average.t_minus_step = io::parse_duration(*f.dt_minus, "--dt-minus");
  if (f.tau) {
    if (f.tau->find(':') != std::string::npos) {
      const auto [lo, hi] = io::parse_range(*f.tau, "--tau");
      s.tau_min = lo;
      s.tau_max = hi;
      s.average.tau_max = hi;
    } else {
      s.tau = io::parse_duration(*f.tau, "--tau");
    }
  }
  if (f.tau_step) {
    s.tau_step = io::parse_duration(*f.tau_step, "--tau-step");
    s.average.tau_step = *s.tau_step;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual-state spectroscopy with entangled photon pairs"};
  app.require_subcommand(1);
  Flags f;

  auto* jsa = app.add_subcommand("jsa", "joint spectrum S(nu_s, nu_i) -> jsa.csv");
  add_common(jsa, f);
  jsa->add_option("--t-minus", f.t_minus, "T-, e.g. 2ps");
  jsa->add_option("--tau", f.tau, "idler delay, e.g. 0ps");
  jsa->add_option("--points", f.points, "grid points per axis (default: smallest resolving power of two >= 512)");

  auto* entropy = app.add_subcommand("entropy", "Schmidt entropy versus T- -> entropy.csv");
  add_common(entropy, f);
  entropy->add_option("--t-minus", f.t_minus, "comma separated list, e.g. 2,5,10ps");

  auto* tpa = app.add_subcommand("tpa", "TPA probability versus delay -> tpa_curve.csv, tpa_summary.json");
  add_common(tpa, f);
  tpa->add_option("--t-minus", f.t_minus, "T-, e.g. 2ps");
  tpa->add_option("--tau", f.tau, "delay range, e.g. 0:2ps");
  tpa->add_option("--tau-step", f.tau_step, "delay step (default 0.1fs; 20fs for classical)");
  tpa->add_option("--level", f.level, "keep a single intermediate level, e.g. 3p");
  tpa->add_option("--classical-profile", f.classical_profile, "gaussian | sinc weight of the classical mixture");
  tpa->add_flag("--spectrum", f.spectrum, "also write spectrum.csv and peaks.csv");
  tpa->add_option("--window", f.window, "rectangular | hann");
  tpa->add_option("--max-peaks", f.max_peaks, "keep the N tallest peaks (0 = all)");
  tpa->add_option("--min-prominence", f.min_prominence, "fraction of the largest non-zero bin");

  auto* spec = app.add_subcommand("spectroscopy", "T- averaged delay spectrum -> pbar.csv, spectrum.csv, peaks.csv/json");
  add_common(spec, f);
  spec->add_option("--t-minus", f.t_minus, "integration window, e.g. 2:10ps");
  spec->add_option("--dt-minus", f.dt_minus, "T- step, e.g. 3fs");
  spec->add_option("--t-minus-quadrature", f.quadrature, "trapezoid | factorized | analytic (default trapezoid)");
  spec->add_option("--tau", f.tau, "delay range, must start at 0, e.g. 0:2ps");
  spec->add_option("--tau-step", f.tau_step, "delay step, e.g. 0.1fs");
  spec->add_option("--window", f.window, "rectangular | hann");
  spec->add_option("--max-peaks", f.max_peaks, "keep the N tallest peaks (default 5, 0 = all)");
  spec->add_option("--min-prominence", f.min_prominence, "fraction of the largest non-zero bin (default 1e-5)");

  auto* oracle = app.add_subcommand("oracle-check", "closed forms versus frequency-domain quadrature -> oracle_check.csv");
  add_common(oracle, f);
  oracle->add_option("--t-minus", f.t_minus, "comma separated list, e.g. 2,4,8ps");
  oracle->add_option("--tau", f.tau, "delay range (7 points unless --tau-step), e.g. 0:2ps");
  oracle->add_option("--tau-step", f.tau_step, "delay step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vss::kExitConfig;
  }

  try {
    vss::Scenario s;
    const CLI::App* chosen = app.get_subcommands().front();
    if (chosen == oracle) s.t_minus_list = {2.0, 4.0, 8.0};
    if (f.config) vss::apply_config(vss::io::load_json(*f.config), s);
    apply_flags(chosen->get_name(), f, s);
    return vss::run_scenario(s, std::cout);
  } catch (...) {
    return vss::exit_status_from_exception(std::cerr);
  }
}
