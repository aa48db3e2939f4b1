#include "vss/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "vss/errors.hpp"
#include "vss/parallel.hpp"
#include "vss/schmidt.hpp"

namespace vss {

namespace {

constexpr double kDefaultTauStep = 1e-4;           // ps, 0.1 fs
constexpr double kClassicalTauStep = 2e-2;         // ps; every delay costs a full adaptive integral
constexpr double kFlatSpread = 1e-6;               // relative max/min - 1
constexpr double kStructureProminence = 0.01;      // fraction of the largest non-zero bin
constexpr std::size_t kOraclePoints = 7;

PureState pure_state(const StateParams& p, double tau, double omega0) {
  switch (p.family) {
    case Family::gaussian:
      return GaussianJsa{.t_plus = p.t_plus, .t_minus = p.t_minus, .tau = tau, .omega_s0 = omega0, .omega_i0 = omega0};
    case Family::sinc:
      return SincJsa{.t_plus = p.t_plus, .t_minus = p.t_minus, .tau = tau, .omega_s0 = omega0, .omega_i0 = omega0};
    case Family::rectangular:
      return RectangularJsa{.t_p = p.t_p, .tau = tau, .omega0 = omega0};
    case Family::classical:
      break;
  }
  throw ConfigError("the classical mixture has no joint spectral amplitude; use gaussian, sinc or rectangular");
}

FrequencyGrid auto_grid(const PureState& state, std::size_t requested) {
  if (requested > 0) {
    auto grid = default_grid(state, requested);
    check_resolution(state, grid);
    return grid;
  }
  for (std::size_t n = kDefaultGridPoints;; n *= 2) {
    auto grid = default_grid(state, n);
    try {
      check_resolution(state, grid);
      return grid;
    } catch (const ResolutionError&) {
      if (n >= kMaxGridPoints) throw;
    }
  }
}

std::filesystem::path prepare(const Scenario& s, const std::string& name) {
  std::filesystem::create_directories(s.out_dir);
  return s.out_dir / name;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

void print_warnings(const Warnings& warnings, std::ostream& log) {
  for (const auto& w : warnings) log << "warning: " << w << "\n";
}

io::json peaks_summary(const PeakReport& report) { return io::peak_report_to_json(report); }

int run_jsa(const Scenario& s, const MediumLadder& ladder, std::ostream& log) {
  const double omega0 = carrier(ladder, s.state);
  const PureState state = pure_state(s.state, s.tau, omega0);
  const auto grid = auto_grid(state, s.grid_points);
  const auto spectrum = joint_spectrum(state, grid);
  io::write_jsa_csv(prepare(s, "jsa.csv"), grid, spectrum);
  io::write_json(prepare(s, "jsa.json"), io::json{{"family", to_string(s.state.family)},
                                                  {"points", grid.size()},
                                                  {"step_eV", grid.step},
                                                  {"half_width_eV", grid.nu.back()},
                                                  {"tau_ps", s.tau}});
  log << fmt::format("jsa: {} on {}x{} grid, step {} eV\n", to_string(s.state.family), grid.size(), grid.size(),
                     io::format_double(grid.step));
  return kExitOk;
}

int run_entropy(const Scenario& s, std::ostream& log) {
  if (s.state.family != Family::gaussian && s.state.family != Family::sinc) {
    throw ConfigError("entropy: --family must be gaussian or sinc");
  }
  const auto points = entropy_curve(s.state.family, s.state.t_plus, s.t_minus_list, s.threads);
  io::write_entropy_csv(prepare(s, "entropy.csv"), points);
  for (const auto& p : points) {
    log << fmt::format("T_minus {} ps: E = {:.6f} bits, K = {:.6f}, N = {}{}", io::format_double(p.t_minus),
                       p.entropy, p.schmidt_number, p.points, p.converged ? "" : " (not converged at grid cap)");
    if (s.state.family == Family::gaussian) {
      log << fmt::format(", closed form {:.6f}", gaussian_entropy_closed_form(s.state.t_plus, p.t_minus));
    }
    log << "\n";
  }
  return kExitOk;
}

int run_tpa(const Scenario& s, const MediumLadder& ladder, std::ostream& log) {
  const auto grid = uniform_grid(s.tau_min, s.tau_max, s.tau_step.value_or(default_tau_step(s)));
  TpaCurve curve;
  if (s.level) {
    curve = tpa_single_level(ladder.restricted_to(ladder.find(*s.level)), s.state, grid, {}, s.threads);
  } else {
    curve = tpa_curve(ladder, s.state, grid, {}, s.threads);
  }
  io::write_curve_csv(prepare(s, "tpa_curve.csv"), curve, "probability_arb");

  const auto [lo, hi] = std::minmax_element(curve.values.begin(), curve.values.end());
  const double spread = *lo > 0.0 ? *hi / *lo - 1.0 : INFINITY;
  if (!std::isfinite(*lo) || !std::isfinite(*hi) || *lo < 0.0) throw NumericError("tpa: non-finite or negative probability");

  io::json summary{{"family", to_string(s.state.family)},
                   {"level", s.level.value_or("")},
                   {"points", curve.tau_grid.size()},
                   {"tau_min_ps", curve.tau_grid.front()},
                   {"tau_max_ps", curve.tau_grid.back()},
                   {"min_arb", *lo},
                   {"max_arb", *hi},
                   {"relative_spread", spread},
                   {"warnings", curve.warnings}};

  // A curve is flagged when it is flat or its delay spectrum has no peak
  // beyond the zero-frequency lobe.
  bool structure = spread >= kFlatSpread;
  if (structure && curve.tau_grid.size() >= 8) {
    const auto spectrum = fourier_spectrum(curve, {s.window, 1});
    PeakOptions probe = s.peaks;
    probe.min_prominence = kStructureProminence;
    probe.max_peaks = 0;
    structure = !detect_peaks(spectrum, ladder, carrier(ladder, s.state), probe).peaks.empty();
  }
  summary["spectral_structure"] = structure;
  if (!structure) summary["flag"] = "no spectral structure";

  if (s.spectrum) {
    const auto spectrum = fourier_spectrum(curve, {s.window, 1});
    const auto report = detect_peaks(spectrum, ladder, carrier(ladder, s.state), s.peaks);
    io::write_spectrum_csv(prepare(s, "spectrum.csv"), spectrum);
    io::write_peaks_csv(prepare(s, "peaks.csv"), report);
    summary["peaks"] = peaks_summary(report);
  }
  io::write_json(prepare(s, "tpa_summary.json"), summary);

  print_warnings(curve.warnings, log);
  log << fmt::format("tpa: {}{} over {} delays, P in [{}, {}], relative spread {:.3e}{}\n", to_string(s.state.family),
                     s.level ? " (" + *s.level + ")" : std::string(), curve.tau_grid.size(), io::format_double(*lo),
                     io::format_double(*hi), spread, structure ? "" : " -- no spectral structure");
  return kExitOk;
}

int run_spectroscopy(const Scenario& s, const MediumLadder& ladder, std::ostream& log) {
  const double omega0 = carrier(ladder, s.state);
  const auto averaged = weighted_average(ladder, s.state.t_plus, s.average, {}, s.threads, s.average_method, omega0);
  const auto spectrum = fourier_spectrum(averaged.curve, {s.window, 2});
  const auto report = detect_peaks(spectrum, ladder, omega0, s.peaks);

  io::write_curve_csv(prepare(s, "pbar.csv"), averaged.curve, "pbar_arb");
  io::write_spectrum_csv(prepare(s, "spectrum.csv"), spectrum);
  io::write_peaks_csv(prepare(s, "peaks.csv"), report);
  io::json doc = peaks_summary(report);
  doc["t_minus_quadrature"] = to_string(s.average_method);
  doc["t_minus_nodes"] = averaged.t_minus_evaluations;
  doc["warnings"] = averaged.curve.warnings;
  io::write_json(prepare(s, "peaks.json"), doc);

  print_warnings(averaged.curve.warnings, log);
  log << fmt::format("spectroscopy: {} delays, {} T_minus nodes ({}), bin {:.3e} eV, {} peaks\n",
                     averaged.curve.tau_grid.size(), averaged.t_minus_evaluations, to_string(s.average_method),
                     report.bin_width, report.peaks.size());
  for (const auto& p : report.peaks) {
    log << fmt::format("  {:9.5f} eV  virtual {:8.4f} eV  {:>4}  {:.4e}\n", p.energy_mismatch, p.virtual_energy,
                       p.level_label.empty() ? "-" : p.level_label, p.magnitude);
  }
  return kExitOk;
}

int run_oracle_check(const Scenario& s, const MediumLadder& ladder, std::ostream& log) {
  if (s.state.family != Family::gaussian && s.state.family != Family::sinc) {
    throw ConfigError("oracle-check: --family must be gaussian or sinc");
  }
  const double omega0 = carrier(ladder, s.state);
  const auto taus = s.tau_step ? uniform_grid(s.tau_min, s.tau_max, *s.tau_step) : linspace(s.tau_min, s.tau_max, kOraclePoints);
  struct Row {
    double t_minus, tau, closed, oracle;
  };
  std::vector<Row> rows;
  for (double tm : s.t_minus_list) {
    for (double tau : taus) rows.push_back({tm, tau, 0.0, 0.0});
  }
  parallel_for(rows.size(), s.threads, [&](std::size_t i) {
    Row& r = rows[i];
    StateParams p = s.state;
    p.t_minus = r.t_minus;
    r.closed = p.family == Family::sinc ? tpa_sinc(ladder, p.t_plus, r.t_minus, r.tau, omega0)
                                        : tpa_gaussian(ladder, p.t_plus, r.t_minus, r.tau, omega0);
    r.oracle = tpa_oracle_frequency_domain(ladder, pure_state(p, r.tau, omega0), omega0);
  });
  const double calibration = rows.front().closed / rows.front().oracle;
  if (!std::isfinite(calibration) || calibration == 0.0) throw NumericError("oracle-check: degenerate calibration point");

  double worst = 0.0;
  auto out_path = prepare(s, "oracle_check.csv");
  {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + out_path.string() + "' for writing");
    out << "T_minus_ps,tau_ps,closed_form_arb,oracle_calibrated_arb,relative_deviation\n";
    for (const auto& r : rows) {
      const double scaled = calibration * r.oracle;
      const double dev = scaled / r.closed - 1.0;
      worst = std::max(worst, std::abs(dev));
      out << fmt::format("{},{},{},{},{}\n", r.t_minus, r.tau, r.closed, scaled, dev);
    }
  }
  log << fmt::format("oracle-check: {} on {} points, calibration {:.6e} at (T_minus {} ps, tau {} ps), max |dev| {:.3e}\n",
                     to_string(s.state.family), rows.size(), calibration, io::format_double(rows.front().t_minus),
                     io::format_double(rows.front().tau), worst);
  return kExitOk;
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "jsa") return Command::jsa;
  if (name == "entropy") return Command::entropy;
  if (name == "tpa") return Command::tpa;
  if (name == "spectroscopy") return Command::spectroscopy;
  if (name == "oracle-check") return Command::oracle_check;
  throw ConfigError("unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::jsa: return "jsa";
    case Command::entropy: return "entropy";
    case Command::tpa: return "tpa";
    case Command::spectroscopy: return "spectroscopy";
    case Command::oracle_check: return "oracle-check";
  }
  return "unknown";
}

double default_tau_step(const Scenario& scenario) {
  return scenario.state.family == Family::classical ? kClassicalTauStep : kDefaultTauStep;
}

void Scenario::validate() const {
  if (medium.empty()) throw ConfigError("medium: empty source");
  if (n_max < 2 || n_max > 40) throw ConfigError(fmt::format("n_max: {} outside 2..40", n_max));
  if (!(state.t_plus > 0.0)) throw ConfigError("T_plus must be > 0");
  if (!(state.t_minus != 0.0) || !std::isfinite(state.t_minus)) throw ConfigError("T_minus must be finite and non-zero");
  if (!(state.t_p > 0.0)) throw ConfigError("T_p must be > 0");
  if (!(tau_max >= tau_min)) throw ConfigError("tau: STOP must not be below START");
  if (tau_step && !(*tau_step > 0.0)) throw ConfigError("tau_step must be > 0");
  if (t_minus_list.empty()) throw ConfigError("T_minus: empty list");
  if (command == Command::spectroscopy && tau_min != 0.0) throw ConfigError("spectroscopy: the delay range must start at 0");
  if (t_minus_is_range && command != Command::spectroscopy) {
    throw ConfigError("T_minus: a START:STOP range only applies to spectroscopy; give a list such as 2,5,10ps");
  }
  if (level && command != Command::tpa) throw ConfigError("--level only applies to tpa");
  if (peaks.min_prominence < 0.0) throw ConfigError("min_prominence must be >= 0");
  if (command == Command::entropy || command == Command::oracle_check) {
    for (double t : t_minus_list) {
      if (!(t > 0.0)) throw ConfigError("T_minus entries must be > 0");
    }
  }
}

void apply_config(const io::json& doc, Scenario& s) {
  if (!doc.is_object()) throw ConfigError("config: expected an object at top level");
  static const char* known[] = {"command", "medium", "n_max", "state", "sweep", "spectrum", "grid_points", "threads", "out"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError(fmt::format("config.{}: unknown field", key));
    }
  }
  auto str = [](const io::json& obj, const std::string& key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(fmt::format("{}.{}: expected a string, got {}", ctx, key, v.type_name()));
    return v.get<std::string>();
  };
  auto integer = [](const io::json& obj, const std::string& key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(fmt::format("{}.{}: expected a non-negative integer", ctx, key));
    }
    return v.get<long long>();
  };
  auto number = [](const io::json& obj, const std::string& key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(fmt::format("{}.{}: expected a number, got {}", ctx, key, v.type_name()));
    return v.get<double>();
  };

  if (doc.contains("command")) s.command = command_from_string(str(doc, "command", "config"));
  if (doc.contains("medium")) {
    const auto& m = doc.at("medium");
    if (m.is_object()) {
      throw ConfigError("config.medium: give \"hydrogen\" or a path to a medium JSON document");
    }
    s.medium = str(doc, "medium", "config");
  }
  if (doc.contains("n_max")) s.n_max = static_cast<int>(integer(doc, "n_max", "config"));
  if (doc.contains("grid_points")) s.grid_points = static_cast<std::size_t>(integer(doc, "grid_points", "config"));
  if (doc.contains("threads")) s.threads = static_cast<unsigned>(integer(doc, "threads", "config"));
  if (doc.contains("out")) s.out_dir = str(doc, "out", "config");
  if (doc.contains("state")) io::apply_state_json(doc.at("state"), s.state, s.tau);

  if (doc.contains("sweep")) {
    const auto& w = doc.at("sweep");
    const std::string ctx = "config.sweep";
    if (!w.is_object()) throw ConfigError(ctx + ": expected an object");
    for (const auto& [key, value] : w.items()) {
      static const char* sweep_keys[] = {"tau", "tau_step", "t_minus", "dt_minus", "level", "t_minus_quadrature"};
      if (std::find(std::begin(sweep_keys), std::end(sweep_keys), key) == std::end(sweep_keys)) {
        throw ConfigError(fmt::format("{}.{}: unknown field", ctx, key));
      }
    }
    if (w.contains("tau")) {
      const auto [lo, hi] = io::parse_range(str(w, "tau", ctx), ctx + ".tau");
      s.tau_min = lo;
      s.tau_max = hi;
      s.average.tau_max = hi;
    }
    if (w.contains("tau_step")) {
      s.tau_step = io::parse_duration(str(w, "tau_step", ctx), ctx + ".tau_step");
      s.average.tau_step = *s.tau_step;
    }
    if (w.contains("t_minus")) {
      const std::string text = str(w, "t_minus", ctx);
      if (text.find(':') != std::string::npos) {
        const auto [lo, hi] = io::parse_range(text, ctx + ".t_minus");
        s.average.t_minus_min = lo;
        s.average.t_minus_max = hi;
        s.t_minus_is_range = true;
      } else {
        s.t_minus_list = io::parse_duration_list(text, ctx + ".t_minus");
        s.t_minus_is_range = false;
        s.state.t_minus = s.t_minus_list.front();
      }
    }
    if (w.contains("dt_minus")) s.average.t_minus_step = io::parse_duration(str(w, "dt_minus", ctx), ctx + ".dt_minus");
    if (w.contains("level")) s.level = str(w, "level", ctx);
    if (w.contains("t_minus_quadrature")) {
      try {
        s.average_method = average_method_from_string(str(w, "t_minus_quadrature", ctx));
      } catch (const InvalidArgument& e) {
        throw ConfigError(ctx + ".t_minus_quadrature: " + e.what());
      }
    }
  }

  if (doc.contains("spectrum")) {
    const auto& sp = doc.at("spectrum");
    const std::string ctx = "config.spectrum";
    if (!sp.is_object()) throw ConfigError(ctx + ": expected an object");
    for (const auto& [key, value] : sp.items()) {
      if (key != "window" && key != "max_peaks" && key != "min_prominence" && key != "write") {
        throw ConfigError(fmt::format("{}.{}: unknown field", ctx, key));
      }
    }
    if (sp.contains("window")) {
      try {
        s.window = window_from_string(str(sp, "window", ctx));
      } catch (const InvalidArgument& e) {
        throw ConfigError(ctx + ".window: " + e.what());
      }
    }
    if (sp.contains("max_peaks")) s.peaks.max_peaks = static_cast<std::size_t>(integer(sp, "max_peaks", ctx));
    if (sp.contains("min_prominence")) s.peaks.min_prominence = number(sp, "min_prominence", ctx);
    if (sp.contains("write")) {
      if (!sp.at("write").is_boolean()) throw ConfigError(ctx + ".write: expected true or false");
      s.spectrum = sp.at("write").get<bool>();
    }
  }
}

int exit_status_from_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_scenario(const Scenario& s, std::ostream& log) {
  s.validate();
  if (s.command == Command::entropy) return run_entropy(s, log);
  const MediumLadder ladder = io::load_medium(s.medium, s.n_max);
  switch (s.command) {
    case Command::jsa: return run_jsa(s, ladder, log);
    case Command::tpa: return run_tpa(s, ladder, log);
    case Command::spectroscopy: return run_spectroscopy(s, ladder, log);
    case Command::oracle_check: return run_oracle_check(s, ladder, log);
    case Command::entropy: break;
  }
  return kExitOk;
}

}  // namespace vss
