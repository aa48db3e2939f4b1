#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vss/io.hpp"
#include "vss/spectroscopy.hpp"
#include "vss/tpa.hpp"

namespace vss {

enum class Command { jsa, entropy, tpa, spectroscopy, oracle_check };

Command command_from_string(const std::string& name);
std::string to_string(Command command);

/// One batch run. Durations in ps, energies in eV.
struct Scenario {
  Command command = Command::spectroscopy;
  std::string medium = "hydrogen";  // builtin name or path to a medium JSON document
  int n_max = 8;

  StateParams state{};
  double tau = 0.0;  // single delay for `jsa`

  // Delay sweep for `tpa` and `oracle-check`; the spectroscopy delay grid comes from `average`.
  double tau_min = 0.0;
  double tau_max = 2.0;
  std::optional<double> tau_step;  // default 0.1 fs (20 fs for the classical mixture)
  std::optional<std::string> level;  // single-level `tpa`

  std::vector<double> t_minus_list{2.0};  // `entropy` and `oracle-check`
  bool t_minus_is_range = false;          // set when T- was given as a:b (spectroscopy only)
  AverageSpec average{};
  AverageMethod average_method = AverageMethod::direct;

  std::size_t grid_points = 0;  // `jsa`; 0 = smallest power of two >= 512 that resolves the state
  Window window = Window::rectangular;
  bool spectrum = false;  // `tpa`: also write the delay spectrum and peaks
  PeakOptions peaks{1e-5, 5, 0.05};

  unsigned threads = 0;  // 0 = hardware concurrency
  std::filesystem::path out_dir = ".";

  /// Throws ConfigError for inconsistent combinations.
  void validate() const;
};

/// Exit statuses of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitNumeric = 4;

/// Maps the current exception to an exit status and prints it on `err`.
int exit_status_from_exception(std::ostream& err);

/// Fills a scenario from a config document; keys absent from the document keep their values.
/// Layout: {command, medium, n_max, state:{...}, sweep:{tau, tau_step, t_minus, dt_minus, level,
/// t_minus_quadrature}, spectrum:{window, max_peaks, min_prominence}, grid_points, threads, out}.
void apply_config(const io::json& doc, Scenario& scenario);

/// Runs the scenario, writes its artifacts under out_dir and a summary on `log`.
/// Returns kExitOk; errors propagate as exceptions.
int run_scenario(const Scenario& scenario, std::ostream& log);

/// Delay step for the sweep subcommands when none is given.
double default_tau_step(const Scenario& scenario);

}  // namespace vss
