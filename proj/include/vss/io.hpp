#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vss/medium.hpp"
#include "vss/schmidt.hpp"
#include "vss/spectroscopy.hpp"
#include "vss/states.hpp"
#include "vss/tpa.hpp"

namespace vss::io {

using nlohmann::json;

/// "3fs", "10ps", "0.1 fs" -> ps. A bare number is taken as ps.
/// Throws ConfigError naming `field` on anything else.
double parse_duration(const std::string& text, const std::string& field = "duration");

/// "2:10ps" or "2ps:10ps" -> (2, 10) in ps; a trailing unit applies to both ends.
std::pair<double, double> parse_range(const std::string& text, const std::string& field = "range");

/// Comma separated durations, "2,5,10ps"; a trailing unit applies to bare entries.
std::vector<double> parse_duration_list(const std::string& text, const std::string& field = "list");

/// Parses JSON text; syntax errors are reported as ConfigError with line and column.
json parse_json(const std::string& text, const std::string& source);
json load_json(const std::filesystem::path& path);

/// {ground, final, intermediates: [{label, energy_eV, linewidth_eV, dipole_product}]}
/// where ground/final are {label, energy_eV, linewidth_eV}.
MediumLadder medium_from_json(const json& doc);
json medium_to_json(const MediumLadder& ladder);

/// `source` is "hydrogen" (builtin, n <= n_max) or a path to a medium document.
MediumLadder load_medium(const std::string& source, int n_max);

/// {family, T_plus_ps, T_minus_ps, T_p_ps, tau_ps, omega0_eV}; absent keys keep
/// the values already in `params` / `tau`. Durations may also be strings with units.
void apply_state_json(const json& doc, StateParams& params, double& tau);

json peak_report_to_json(const PeakReport& report);

// CSV writers. Every header names the unit of its column.
void write_jsa_csv(const std::filesystem::path& path, const FrequencyGrid& grid, const Eigen::MatrixXd& spectrum);
void write_entropy_csv(const std::filesystem::path& path, const std::vector<EntropyPoint>& points);
void write_curve_csv(const std::filesystem::path& path, const TpaCurve& curve, const std::string& value_column);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum);
void write_peaks_csv(const std::filesystem::path& path, const PeakReport& report);
void write_json(const std::filesystem::path& path, const json& doc);

/// Shortest text that reads back to the same double.
std::string format_double(double value);

}  // namespace vss::io
