#include "vss/io.hpp"

#include <fmt/format.h>

#include <cctype>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vss/errors.hpp"

namespace vss::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits "12.5fs" into ("12.5", "fs").
std::pair<std::string, std::string> split_unit(const std::string& text) {
  std::string t = trim(text);
  std::size_t end = t.size();
  while (end > 0 && std::isalpha(static_cast<unsigned char>(t[end - 1]))) --end;
  return {trim(t.substr(0, end)), t.substr(end)};
}

// Decimal text scaled by 10^shift without an intermediate rounding: the
// exponent is rewritten and the result rounded once by from_chars.
double parse_scaled(const std::string& number, int shift, const std::string& field, const std::string& original) {
  auto fail = [&]() -> double {
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a duration (expected e.g. 3fs, 10ps)", field, original));
  };
  if (number.empty()) return fail();
  std::string mantissa = number;
  long exponent = 0;
  if (auto e = number.find_first_of("eE"); e != std::string::npos) {
    mantissa = number.substr(0, e);
    const std::string exp_text = number.substr(e + 1);
    const char* first = exp_text.data() + (!exp_text.empty() && exp_text[0] == '+' ? 1 : 0);
    const char* last = exp_text.data() + exp_text.size();
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr != last || first == last) return fail();
  }
  const std::string rebuilt = fmt::format("{}e{}", mantissa, exponent + shift);
  double value = 0.0;
  const char* last = rebuilt.data() + rebuilt.size();
  auto [ptr, ec] = std::from_chars(rebuilt.data(), last, value);
  if (ec != std::errc{} || ptr != last) return fail();
  if (!std::isfinite(value)) return fail();
  return value;
}

int unit_shift(const std::string& unit, const std::string& field, const std::string& original) {
  if (unit.empty() || unit == "ps") return 0;
  if (unit == "fs") return -3;
  throw ConfigError(fmt::format("{}: unknown time unit '{}' in '{}' (use ps or fs)", field, unit, original));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot open '{}' for writing", path.string()));
  return out;
}

std::string where(const std::string& context, const std::string& key) {
  return context.empty() ? key : context + "." + key;
}

double number_field(const json& obj, const std::string& key, const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(fmt::format("{}: missing field", where(context, key)));
  if (!it->is_number()) throw ConfigError(fmt::format("{}: expected a number, got {}", where(context, key), it->type_name()));
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ConfigError(fmt::format("{}: value must be finite", where(context, key)));
  return v;
}

std::string string_field(const json& obj, const std::string& key, const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(fmt::format("{}: missing field", where(context, key)));
  if (!it->is_string()) throw ConfigError(fmt::format("{}: expected a string, got {}", where(context, key), it->type_name()));
  return it->get<std::string>();
}

EnergyLevel level_from_json(const json& obj, const std::string& context) {
  if (!obj.is_object()) throw ConfigError(fmt::format("{}: expected an object", context));
  EnergyLevel level;
  level.label = obj.contains("label") ? string_field(obj, "label", context) : context;
  level.energy = number_field(obj, "energy_eV", context);
  level.linewidth = obj.contains("linewidth_eV") ? number_field(obj, "linewidth_eV", context) : 0.0;
  if (level.linewidth < 0.0) throw ConfigError(fmt::format("{}: linewidth must be >= 0", where(context, "linewidth_eV")));
  return level;
}

json level_to_json(const EnergyLevel& level) {
  return json{{"label", level.label}, {"energy_eV", level.energy}, {"linewidth_eV", level.linewidth}};
}

// Number in ps, or a string with a unit.
double duration_field(const json& obj, const std::string& key, const std::string& context) {
  const auto& v = obj.at(key);
  if (v.is_string()) return parse_duration(v.get<std::string>(), where(context, key));
  return number_field(obj, key, context);
}

}  // namespace

std::string format_double(double value) { return fmt::format("{}", value); }

double parse_duration(const std::string& text, const std::string& field) {
  const auto [number, unit] = split_unit(text);
  return parse_scaled(number, unit_shift(unit, field, text), field, text);
}

std::pair<double, double> parse_range(const std::string& text, const std::string& field) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError(fmt::format("{}: expected START:STOP with a unit, got '{}'", field, text));
  const auto [lo_num, lo_unit] = split_unit(parts[0]);
  const auto [hi_num, hi_unit] = split_unit(parts[1]);
  const std::string shared = lo_unit.empty() ? hi_unit : lo_unit;
  const double lo = parse_scaled(lo_num, unit_shift(lo_unit.empty() ? shared : lo_unit, field, text), field, text);
  const double hi = parse_scaled(hi_num, unit_shift(hi_unit.empty() ? shared : hi_unit, field, text), field, text);
  if (!(lo < hi)) throw ConfigError(fmt::format("{}: range '{}' must have START < STOP", field, text));
  return {lo, hi};
}

std::vector<double> parse_duration_list(const std::string& text, const std::string& field) {
  const auto parts = split(text, ',');
  if (parts.empty()) throw ConfigError(fmt::format("{}: empty list", field));
  std::string shared;
  for (const auto& p : parts) {
    const auto unit = split_unit(p).second;
    if (!unit.empty()) shared = unit;
  }
  std::vector<double> out;
  for (const auto& p : parts) {
    const auto [number, unit] = split_unit(p);
    out.push_back(parse_scaled(number, unit_shift(unit.empty() ? shared : unit, field, text), field, text));
  }
  return out;
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(fmt::format("{}:{}:{}: JSON syntax error: {}", source, line, column, e.what()));
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path.string());
}

MediumLadder medium_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("medium: expected an object");
  MediumLadder ladder;
  if (!doc.contains("ground")) throw ConfigError("medium.ground: missing field");
  if (!doc.contains("final")) throw ConfigError("medium.final: missing field");
  ladder.ground = level_from_json(doc.at("ground"), "medium.ground");
  ladder.final = level_from_json(doc.at("final"), "medium.final");
  const auto it = doc.find("intermediates");
  if (it == doc.end() || !it->is_array()) throw ConfigError("medium.intermediates: expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string ctx = fmt::format("medium.intermediates[{}]", i);
    IntermediateLevel j;
    j.level = level_from_json((*it)[i], ctx);
    j.dipole_product = number_field((*it)[i], "dipole_product", ctx);
    ladder.intermediates.push_back(j);
  }
  try {
    ladder.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("medium: ") + e.what());
  }
  return ladder;
}

json medium_to_json(const MediumLadder& ladder) {
  json levels = json::array();
  for (const auto& j : ladder.intermediates) {
    json item = level_to_json(j.level);
    item["dipole_product"] = j.dipole_product;
    levels.push_back(item);
  }
  return json{{"ground", level_to_json(ladder.ground)}, {"final", level_to_json(ladder.final)}, {"intermediates", levels}};
}

MediumLadder load_medium(const std::string& source, int n_max) {
  if (source == "hydrogen") {
    if (n_max < 2 || n_max > 40) throw ConfigError(fmt::format("n_max: {} outside 2..40", n_max));
    return hydrogen_ladder(n_max);
  }
  if (!std::filesystem::exists(source)) throw ConfigError(fmt::format("medium: file '{}' does not exist", source));
  return medium_from_json(load_json(source));
}

void apply_state_json(const json& doc, StateParams& params, double& tau) {
  const std::string ctx = "state";
  if (!doc.is_object()) throw ConfigError("state: expected an object");
  static const char* known[] = {"family", "T_plus_ps", "T_minus_ps", "T_p_ps", "tau_ps", "omega0_eV", "classical_profile"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ConfigError(fmt::format("state.{}: unknown field", key));
    }
  }
  try {
    if (doc.contains("family")) params.family = family_from_string(string_field(doc, "family", ctx));
    if (doc.contains("classical_profile")) {
      params.classical_profile = family_from_string(string_field(doc, "classical_profile", ctx));
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("state.family: ") + e.what());
  }
  if (doc.contains("T_plus_ps")) params.t_plus = duration_field(doc, "T_plus_ps", ctx);
  if (doc.contains("T_minus_ps")) params.t_minus = duration_field(doc, "T_minus_ps", ctx);
  if (doc.contains("T_p_ps")) params.t_p = duration_field(doc, "T_p_ps", ctx);
  if (doc.contains("tau_ps")) tau = duration_field(doc, "tau_ps", ctx);
  if (doc.contains("omega0_eV")) params.omega0 = number_field(doc, "omega0_eV", ctx);
}

json peak_report_to_json(const PeakReport& report) {
  json peaks = json::array();
  for (const auto& p : report.peaks) {
    peaks.push_back({{"energy_mismatch_eV", p.energy_mismatch},
                     {"virtual_energy_eV", p.virtual_energy},
                     {"label", p.level_label},
                     {"magnitude", p.magnitude}});
  }
  return json{{"peaks", peaks}, {"virtual_energies_eV", report.virtual_energies}, {"bin_width_eV", report.bin_width}};
}

void write_jsa_csv(const std::filesystem::path& path, const FrequencyGrid& grid, const Eigen::MatrixXd& spectrum) {
  auto out = open_output(path);
  out << "nu_s_eV,nu_i_eV,S_per_eV2\n";
  for (Eigen::Index r = 0; r < spectrum.rows(); ++r) {
    for (Eigen::Index c = 0; c < spectrum.cols(); ++c) {
      out << fmt::format("{},{},{}\n", grid.nu[r], grid.nu[c], spectrum(r, c));
    }
  }
}

void write_entropy_csv(const std::filesystem::path& path, const std::vector<EntropyPoint>& points) {
  auto out = open_output(path);
  out << "T_minus_ps,entropy_bits,schmidt_number\n";
  for (const auto& p : points) out << fmt::format("{},{},{}\n", p.t_minus, p.entropy, p.schmidt_number);
}

void write_curve_csv(const std::filesystem::path& path, const TpaCurve& curve, const std::string& value_column) {
  auto out = open_output(path);
  out << "tau_ps," << value_column << "\n";
  for (std::size_t i = 0; i < curve.tau_grid.size(); ++i) {
    out << fmt::format("{},{}\n", curve.tau_grid[i], curve.values[i]);
  }
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum) {
  auto out = open_output(path);
  out << "energy_eV,magnitude_rel\n";
  for (std::size_t k = 0; k < spectrum.energy.size(); ++k) {
    out << fmt::format("{},{}\n", spectrum.energy[k], spectrum.magnitude[k]);
  }
}

void write_peaks_csv(const std::filesystem::path& path, const PeakReport& report) {
  auto out = open_output(path);
  out << "energy_mismatch_eV,virtual_energy_eV,label,magnitude_rel\n";
  for (const auto& p : report.peaks) {
    out << fmt::format("{},{},{},{}\n", p.energy_mismatch, p.virtual_energy, p.level_label, p.magnitude);
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  auto out = open_output(path);
  out << doc.dump(2) << "\n";
}

}  // namespace vss::io
