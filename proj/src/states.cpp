#include "vss/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vss/errors.hpp"

namespace vss {
namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void require(bool ok, const char* message) {
  if (!ok) throw InvalidArgument(message);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Real envelope |Phi| / (norm * scale) and the phase, kept apart so that
// |Phi|^2 never depends on tau or the pump phase.
struct Polar {
  double envelope;
  double phase;
};

Polar shape_polar(const PureState& state, double nu_s, double nu_i, double hbar) {
  return std::visit(
      Overloaded{
          [&](const GaussianJsa& s) {
            const double u = (nu_s + nu_i) / hbar;
            const double v = (nu_s - nu_i) / hbar;
            const double env = std::exp(-s.t_plus * s.t_plus * u * u - 0.25 * s.t_minus * s.t_minus * v * v);
            return Polar{env, s.pump_phase_slope * u + nu_i * s.tau / hbar};
          },
          [&](const SincJsa& s) {
            const double u = (nu_s + nu_i) / hbar;
            const double v = (nu_s - nu_i) / hbar;
            const double env = std::exp(-s.t_plus * s.t_plus * u * u) * sinc(0.5 * s.t_minus * v);
            return Polar{env, s.pump_phase_slope * u + nu_i * s.tau / hbar};
          },
          [&](const RectangularJsa& s) {
            const double env = sinc(0.5 * s.t_p * nu_s / hbar) * sinc(0.5 * s.t_p * nu_i / hbar);
            return Polar{env, 0.5 * (nu_s - nu_i) * s.tau / hbar};
          },
      },
      state);
}

double amplitude_scale(const PureState& state) {
  return std::visit([](const auto& s) { return s.amplitude_scale; }, state);
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::sinc: return "sinc";
    case Family::rectangular: return "rectangular";
    case Family::classical: return "classical";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "sinc") return Family::sinc;
  if (name == "rectangular") return Family::rectangular;
  if (name == "classical") return Family::classical;
  throw InvalidArgument("unknown state family '" + name + "' (expected gaussian|sinc|rectangular|classical)");
}

void GaussianJsa::validate() const {
  require(std::isfinite(t_plus) && t_plus > 0.0, "Gaussian state requires T_plus > 0");
  require(std::isfinite(t_minus) && t_minus != 0.0, "Gaussian state requires T_minus != 0");
  require(std::isfinite(tau) && std::isfinite(pump_phase_slope), "Gaussian state parameters must be finite");
}

void SincJsa::validate() const {
  require(std::isfinite(t_plus) && t_plus > 0.0, "sinc state requires T_plus > 0");
  require(std::isfinite(t_minus) && t_minus != 0.0, "sinc state requires T_minus != 0");
  require(std::isfinite(tau) && std::isfinite(pump_phase_slope), "sinc state parameters must be finite");
}

void RectangularJsa::validate() const {
  require(std::isfinite(t_p) && t_p > 0.0, "rectangular state requires T_p > 0");
  require(std::isfinite(tau), "rectangular state delay must be finite");
}

std::complex<double> jsa_shape(const PureState& state, double nu_s, double nu_i, double hbar) {
  const auto p = shape_polar(state, nu_s, nu_i, hbar);
  return std::polar(p.envelope, p.phase);
}

double analytic_norm(const PureState& state, double hbar) {
  return std::visit(
      Overloaded{
          [&](const GaussianJsa& s) { return std::sqrt(2.0 * s.t_plus * std::abs(s.t_minus) / kPi) / hbar; },
          [&](const SincJsa& s) {
            return std::sqrt(std::sqrt(2.0) * s.t_plus * std::abs(s.t_minus) / (kPi * kSqrtPi)) / hbar;
          },
          [&](const RectangularJsa& s) { return s.t_p / (2.0 * kPi * hbar); },
      },
      state);
}

std::complex<double> evaluate_jsa(const PureState& state, double nu_s, double nu_i, double hbar) {
  const auto p = shape_polar(state, nu_s, nu_i, hbar);
  return std::polar(amplitude_scale(state) * analytic_norm(state, hbar) * p.envelope, p.phase);
}

double classical_weight(const ClassicalCorrelatedState& state, double nu, double hbar) {
  const PureState pure = std::visit([](const auto& s) { return PureState{s}; }, state.profile);
  const auto p = shape_polar(pure, nu, -nu, hbar);
  const double amp = amplitude_scale(pure) * analytic_norm(pure, hbar) * p.envelope;
  return amp * amp;
}

FrequencyGrid FrequencyGrid::symmetric(double half_width, std::size_t points) {
  if (!(half_width > 0.0) || points < 3) throw InvalidArgument("frequency grid needs half_width > 0 and >= 3 points");
  FrequencyGrid g;
  g.step = 2.0 * half_width / static_cast<double>(points - 1);
  g.nu.resize(points);
  for (std::size_t k = 0; k < points; ++k) g.nu[k] = -half_width + g.step * static_cast<double>(k);
  return g;
}

double default_span(const PureState& state, double hbar) {
  return std::visit(
      Overloaded{
          [&](const GaussianJsa& s) { return hbar * std::max(8.0 / s.t_plus, 16.0 / std::abs(s.t_minus)); },
          // Covers 8 sinc lobes on either side of the anti-diagonal centre.
          [&](const SincJsa& s) { return hbar * std::max(8.0 / s.t_plus, 16.0 * kPi / std::abs(s.t_minus)); },
          [&](const RectangularJsa& s) { return hbar * 16.0 * kPi / s.t_p; },
      },
      state);
}

double narrowest_feature(const PureState& state, double hbar) {
  return std::visit(
      Overloaded{
          [&](const GaussianJsa& s) {
            // 6 sigma of |Phi|^2 along one axis with the other detuning held fixed.
            return 6.0 * hbar / std::sqrt(4.0 * s.t_plus * s.t_plus + s.t_minus * s.t_minus);
          },
          [&](const SincJsa& s) { return hbar * std::min(3.0 / s.t_plus, 4.0 * kPi / std::abs(s.t_minus)); },
          [&](const RectangularJsa& s) { return hbar * 4.0 * kPi / s.t_p; },
      },
      state);
}

FrequencyGrid default_grid(const PureState& state, std::size_t points, double hbar) {
  return FrequencyGrid::symmetric(0.5 * default_span(state, hbar), points);
}

void check_resolution(const PureState& state, const FrequencyGrid& grid, double hbar) {
  const double samples = narrowest_feature(state, hbar) / grid.step;
  if (samples < static_cast<double>(kMinSamplesPerFeature)) {
    throw ResolutionError("grid step " + std::to_string(grid.step) + " eV gives " + std::to_string(samples) +
                          " samples across the narrowest feature (need >= " +
                          std::to_string(kMinSamplesPerFeature) + ")");
  }
}

Eigen::MatrixXcd sample_jsa(const PureState& state, const FrequencyGrid& grid, double hbar) {
  std::visit([](const auto& s) { s.validate(); }, state);
  check_resolution(state, grid, hbar);
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = evaluate_jsa(state, grid.nu[i], grid.nu[j], hbar);
  }
  if (!m.allFinite()) throw NumericError("JSA contains non-finite samples");
  return m;
}

Eigen::MatrixXd joint_spectrum(const PureState& state, const FrequencyGrid& grid, double hbar) {
  std::visit([](const auto& s) { s.validate(); }, state);
  check_resolution(state, grid, hbar);
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double env = shape_polar(state, grid.nu[i], grid.nu[j], hbar).envelope;
      s(i, j) = env * env;
    }
  }
  const double mass = s.sum() * grid.step * grid.step;
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DegenerateStateError("joint spectrum has zero norm on the grid");
  s /= mass;
  return s;
}

double normalize(const PureState& state, const FrequencyGrid& grid, double hbar) {
  std::visit([](const auto& s) { s.validate(); }, state);
  check_resolution(state, grid, hbar);
  double sum = 0.0;
  for (double nu_i : grid.nu) {
    for (double nu_s : grid.nu) {
      const double env = shape_polar(state, nu_s, nu_i, hbar).envelope;
      sum += env * env;
    }
  }
  const double norm2 = sum * grid.step * grid.step;
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw DegenerateStateError("state has zero norm on the grid");
  return 1.0 / std::sqrt(norm2);
}

}  // namespace vss
