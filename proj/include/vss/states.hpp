#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "vss/constants.hpp"

namespace vss {

enum class Family { gaussian, sinc, rectangular, classical };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

// Frequency arguments nu_s, nu_i are detunings from the carriers, in eV.

/// Filtered type-II down-conversion pair with a Gaussian phase-matching shape.
struct GaussianJsa {
  double t_plus = 10.0;   // ps, pump duration
  double t_minus = 2.0;   // ps, (N_s - N_i) L / 2
  double tau = 0.0;       // ps, idler delay
  double pump_phase_slope = 0.0;  // ps, L N_p / 2
  double omega_s0 = 0.0;  // eV
  double omega_i0 = 0.0;  // eV
  double amplitude_scale = 1.0;

  void validate() const;
};

/// Unfiltered pair: sinc phase matching along nu_s - nu_i.
struct SincJsa {
  double t_plus = 10.0;
  double t_minus = 2.0;
  double tau = 0.0;
  double pump_phase_slope = 0.0;
  double omega_s0 = 0.0;
  double omega_i0 = 0.0;
  double amplitude_scale = 1.0;

  void validate() const;
};

/// Two independent rectangular pulses of duration t_p, delayed by tau.
struct RectangularJsa {
  double t_p = 10.0;
  double tau = 0.0;
  double omega0 = 0.0;
  double amplitude_scale = 1.0;

  void validate() const;
};

using EntangledProfile = std::variant<GaussianJsa, SincJsa>;
using PureState = std::variant<GaussianJsa, SincJsa, RectangularJsa>;

/// Diagonal mixture of monochromatic anti-correlated pairs weighted by |Phi(nu, -nu)|^2.
struct ClassicalCorrelatedState {
  EntangledProfile profile;
  double omega0 = 0.0;
  bool normalize_weights = true;
};

/// Raw mode function without its normalization constant.
std::complex<double> jsa_shape(const PureState& state, double nu_s, double nu_i, double hbar = kHbar);

/// Closed-form constant c with c^2 \int\int |shape|^2 dnu_s dnu_i = 1.
double analytic_norm(const PureState& state, double hbar = kHbar);

/// Phi(nu_s, nu_i) = amplitude_scale * analytic_norm * shape, delay and pump phases included.
std::complex<double> evaluate_jsa(const PureState& state, double nu_s, double nu_i, double hbar = kHbar);

/// Weight |Phi(nu, -nu)|^2 of the classical mixture at detuning nu.
double classical_weight(const ClassicalCorrelatedState& state, double nu, double hbar = kHbar);

/// Square grid of detunings, identical on both axes, endpoints included.
struct FrequencyGrid {
  std::vector<double> nu;
  double step = 0.0;

  static FrequencyGrid symmetric(double half_width, std::size_t points);
  [[nodiscard]] std::size_t size() const { return nu.size(); }
};

/// Full axis width (eV) that covers the support of `state`.
double default_span(const PureState& state, double hbar = kHbar);

/// Narrowest feature (eV) of |Phi|^2 along a grid axis.
double narrowest_feature(const PureState& state, double hbar = kHbar);

inline constexpr std::size_t kDefaultGridPoints = 512;
inline constexpr std::size_t kMinSamplesPerFeature = 16;

FrequencyGrid default_grid(const PureState& state, std::size_t points = kDefaultGridPoints, double hbar = kHbar);

/// Throws ResolutionError when the grid puts fewer than 16 samples across the narrowest feature.
void check_resolution(const PureState& state, const FrequencyGrid& grid, double hbar = kHbar);

/// Complex JSA sampled on the grid, rows nu_s and columns nu_i.
Eigen::MatrixXcd sample_jsa(const PureState& state, const FrequencyGrid& grid, double hbar = kHbar);

/// S(nu_s, nu_i) = |Phi|^2 renormalized so that sum S dnu^2 = 1.
Eigen::MatrixXd joint_spectrum(const PureState& state, const FrequencyGrid& grid, double hbar = kHbar);

/// c such that c^2 sum |shape|^2 dnu^2 = 1 on the grid. Throws DegenerateStateError on zero norm.
double normalize(const PureState& state, const FrequencyGrid& grid, double hbar = kHbar);

}  // namespace vss
