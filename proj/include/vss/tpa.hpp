#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vss/constants.hpp"
#include "vss/medium.hpp"
#include "vss/states.hpp"

namespace vss {

/// Detunings of the rectangular-pulse amplitude for one intermediate level.
struct RectangularKinematics {
  std::complex<double> delta_f;  // eps_j - i kappa_j/2 - eps_f + omega0
  std::complex<double> delta_g;  // eps_g - eps_j + i kappa_j/2 + omega0
  double delta_omega = 0.0;      // eps_g - eps_f + 2 omega0
};

/// Builds the three detunings and checks delta_f + delta_g == delta_omega bit for bit.
RectangularKinematics rectangular_kinematics(const MediumLadder& ladder, std::size_t level, double omega0);

struct TpaOptions {
  Constants constants{};
  // Average the resonance factor over the Lorentzian final-state line (kappa_f).
  bool final_linewidth_average = false;
  double classical_rel_tol = 1e-11;
};

/// Non-fatal notices collected while evaluating (out-of-regime delays etc.).
using Warnings = std::vector<std::string>;

double tpa_rectangular(const MediumLadder& ladder, double t_p, double tau, double omega0,
                       const TpaOptions& options = {}, Warnings* warnings = nullptr);

/// Mixed anti-correlated pairs: P = pref \int w(nu) |a(nu, tau)|^2 dnu.
double tpa_classical(const MediumLadder& ladder, const ClassicalCorrelatedState& state, double tau,
                     const TpaOptions& options = {});

double tpa_gaussian(const MediumLadder& ladder, double t_plus, double t_minus, double tau, double omega0,
                    const TpaOptions& options = {});

double tpa_sinc(const MediumLadder& ladder, double t_plus, double t_minus, double tau, double omega0,
                const TpaOptions& options = {}, Warnings* warnings = nullptr);

/// exp(-2 T_+^2 (eps_g - eps_f + 2 omega0)^2 / hbar^2), optionally convolved with
/// the final-state Lorentzian (a Voigt profile evaluated through w(z)).
double resonance_factor(const MediumLadder& ladder, double t_plus, double omega0, const TpaOptions& options);

/// Family and parameters for a delay sweep. omega0 <= 0 selects the resonant carrier.
struct StateParams {
  Family family = Family::sinc;
  double t_plus = 10.0;
  double t_minus = 2.0;
  double t_p = 10.0;
  double omega0 = 0.0;
  Family classical_profile = Family::gaussian;
};

double carrier(const MediumLadder& ladder, const StateParams& params);

struct TpaCurve {
  std::vector<double> tau_grid;  // ps
  std::vector<double> values;    // arbitrary units
  StateParams params;
  std::string level;  // intermediate label for single-level curves, empty otherwise
  Warnings warnings;
};

/// Evenly spaced points start, start + step, ..., with `stop` appended when
/// the last step would overshoot it. Throws on a non-positive step.
std::vector<double> uniform_grid(double start, double stop, double step);

double tpa_probability(const MediumLadder& ladder, const StateParams& params, double tau,
                       const TpaOptions& options = {}, Warnings* warnings = nullptr);

TpaCurve tpa_curve(const MediumLadder& ladder, const StateParams& params, const std::vector<double>& tau_grid,
                   const TpaOptions& options = {}, unsigned threads = 1);

/// Delay curve of a ladder holding exactly one intermediate level.
TpaCurve tpa_single_level(const MediumLadder& ladder, const StateParams& params,
                          const std::vector<double>& tau_grid, const TpaOptions& options = {},
                          unsigned threads = 1);

/// Frequency-domain amplitude on the energy shell nu_s + nu_i = 0:
/// sum_j D_j \int dnu Phi(nu, -nu) [1/(eta_j - nu) + 1/(eta_j + nu)].
/// Its absolute scale is not tied to the closed forms; compare ratios.
double tpa_oracle_frequency_domain(const MediumLadder& ladder, const PureState& state, double omega0,
                                   const TpaOptions& options = {});

}  // namespace vss
