#pragma once

#include <string>
#include <vector>

#include "vss/medium.hpp"
#include "vss/tpa.hpp"

namespace vss {

/// T_- integration window and delay grid of the averaged signal.
struct AverageSpec {
  double t_minus_min = 2.0;     // ps
  double t_minus_max = 10.0;    // ps
  double t_minus_step = 3e-3;   // ps
  double tau_max = 2.0;         // ps
  double tau_step = 1e-4;       // ps

  /// Throws InvalidArgument for a malformed spec and DomainError when
  /// tau_max > t_minus_min (the sinc closed form would be extrapolated).
  void validate() const;
};

enum class AverageMethod {
  direct,      // trapezoid over every (T_-, tau) node
  factorized,  // same trapezoid sum regrouped into T_- moments, O(levels^2) per tau
  analytic,    // exact T_- integral of the exponential sum; no step dependence
};

AverageMethod average_method_from_string(const std::string& name);
std::string to_string(AverageMethod method);

/// T_- nodes min, min + step, ..., max (last step may be partial).
std::vector<double> t_minus_nodes(const AverageSpec& spec);

struct AveragedCurve {
  TpaCurve curve;                  // values hold Pbar(tau)
  std::size_t t_minus_evaluations = 0;  // T_- nodes per delay point (0 for analytic)
};

/// Pbar(tau) = (1/T) \int P_sinc(T_-, T_+; tau) T_- dT_- by the trapezoid rule.
AveragedCurve weighted_average(const MediumLadder& ladder, double t_plus, const AverageSpec& spec,
                               const TpaOptions& options = {}, unsigned threads = 1,
                               AverageMethod method = AverageMethod::direct, double omega0 = 0.0);

enum class Window { rectangular, hann };

Window window_from_string(const std::string& name);
std::string to_string(Window window);

struct FourierOptions {
  Window window = Window::rectangular;
  // Signal oscillation frequency in units of Delta/hbar. The T_- average
  // leaves cos^2(Delta tau / hbar) terms, i.e. 2 Delta / hbar; a fixed-T_-
  // single-level curve oscillates at Delta / hbar.
  int harmonic = 1;
};

struct Spectrum {
  std::vector<double> energy;     // eV, bin k at k * bin_width
  std::vector<double> magnitude;  // cosine amplitude of the unit-mean signal
  double bin_width = 0.0;         // eV
};

/// Mean-subtracted DFT of the curve normalized to unit mean, up to Nyquist.
/// Energy axis E = 2 pi hbar f / harmonic. Throws on a non-uniform grid.
Spectrum fourier_spectrum(const TpaCurve& curve, const FourierOptions& options = {}, double hbar = kHbar);

struct Peak {
  double energy_mismatch = 0.0;  // eV
  double magnitude = 0.0;
  std::string level_label;       // nearest intermediate, empty when none is close
  double virtual_energy = 0.0;   // eV, energy_mismatch + eps_g + omega0
};

struct PeakReport {
  std::vector<Peak> peaks;  // energy ascending
  std::vector<double> virtual_energies;
  double bin_width = 0.0;
};

struct PeakOptions {
  double min_prominence = 0.02;  // fraction of the largest non-zero-frequency bin
  std::size_t max_peaks = 0;     // keep the tallest N (0 = all)
  double label_tolerance = 0.05; // eV, or two bins if wider
};

/// Local maxima outside the zero-frequency lobe, refined by a three-point
/// parabola, labelled against the ladder's energy mismatches at omega0.
PeakReport detect_peaks(const Spectrum& spectrum, const MediumLadder& ladder, double omega0,
                        const PeakOptions& options = {});

}  // namespace vss
