#include "vss/spectroscopy.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include "vss/errors.hpp"
#include "vss/parallel.hpp"

namespace vss {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Real-to-complex transform; FFTW_ESTIMATE keeps the plan, and hence the
// output bits, independent of timing measurements.
std::vector<cd> real_fft(std::vector<double> input) {
  const int n = static_cast<int>(input.size());
  std::vector<cd> out(static_cast<std::size_t>(n / 2 + 1));
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, input.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericError("FFTW could not create a plan");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

// \int_a^b exp(-i beta T) dT, with a series where the closed form cancels.
cd window_exponential(cd beta, double a, double b) {
  if (std::abs(beta) * b < 0.5) {
    cd term{1.0, 0.0};  // (-i beta)^n / n!
    cd sum{};
    double pa = a;
    double pb = b;
    for (int n = 0; n < 40; ++n) {
      sum += term * (pb - pa) / static_cast<double>(n + 1);
      term *= -kI * beta / static_cast<double>(n + 1);
      pa *= a;
      pb *= b;
    }
    return sum;
  }
  return (std::exp(-kI * beta * a) - std::exp(-kI * beta * b)) / (kI * beta);
}

}  // namespace

AverageMethod average_method_from_string(const std::string& name) {
  if (name == "direct" || name == "trapezoid") return AverageMethod::direct;
  if (name == "factorized") return AverageMethod::factorized;
  if (name == "analytic") return AverageMethod::analytic;
  throw InvalidArgument("unknown T_minus quadrature '" + name + "' (expected trapezoid|factorized|analytic)");
}

std::string to_string(AverageMethod method) {
  switch (method) {
    case AverageMethod::direct: return "trapezoid";
    case AverageMethod::factorized: return "factorized";
    case AverageMethod::analytic: return "analytic";
  }
  return "unknown";
}

void AverageSpec::validate() const {
  for (double v : {t_minus_min, t_minus_max, t_minus_step, tau_max, tau_step}) {
    if (!std::isfinite(v)) throw InvalidArgument("averaging spec values must be finite");
  }
  if (!(t_minus_min > 0.0) || !(t_minus_max > t_minus_min)) {
    throw InvalidArgument("averaging spec needs 0 < T_minus_min < T_minus_max");
  }
  if (!(t_minus_step > 0.0) || !(tau_step > 0.0)) throw InvalidArgument("averaging steps must be positive");
  if (!(tau_max > 0.0)) throw InvalidArgument("tau_max must be positive");
  if (tau_max > t_minus_min) {
    throw DomainError("tau_max exceeds T_minus_min: the sinc closed form is only modelled for tau <= T_minus");
  }
}

std::vector<double> t_minus_nodes(const AverageSpec& spec) {
  return uniform_grid(spec.t_minus_min, spec.t_minus_max, spec.t_minus_step);
}

AveragedCurve weighted_average(const MediumLadder& ladder, double t_plus, const AverageSpec& spec,
                               const TpaOptions& options, unsigned threads, AverageMethod method, double omega0) {
  spec.validate();
  ladder.validate();
  if (!(t_plus > 0.0)) throw InvalidArgument("T_plus must be positive");
  const double h = options.constants.hbar;
  const double w0 = omega0 > 0.0 ? omega0 : resonant_carrier(ladder);
  const auto kin = kinematics(ladder, w0);
  const std::size_t levels = kin.size();

  AveragedCurve result;
  result.curve.params = {Family::sinc, t_plus, 0.0, 0.0, w0, Family::gaussian};
  const double span = spec.t_minus_max - spec.t_minus_min;
  for (std::size_t j = 0; j < levels; ++j) {
    for (std::size_t k = j + 1; k < levels; ++k) {
      const double gap = std::abs(kin[j].delta - kin[k].delta);
      if (span * gap / h < 10.0) {
        result.curve.warnings.push_back("averaging window T = " + std::to_string(span) +
                                        " ps does not satisfy T >> hbar/|Delta_j - Delta_k| for levels " +
                                        ladder.intermediates[j].level.label + ", " + ladder.intermediates[k].level.label);
      }
    }
  }

  const auto nodes = t_minus_nodes(spec);
  std::vector<double> weights(nodes.size());
  for (std::size_t m = 0; m + 1 < nodes.size(); ++m) {
    const double half = 0.5 * (nodes[m + 1] - nodes[m]);
    weights[m] += half;
    weights[m + 1] += half;
  }
  result.t_minus_evaluations = nodes.size();
  const auto taus = uniform_grid(0.0, spec.tau_max, spec.tau_step);
  result.curve.tau_grid = taus;
  result.curve.values.assign(taus.size(), 0.0);

  std::vector<cd> amp(levels);
  for (std::size_t j = 0; j < levels; ++j) {
    if (kin[j].eta == cd{}) throw NumericError("level '" + ladder.intermediates[j].level.label + "' has eta = 0");
    amp[j] = ladder.intermediates[j].dipole_product / kin[j].eta;
  }
  const double resonance = resonance_factor(ladder, t_plus, w0, options);
  // P T_- = C |sum_j A_j (2 - e^{-i eta T_-} (e^{i eta tau} + e^{-i eta tau}))|^2: the 1/T_- of the
  // closed form cancels against the T_- weight.
  const double c = options.constants.prefactor * 64.0 * kPi * (std::sqrt(2.0) * t_plus / kSqrtPi) * resonance / span;

  // e^{-i eta_j T_m / hbar}, row-major in m.
  std::vector<cd> decay(method == AverageMethod::analytic ? 0 : nodes.size() * levels);
  for (std::size_t m = 0; m < nodes.size() && !decay.empty(); ++m) {
    for (std::size_t j = 0; j < levels; ++j) decay[m * levels + j] = std::exp(-kI * kin[j].eta * nodes[m] / h);
  }
  cd s0{};
  for (std::size_t j = 0; j < levels; ++j) s0 += 2.0 * amp[j];

  if (method == AverageMethod::direct) {
    parallel_for(taus.size(), threads, [&](std::size_t i) {
      std::vector<cd> a_c(levels);
      for (std::size_t j = 0; j < levels; ++j) {
        const cd e = std::exp(kI * kin[j].eta * taus[i] / h);
        const cd e_inv = std::exp(-kI * kin[j].eta * taus[i] / h);
        a_c[j] = amp[j] * (e + e_inv);
      }
      double acc = 0.0;
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        cd sum = s0;
        const cd* row = &decay[m * levels];
        for (std::size_t j = 0; j < levels; ++j) sum -= a_c[j] * row[j];
        acc += weights[m] * std::norm(sum);
      }
      result.curve.values[i] = c * acc;
    });
  } else {
    // Moments W = \int dT, first_j = \int A_j e^{-i eta_j T} dT, second_jk = \int A_j A_k^* e^{-i(eta_j - eta_k^*)T} dT,
    // either as the same trapezoid sums or as exact integrals.
    double total_weight = 0.0;
    std::vector<cd> first(levels);
    std::vector<cd> second(levels * levels);
    if (method == AverageMethod::factorized) {
      for (double w : weights) total_weight += w;
      for (std::size_t m = 0; m < nodes.size(); ++m) {
        const cd* row = &decay[m * levels];
        for (std::size_t j = 0; j < levels; ++j) {
          first[j] += weights[m] * amp[j] * row[j];
          for (std::size_t k = 0; k < levels; ++k) {
            second[j * levels + k] += weights[m] * amp[j] * row[j] * std::conj(amp[k] * row[k]);
          }
        }
      }
    } else {
      result.t_minus_evaluations = 0;
      const double a = spec.t_minus_min;
      const double b = spec.t_minus_max;
      total_weight = b - a;
      for (std::size_t j = 0; j < levels; ++j) {
        first[j] = amp[j] * window_exponential(kin[j].eta / h, a, b);
        for (std::size_t k = 0; k < levels; ++k) {
          second[j * levels + k] =
              amp[j] * std::conj(amp[k]) * window_exponential((kin[j].eta - std::conj(kin[k].eta)) / h, a, b);
        }
      }
    }
    parallel_for(taus.size(), threads, [&](std::size_t i) {
      std::vector<cd> cos_terms(levels);
      for (std::size_t j = 0; j < levels; ++j) {
        cos_terms[j] = std::exp(kI * kin[j].eta * taus[i] / h) + std::exp(-kI * kin[j].eta * taus[i] / h);
      }
      cd cross{};
      cd quad{};
      for (std::size_t j = 0; j < levels; ++j) {
        cross += first[j] * cos_terms[j];
        for (std::size_t k = 0; k < levels; ++k) quad += second[j * levels + k] * cos_terms[j] * std::conj(cos_terms[k]);
      }
      result.curve.values[i] = c * (total_weight * std::norm(s0) - 2.0 * (std::conj(s0) * cross).real() + quad.real());
    });
  }
  for (double v : result.curve.values) {
    if (!std::isfinite(v)) throw NumericError("averaged transition probability is not finite");
  }
  return result;
}

Window window_from_string(const std::string& name) {
  if (name == "rectangular" || name == "none") return Window::rectangular;
  if (name == "hann") return Window::hann;
  throw InvalidArgument("unknown window '" + name + "' (expected rectangular|hann)");
}

std::string to_string(Window window) { return window == Window::hann ? "hann" : "rectangular"; }

Spectrum fourier_spectrum(const TpaCurve& curve, const FourierOptions& options, double hbar) {
  const auto& t = curve.tau_grid;
  const std::size_t n = t.size();
  if (n < 4 || curve.values.size() != n) throw InvalidArgument("Fourier analysis needs at least 4 samples");
  if (options.harmonic < 1) throw InvalidArgument("harmonic must be >= 1");
  const double step = (t.back() - t.front()) / static_cast<double>(n - 1);
  if (!(step > 0.0)) throw InvalidArgument("delay grid must be increasing");
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(t[k] - (t.front() + step * static_cast<double>(k))) > 1e-6 * step) {
      throw InvalidArgument("Fourier analysis requires a uniform delay grid");
    }
  }

  double mean = 0.0;
  for (double v : curve.values) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> signal(n, 0.0);
  if (mean != 0.0) {
    for (std::size_t k = 0; k < n; ++k) signal[k] = curve.values[k] / mean - 1.0;
  }
  double gain = static_cast<double>(n);
  if (options.window == Window::hann) {
    gain = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n - 1));
      signal[k] *= w;
      gain += w;
    }
  }
  const auto bins = real_fft(std::move(signal));

  Spectrum s;
  // Bin k sits at frequency k / (n step); E = 2 pi hbar f / harmonic.
  s.bin_width = 2.0 * kPi * hbar / (static_cast<double>(n) * step * options.harmonic);
  s.energy.resize(bins.size());
  s.magnitude.resize(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) {
    s.energy[k] = s.bin_width * static_cast<double>(k);
    s.magnitude[k] = (k == 0 ? 1.0 : 2.0) * std::abs(bins[k]) / gain;
  }
  return s;
}

PeakReport detect_peaks(const Spectrum& spectrum, const MediumLadder& ladder, double omega0,
                        const PeakOptions& options) {
  const auto& m = spectrum.magnitude;
  PeakReport report;
  report.bin_width = spectrum.bin_width;
  if (m.size() < 3) return report;
  if (!(options.min_prominence >= 0.0)) throw InvalidArgument("min_prominence must be >= 0");

  // Skip the zero-frequency lobe: bins 1.. while the magnitude keeps falling.
  std::size_t first = 1;
  while (first + 1 < m.size() && m[first + 1] < m[first]) ++first;
  double global = 0.0;
  for (std::size_t k = 1; k < m.size(); ++k) global = std::max(global, m[k]);
  if (!(global > 0.0)) return report;
  const double threshold = options.min_prominence * global;

  const auto kin = kinematics(ladder, omega0);
  const double label_tol = std::max(options.label_tolerance, 2.0 * spectrum.bin_width);
  std::vector<Peak> found;
  for (std::size_t k = std::max<std::size_t>(first, 1); k + 1 < m.size(); ++k) {
    if (!(m[k] > m[k - 1] && m[k] >= m[k + 1] && m[k] >= threshold)) continue;
    const double a = m[k - 1];
    const double b = m[k];
    const double c = m[k + 1];
    const double denom = a - 2.0 * b + c;
    const double shift = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
    Peak p;
    p.energy_mismatch = (static_cast<double>(k) + shift) * spectrum.bin_width;
    p.magnitude = b - 0.25 * (a - c) * shift;
    double best = label_tol;
    for (std::size_t j = 0; j < kin.size(); ++j) {
      const double d = std::abs(kin[j].delta - p.energy_mismatch);
      if (d <= best) {
        best = d;
        p.level_label = ladder.intermediates[j].level.label;
      }
    }
    p.virtual_energy = p.energy_mismatch + ladder.ground.energy + omega0;
    found.push_back(p);
  }
  std::stable_sort(found.begin(), found.end(), [](const Peak& x, const Peak& y) { return x.magnitude > y.magnitude; });
  if (options.max_peaks > 0 && found.size() > options.max_peaks) found.resize(options.max_peaks);
  std::stable_sort(found.begin(), found.end(),
                   [](const Peak& x, const Peak& y) { return x.energy_mismatch < y.energy_mismatch; });
  report.peaks = std::move(found);
  for (const auto& p : report.peaks) report.virtual_energies.push_back(p.virtual_energy);
  return report;
}

}  // namespace vss
