// Acceptance checks. `vss_acceptance [1-6 ...]` prints one PASS/FAIL line per
// check and exits non-zero when any check fails. Lines starting with "info"
// are diagnostics, never counted.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "vss/medium.hpp"
#include "vss/parallel.hpp"
#include "vss/schmidt.hpp"
#include "vss/spectroscopy.hpp"
#include "vss/tpa.hpp"

using namespace vss;

namespace {

// Tolerances.
constexpr double kPeakTolerance = 0.05;          // eV, or one bin if wider
constexpr double kVirtualTolerance = 0.05;       // eV
constexpr double kSpeedupLow = 10.0;             // "about 20x"
constexpr double kSpeedupHigh = 40.0;
constexpr double kFlatRectangular = 1e-6;
constexpr double kFlatClassical = 1e-6;
constexpr double kFlatGaussian = 1e-4;
constexpr double kEntropyTolerance = 1e-3;       // bits
constexpr double kSeparableEntropy = 1e-3;       // bits
constexpr double kOracleTolerance = 1e-3;        // relative, after one-point calibration
constexpr double kStructureProminence = 0.01;
// The quoted single-level energies are truncated to two decimals (6.9889 is quoted as 6.98), so a
// reference value v stands for [v, v + 0.01); one bin of slack is allowed on either side.
constexpr double kQuotedResolution = 0.01;

const std::vector<double> kLines{5.1, 6.98, 7.65, 7.95, 8.12};
const std::vector<double> kVirtual{-3.40, -1.51, -0.85, -0.54, -0.37};
const std::vector<std::string> kLabels{"2p", "3p", "4p", "5p", "6p"};

int failures = 0;

void report(bool pass, const std::string& id, const std::string& what, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("{} {:<3} {}: {}\n", pass ? "PASS" : "FAIL", id, what, detail);
  std::fflush(stdout);
}

void info(const std::string& id, const std::string& text) {
  fmt::print("info {:<3} {}\n", id, text);
  std::fflush(stdout);
}

const MediumLadder& hydrogen() {
  static const MediumLadder l = hydrogen_ladder(8);
  return l;
}

double omega0() { return resonant_carrier(hydrogen()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo - 1.0;
}

std::string list(const std::vector<double>& v, const char* format = "{:.4f}") {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + fmt::format(fmt::runtime(format), x);
  return "[" + s + "]";
}

struct PipelineRun {
  PeakReport dominant;  // five tallest
  PeakReport all;       // every local maximum above the floor
  double seconds = 0.0;
  std::size_t nodes = 0;
};

// Full pipeline: T_- average, spectrum on the Delta axis, peak detection.
PipelineRun pipeline(double dt_minus, AverageMethod method) {
  AverageSpec spec;  // T_- in [2, 10] ps, tau in [0, 2] ps at 0.1 fs
  spec.t_minus_step = dt_minus;
  const auto t0 = std::chrono::steady_clock::now();
  const auto avg = weighted_average(hydrogen(), 10.0, spec, {}, 0, method, omega0());
  const auto spectrum = fourier_spectrum(avg.curve, {Window::rectangular, 2});
  PipelineRun run;
  run.dominant = detect_peaks(spectrum, hydrogen(), omega0(), {1e-5, 5, 0.05});
  run.seconds = seconds_since(t0);
  run.all = detect_peaks(spectrum, hydrogen(), omega0(), {1e-6, 0, 0.05});
  run.nodes = avg.t_minus_evaluations;
  return run;
}

std::vector<double> energies(const PeakReport& r) {
  std::vector<double> e;
  for (const auto& p : r.peaks) e.push_back(p.energy_mismatch);
  return e;
}

// Each expected value must be matched by a distinct found value within tol.
bool matches(const std::vector<double>& found, const std::vector<double>& expected, double tol) {
  if (found.size() != expected.size()) return false;
  std::vector<double> f = found;
  std::vector<double> e = expected;
  std::sort(f.begin(), f.end());
  std::sort(e.begin(), e.end());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i] - e[i]) > tol) return false;
  }
  return true;
}

// Tallest peak carrying the label; residue peaks within the label tolerance may share it.
const Peak* find_label(const PeakReport& r, const std::string& label) {
  const Peak* best = nullptr;
  for (const auto& p : r.peaks) {
    if (p.level_label == label && (!best || p.magnitude > best->magnitude)) best = &p;
  }
  return best;
}

std::string peak_table(const PeakReport& r) {
  std::string s;
  for (const auto& p : r.peaks) {
    s += fmt::format("{}{:.4f}({}{:.2e})", s.empty() ? "" : " ", p.energy_mismatch,
                     p.level_label.empty() ? "" : p.level_label + " ", p.magnitude);
  }
  return s;
}

PipelineRun& run_3fs() {
  static PipelineRun r = pipeline(3e-3, AverageMethod::direct);
  return r;
}

void criterion_1() {
  const auto& run = run_3fs();
  const double tol = std::max(kPeakTolerance, run.dominant.bin_width);
  const auto found = energies(run.dominant);
  report(matches(found, kLines, tol), "1a", "five dominant Fourier peaks at 5.1, 6.98, 7.65, 7.95, 8.12 eV",
         fmt::format("found {} (tol {:.3f} eV, bin {:.2e} eV, {:.2f} s)", list(found), tol, run.dominant.bin_width,
                     run.seconds));
  report(matches(run.dominant.virtual_energies, kVirtual, kVirtualTolerance), "1b",
         "virtual energies -3.40, -1.51, -0.85, -0.54, -0.37 eV",
         fmt::format("found {} (tol {:.2f} eV)", list(run.dominant.virtual_energies), kVirtualTolerance));

  // Diagnostics: where the level lines sit, and what the exact T_- integral gives.
  std::string located;
  for (const auto& l : kLabels) {
    const Peak* p = find_label(run.all, l);
    located += p ? fmt::format(" {}={:.4f}/{:.4f}eV", l, p->energy_mismatch, p->virtual_energy) : " " + l + "=missing";
  }
  info("1", "level-labelled peaks (mismatch/virtual):" + located);
  info("1", "five tallest at 3 fs: " + peak_table(run.dominant));
  const auto exact = pipeline(3e-3, AverageMethod::analytic);
  info("1", fmt::format("five tallest with the exact T_- integral: {} -> {}", peak_table(exact.dominant),
                        matches(energies(exact.dominant), kLines, tol) ? "matches" : "does not match"));
}

void criterion_2() {
  const auto& fine = run_3fs();
  const auto coarse = pipeline(6e-2, AverageMethod::direct);
  const double bin = fine.dominant.bin_width;

  bool kept = true;
  std::string moved;
  for (const auto& p : fine.dominant.peaks) {
    double best = INFINITY;
    for (const auto& q : coarse.all.peaks) best = std::min(best, std::abs(q.energy_mismatch - p.energy_mismatch));
    if (best > bin) {
      kept = false;
      moved += fmt::format(" {:.4f}", p.energy_mismatch);
    }
  }
  report(kept, "2a", "every peak of run 1 present at 60 fs within one bin",
         kept ? fmt::format("{} peaks within {:.2e} eV", fine.dominant.peaks.size(), bin) : "missing:" + moved);

  bool same = fine.dominant.peaks.size() == coarse.dominant.peaks.size();
  for (std::size_t i = 0; same && i < fine.dominant.peaks.size(); ++i) {
    same = std::abs(fine.dominant.peaks[i].energy_mismatch - coarse.dominant.peaks[i].energy_mismatch) <= bin;
  }
  report(same, "2b", "five dominant peaks unchanged at 60 fs within one bin",
         fmt::format("3 fs {} vs 60 fs {}", list(energies(fine.dominant)), list(energies(coarse.dominant))));

  bool levels = true;
  std::string shifts;
  for (const auto& l : kLabels) {
    const Peak* a = find_label(fine.all, l);
    const Peak* b = find_label(coarse.all, l);
    const bool ok = a && b && std::abs(a->energy_mismatch - b->energy_mismatch) <= bin;
    levels = levels && ok;
    shifts += a && b ? fmt::format(" {}:{:+.1e}", l, b->energy_mismatch - a->energy_mismatch) : " " + l + ":missing";
  }
  report(levels, "2c", "level lines 2p-6p unchanged at 60 fs within one bin", "shift" + shifts + " eV");

  const double speedup = fine.seconds / coarse.seconds;
  report(speedup >= kSpeedupLow && speedup <= kSpeedupHigh, "2d", "60 fs run about 20x faster",
         fmt::format("{:.3f} s vs {:.3f} s = {:.1f}x; T_- nodes {} vs {} = {:.1f}x (band {}-{}x)", fine.seconds,
                     coarse.seconds, speedup, fine.nodes, coarse.nodes,
                     static_cast<double>(fine.nodes) / coarse.nodes, kSpeedupLow, kSpeedupHigh));
  info("2", "five tallest at 60 fs: " + peak_table(coarse.dominant));
}

void criterion_3() {
  const double t_p = 10.0;
  std::vector<double> rect;
  for (double tau : uniform_grid(0.0, 0.8 * t_p, 0.1)) rect.push_back(tpa_rectangular(hydrogen(), t_p, tau, omega0()));
  const double s_rect = spread(rect);
  report(s_rect < kFlatRectangular, "3a", "rectangular pulses: relative spread over tau in [0, 0.8 T_p] < 1e-6",
         fmt::format("spread {:.3e}, P(0) = {:.6e}, P(0.8 T_p) = {:.6e}", s_rect, rect.front(), rect.back()));

  const auto taus = uniform_grid(0.0, 2.0, 0.2);
  std::string detail;
  bool flat = true;
  for (Family profile : {Family::gaussian, Family::sinc}) {
    std::vector<double> v(taus.size());
    const EntangledProfile shape = profile == Family::gaussian ? EntangledProfile{GaussianJsa{.t_plus = 10.0, .t_minus = 2.0}}
                                                               : EntangledProfile{SincJsa{.t_plus = 10.0, .t_minus = 2.0}};
    parallel_for(taus.size(), 0, [&](std::size_t i) {
      v[i] = tpa_classical(hydrogen(), ClassicalCorrelatedState{shape, omega0()}, taus[i]);
    });
    const double s = spread(v);
    flat = flat && s < kFlatClassical;
    detail += fmt::format("{}{} weight spread {:.3e}", detail.empty() ? "" : "; ", to_string(profile), s);
  }
  report(flat, "3b", "classical mixture: relative spread over tau in [0, 2] ps < 1e-6", detail);

  std::vector<double> gauss;
  for (double tau : uniform_grid(0.0, 2.0, 1e-3)) gauss.push_back(tpa_gaussian(hydrogen(), 10.0, 2.0, tau, omega0()));
  const double s_gauss = spread(gauss);
  report(s_gauss < kFlatGaussian, "3c", "Gaussian anti-correlated pair: relative spread over tau in [0, 2] ps < 1e-4",
         fmt::format("spread {:.3e}, P(0) = {:.6e}, P(2 ps) = {:.6e}, P(2)/P(0) = {:.4f}", s_gauss, gauss.front(),
                     gauss.back(), gauss.back() / gauss.front()));
}

void criterion_4() {
  const std::vector<double> t_minus{2.0, 5.0, 10.0, 20.0, 40.0};
  const auto curve = entropy_curve(Family::gaussian, 10.0, t_minus, 0);
  double worst = 0.0;
  std::string detail;
  for (const auto& p : curve) {
    const double closed = gaussian_entropy_closed_form(10.0, p.t_minus);
    worst = std::max(worst, std::abs(p.entropy - closed));
    detail += fmt::format(" E({:g})={:.6f}/{:.6f}", p.t_minus, p.entropy, closed);
  }
  report(worst < kEntropyTolerance, "4a", "Gaussian SVD entropy matches the geometric closed form within 1e-3 bits",
         fmt::format("max |dE| {:.2e} bits; svd/closed:{}", worst, detail));

  const double separable = curve[3].entropy;
  report(separable < kSeparableEntropy, "4b", "E(T_- = 2 T_+) < 1e-3 bits", fmt::format("E(20 ps) = {:.2e} bits", separable));

  const auto sinc = schmidt_converged(SincJsa{.t_plus = 10.0, .t_minus = 2.0});
  report(sinc.spectrum.entropy < curve[0].entropy, "4c", "sinc entropy below Gaussian entropy at T_- = 2 ps",
         fmt::format("sinc {:.4f} bits ({} points{}), Gaussian {:.4f} bits", sinc.spectrum.entropy, sinc.points,
                     sinc.converged ? "" : ", grid cap reached before a convergence check", curve[0].entropy));
}

void criterion_5() {
  const std::vector<double> t_minus{2.0, 4.0, 8.0};
  std::vector<double> taus;
  for (int k = 0; k < 7; ++k) taus.push_back(2.0 * k / 6.0);
  for (Family family : {Family::sinc, Family::gaussian}) {
    struct Point {
      double tm, tau, closed, oracle;
    };
    std::vector<Point> pts;
    for (double tm : t_minus)
      for (double tau : taus) pts.push_back({tm, tau, 0.0, 0.0});
    parallel_for(pts.size(), 0, [&](std::size_t i) {
      auto& p = pts[i];
      if (family == Family::sinc) {
        p.closed = tpa_sinc(hydrogen(), 10.0, p.tm, p.tau, omega0());
        p.oracle = tpa_oracle_frequency_domain(hydrogen(), SincJsa{.t_plus = 10.0, .t_minus = p.tm, .tau = p.tau}, omega0());
      } else {
        p.closed = tpa_gaussian(hydrogen(), 10.0, p.tm, p.tau, omega0());
        p.oracle =
            tpa_oracle_frequency_domain(hydrogen(), GaussianJsa{.t_plus = 10.0, .t_minus = p.tm, .tau = p.tau}, omega0());
      }
    });
    const double scale = pts.front().closed / pts.front().oracle;
    double worst = 0.0;
    const Point* at = &pts.front();
    for (const auto& p : pts) {
      const double dev = std::abs(scale * p.oracle / p.closed - 1.0);
      if (dev > worst) {
        worst = dev;
        at = &p;
      }
    }
    report(worst < kOracleTolerance, family == Family::sinc ? "5a" : "5b",
           fmt::format("{} closed form equals the frequency-domain oracle on 3x7 (T_-, tau) within 1e-3",
                       to_string(family)),
           fmt::format("max deviation {:.2e} at T_- = {:g} ps, tau = {:.3f} ps; calibration {:.6e}", worst, at->tm,
                       at->tau, scale));
  }
}

void criterion_6() {
  const auto grid = uniform_grid(0.0, 2.0, 1e-4);
  StateParams sinc;  // T_+ = 10 ps, T_- = 2 ps
  sinc.family = Family::sinc;
  const std::vector<std::tuple<std::string, std::string, double>> quoted{
      {"6a", "3p", 6.98}, {"6b", "4p", 7.65}, {"6c", "5p", 7.95}};
  for (const auto& [id, label, value] : quoted) {
    const auto one = hydrogen().restricted_to(hydrogen().find(label));
    const auto curve = tpa_single_level(one, sinc, grid, {}, 0);
    const auto spectrum = fourier_spectrum(curve, {Window::rectangular, 1});
    const auto top = detect_peaks(spectrum, one, omega0(), {0.0, 1, 0.05});
    const double bin = spectrum.bin_width;
    const bool ok = !top.peaks.empty() && top.peaks[0].energy_mismatch >= value - bin &&
                    top.peaks[0].energy_mismatch <= value + kQuotedResolution + bin;
    report(ok, id, fmt::format("sinc single-level {} dominant component at {:.2f} eV (+- one bin)", label, value),
           top.peaks.empty() ? "no peak" :
           fmt::format("found {:.4f} eV, accepted [{:.4f}, {:.4f}] (bin {:.2e} eV)", top.peaks[0].energy_mismatch,
                       value - bin, value + kQuotedResolution + bin, bin));
  }

  for (Family family : {Family::gaussian, Family::rectangular}) {
    StateParams p;
    p.family = family;
    std::string detail;
    bool quiet = true;
    for (const std::string label : {"3p", "4p", "5p"}) {
      const auto one = hydrogen().restricted_to(hydrogen().find(label));
      const auto curve = tpa_single_level(one, p, grid, {}, 0);
      const auto peaks = detect_peaks(fourier_spectrum(curve, {Window::rectangular, 1}), one, omega0(),
                                      {kStructureProminence, 0, 0.05});
      quiet = quiet && peaks.peaks.empty();
      detail += fmt::format("{}{}: {} peaks", detail.empty() ? "" : ", ", label, peaks.peaks.size());
    }
    report(quiet, family == Family::gaussian ? "6d" : "6e",
           fmt::format("{} single-level curves have no off-zero component above 1% prominence", to_string(family)),
           detail);
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<void()>> criteria{{"1", criterion_1}, {"2", criterion_2}, {"3", criterion_3},
                                                              {"4", criterion_4}, {"5", criterion_5}, {"6", criterion_6}};
  std::vector<std::string> chosen;
  for (int i = 1; i < argc; ++i) chosen.emplace_back(argv[i]);
  if (chosen.empty())
    for (const auto& [id, fn] : criteria) chosen.push_back(id);
  for (const auto& id : chosen) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      fmt::print(stderr, "unknown criterion '{}'\n", id);
      return 2;
    }
    it->second();
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
