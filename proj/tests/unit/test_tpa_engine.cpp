#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vss/errors.hpp"
#include "vss/medium.hpp"
#include "vss/tpa.hpp"

using namespace vss;

namespace {
const MediumLadder& ladder() {
  static const MediumLadder l = hydrogen_ladder(8);
  return l;
}
double w0() { return resonant_carrier(ladder()); }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo - 1.0;
}
}  // namespace

TEST_CASE("sinc probability is even in the delay") {
  for (double tau : {0.1, 0.37, 1.2, 1.99}) {
    const double p = tpa_sinc(ladder(), 10.0, 2.0, tau, w0());
    const double m = tpa_sinc(ladder(), 10.0, 2.0, -tau, w0());
    CHECK(std::abs(p - m) <= 1e-12 * std::abs(p));
  }
}

TEST_CASE("probabilities are finite and non-negative on the delay grid") {
  for (double tm : {2.0, 4.0, 8.0}) {
    for (double tau = 0.0; tau <= 2.0; tau += 0.05) {
      const double s = tpa_sinc(ladder(), 10.0, tm, tau, w0());
      const double g = tpa_gaussian(ladder(), 10.0, tm, tau, w0());
      CHECK(std::isfinite(s));
      CHECK(std::isfinite(g));
      CHECK(s >= 0.0);
      CHECK(g >= 0.0);
    }
    const double r = tpa_rectangular(ladder(), tm, 0.5 * tm, w0());
    CHECK(std::isfinite(r));
    CHECK(r >= 0.0);
  }
}

TEST_CASE("probability scales with the square of the dipole products and with the prefactor") {
  MediumLadder doubled = ladder();
  for (auto& j : doubled.intermediates) j.dipole_product *= 2.0;
  TpaOptions opts;
  opts.constants.prefactor = 3.0;
  for (double tau : {0.0, 0.8}) {
    const double base = tpa_sinc(ladder(), 10.0, 2.0, tau, w0());
    CHECK(tpa_sinc(doubled, 10.0, 2.0, tau, w0()) == doctest::Approx(4.0 * base).epsilon(1e-12));
    CHECK(tpa_sinc(ladder(), 10.0, 2.0, tau, w0(), opts) == doctest::Approx(3.0 * base).epsilon(1e-12));
    const double g = tpa_gaussian(ladder(), 10.0, 2.0, tau, w0());
    CHECK(tpa_gaussian(doubled, 10.0, 2.0, tau, w0()) == doctest::Approx(4.0 * g).epsilon(1e-12));
  }
}

TEST_CASE("detuning the carrier suppresses the signal through the resonance factor") {
  TpaOptions opts;
  const double on = resonance_factor(ladder(), 10.0, w0(), opts);
  CHECK(on == 1.0);
  const double off = resonance_factor(ladder(), 10.0, w0() + 1e-4, opts);
  CHECK(off == doctest::Approx(std::exp(-2.0 * 100.0 * 4e-8 / (kHbar * kHbar))).epsilon(1e-12));
  opts.final_linewidth_average = true;
  const double voigt = resonance_factor(ladder(), 10.0, w0(), opts);
  CHECK(voigt <= 1.0);
  CHECK(voigt == doctest::Approx(1.0).epsilon(1e-6));  // kappa_f is far below hbar / T_+
}

TEST_CASE("frequency-domain oracle reproduces the closed forms up to one constant") {
  const double tau0 = 0.25;
  const double cs = tpa_sinc(ladder(), 10.0, 4.0, tau0, w0()) /
                    tpa_oracle_frequency_domain(ladder(), SincJsa{.t_plus = 10.0, .t_minus = 4.0, .tau = tau0}, w0());
  const double cg = tpa_gaussian(ladder(), 10.0, 4.0, tau0, w0()) /
                    tpa_oracle_frequency_domain(ladder(), GaussianJsa{.t_plus = 10.0, .t_minus = 4.0, .tau = tau0}, w0());
  for (double tau : {0.9, 1.7}) {
    const double os = tpa_oracle_frequency_domain(ladder(), SincJsa{.t_plus = 10.0, .t_minus = 4.0, .tau = tau}, w0());
    const double og = tpa_oracle_frequency_domain(ladder(), GaussianJsa{.t_plus = 10.0, .t_minus = 4.0, .tau = tau}, w0());
    CHECK(cs * os == doctest::Approx(tpa_sinc(ladder(), 10.0, 4.0, tau, w0())).epsilon(1e-3));
    CHECK(cg * og == doctest::Approx(tpa_gaussian(ladder(), 10.0, 4.0, tau, w0())).epsilon(1e-3));
  }
}

TEST_CASE("single-level oracle oscillates like the closed form") {
  const auto one = ladder().restricted_to(1);
  const double c = tpa_sinc(one, 10.0, 2.0, 0.0, w0()) /
                   tpa_oracle_frequency_domain(one, SincJsa{.t_plus = 10.0, .t_minus = 2.0, .tau = 0.0}, w0());
  // Quarter and half periods of Delta_3p / hbar.
  const double period = 2.0 * kPi * kHbar / 6.988888888888889;
  for (double tau : {0.25 * period, 0.5 * period, 1000.5 * period}) {
    const double o = tpa_oracle_frequency_domain(one, SincJsa{.t_plus = 10.0, .t_minus = 2.0, .tau = tau}, w0());
    CHECK(c * o == doctest::Approx(tpa_sinc(one, 10.0, 2.0, tau, w0())).epsilon(1e-3));
  }
}

TEST_CASE("classical mixture does not depend on the delay") {
  std::vector<double> v;
  const ClassicalCorrelatedState c{GaussianJsa{.t_plus = 10.0, .t_minus = 2.0}, w0()};
  for (double tau : {0.0, 0.7, 1.9}) v.push_back(tpa_classical(ladder(), c, tau));
  CHECK(spread(v) < 1e-6);
}

TEST_CASE("extrapolated delays are reported, not hidden") {
  Warnings w;
  tpa_sinc(ladder(), 10.0, 2.0, 2.5, w0(), {}, &w);
  CHECK_FALSE(w.empty());
  Warnings r;
  tpa_rectangular(ladder(), 10.0, 12.0, w0(), {}, &r);
  CHECK_FALSE(r.empty());
}

TEST_CASE("sweep helpers") {
  const auto g = uniform_grid(0.0, 1.0, 0.3);
  REQUIRE(g.size() == 5);
  CHECK(g.back() == 1.0);
  CHECK(uniform_grid(0.0, 2.0, 1e-4).size() == 20001);
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 0.0), InvalidArgument);

  StateParams p;
  p.family = Family::sinc;
  CHECK_THROWS_AS(tpa_single_level(ladder(), p, {0.0, 0.1}), InvalidArgument);
  const auto curve = tpa_single_level(ladder().restricted_to(0), p, {0.0, 0.1, 0.2}, {}, 2);
  CHECK(curve.level == "2p");
  CHECK(curve.values.size() == 3);
  // thread count does not change results
  const auto serial = tpa_curve(ladder(), p, uniform_grid(0.0, 0.01, 1e-4), {}, 1);
  const auto threaded = tpa_curve(ladder(), p, uniform_grid(0.0, 0.01, 1e-4), {}, 3);
  CHECK(serial.values == threaded.values);
}

TEST_CASE("sinc delay curve is strongly non-monotonic") {
  int extrema = 0;
  double a = tpa_sinc(ladder(), 10.0, 2.0, 0.0, w0());
  double b = tpa_sinc(ladder(), 10.0, 2.0, 1e-4, w0());
  for (double tau = 2e-4; tau <= 2.0; tau += 1e-4) {
    const double c = tpa_sinc(ladder(), 10.0, 2.0, tau, w0());
    if ((b - a) * (c - b) < 0.0) ++extrema;
    a = b;
    b = c;
  }
  CHECK(extrema >= 10);
}

TEST_CASE("sinc probability at zero delay reduces to the coincident-exponential form") {
  const auto kin = kinematics(ladder(), w0());
  std::complex<double> sum{};
  for (std::size_t j = 0; j < kin.size(); ++j) {
    sum += 2.0 * ladder().intermediates[j].dipole_product / kin[j].eta *
           (1.0 - std::exp(std::complex<double>(0, -1) * kin[j].eta * 2.0 / kHbar));
  }
  const double expected = 64.0 * kPi / 2.0 * (std::sqrt(2.0) * 10.0 / kSqrtPi) * std::norm(sum);
  CHECK(tpa_sinc(ladder(), 10.0, 2.0, 0.0, w0()) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("rectangular amplitude is continuous through two-photon resonance") {
  MediumLadder one = ladder().restricted_to(1);
  one.intermediates[0].level.linewidth = 0.0;
  const double at = tpa_rectangular(one, 10.0, 1.0, w0());
  CHECK(std::isfinite(at));
  for (double d : {1e-9, 1e-11}) {
    CHECK(tpa_rectangular(one, 10.0, 1.0, w0() + d) == doctest::Approx(at).epsilon(1e-4));
  }
}

TEST_CASE("damping every level suppresses the Gaussian signal") {
  double previous = tpa_gaussian(ladder(), 10.0, 2.0, 0.3, w0());
  for (double scale : {1e4, 1e5, 1e6}) {
    MediumLadder damped = ladder();
    for (auto& j : damped.intermediates) j.level.linewidth *= scale;
    const double p = tpa_gaussian(damped, 10.0, 2.0, 0.3, w0());
    CHECK(p < previous);
    previous = p;
  }
}
