#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vss/errors.hpp"
#include "vss/schmidt.hpp"

using namespace vss;

namespace {
double mu(double tp, double tm) { return (tp - tm / 2.0) / (tp + tm / 2.0); }
}  // namespace

TEST_CASE("closed-form Gaussian entropy equals the summed geometric spectrum") {
  for (double tm : {1.0, 2.0, 5.0, 10.0, 19.0, 20.0, 40.0, 100.0}) {
    CAPTURE(tm);
    CHECK(gaussian_entropy_closed_form(10.0, tm) == doctest::Approx(oracle::geometric_entropy(mu(10.0, tm))).epsilon(1e-10));
  }
  CHECK(gaussian_entropy_closed_form(10.0, 20.0) == 0.0);
}

TEST_CASE("SVD entropy of the Gaussian pair matches the geometric spectrum") {
  for (double tm : {2.0, 10.0, 40.0}) {
    const auto r = schmidt_converged(GaussianJsa{.t_plus = 10.0, .t_minus = tm});
    CAPTURE(tm);
    CHECK(r.converged);
    CHECK(std::abs(r.spectrum.entropy - oracle::geometric_entropy(mu(10.0, tm))) < 1e-6);
    // leading eigenvalue 1 - mu^2
    CHECK(r.spectrum.eigenvalues.front() == doctest::Approx(1.0 - mu(10.0, tm) * mu(10.0, tm)).epsilon(1e-6));
  }
}

TEST_CASE("separable Gaussian point has a single Schmidt mode") {
  const auto grid = default_grid(GaussianJsa{.t_plus = 10.0, .t_minus = 20.0}, 256);
  const auto s = schmidt_decompose(GaussianJsa{.t_plus = 10.0, .t_minus = 20.0}, grid, true);
  CHECK(s.entropy < 1e-9);
  CHECK(s.schmidt_number() == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(s.modes);
  CHECK(s.modes->signal.cols() >= 1);
}

TEST_CASE("eigenvalues are sorted, sum to one, and give K = 1/sum lambda^2") {
  const auto grid = default_grid(GaussianJsa{.t_plus = 10.0, .t_minus = 5.0}, 512);
  const auto s = schmidt_decompose(GaussianJsa{.t_plus = 10.0, .t_minus = 5.0}, grid);
  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    if (i > 0) CHECK(s.eigenvalues[i] <= s.eigenvalues[i - 1]);
    sum += s.eigenvalues[i];
    sq += s.eigenvalues[i] * s.eigenvalues[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.schmidt_number() == doctest::Approx(1.0 / sq));
}

TEST_CASE("entropy helper ignores eigenvalues under the floor") {
  CHECK(entropy_bits({0.5, 0.5}) == doctest::Approx(1.0));
  CHECK(entropy_bits({1.0, 1e-16}) == 0.0);
  CHECK(entropy_bits({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
}

TEST_CASE("entropy curve rejects families without a pure-state JSA") {
  CHECK_THROWS_AS(entropy_curve(Family::rectangular, 10.0, {2.0}), InvalidArgument);
  const auto curve = entropy_curve(Family::gaussian, 10.0, {20.0, 5.0});
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].t_minus == 20.0);
  CHECK(curve[1].entropy == doctest::Approx(gaussian_entropy_closed_form(10.0, 5.0)).epsilon(1e-5));
}

TEST_CASE("rectangular pulses are a product state") {
  const RectangularJsa r{.t_p = 10.0, .tau = 0.7};
  const auto s = schmidt_decompose(r, default_grid(r, 512));
  CHECK(s.entropy < 1e-9);
}

TEST_CASE("entropy ignores delay and pump phase") {
  const SincJsa a{.t_plus = 10.0, .t_minus = 4.0};
  SincJsa b = a;
  b.tau = 1.1;
  b.pump_phase_slope = 3.0;
  const auto grid = default_grid(a, 1024);
  CHECK(std::abs(schmidt_decompose(a, grid).entropy - schmidt_decompose(b, grid).entropy) < 1e-9);
}
