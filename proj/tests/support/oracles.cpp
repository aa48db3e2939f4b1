#include "oracles.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double kPi = 3.14159265358979323846;

double factorial(int n) { return std::tgamma(n + 1.0); }

double radial(int n, int l, double r) {
  if (r > 400.0 * n) return 0.0;  // below 1e-80; avoids inf * 0 far out
  const double rho = 2.0 * r / n;
  const double norm = std::sqrt(std::pow(2.0 / n, 3) * factorial(n - l - 1) / (2.0 * n * factorial(n + l)));
  return norm * std::exp(-rho / 2.0) * std::pow(rho, l) *
         std::assoc_laguerre(static_cast<unsigned>(n - l - 1), static_cast<unsigned>(2 * l + 1), rho);
}

}  // namespace

double radial_dipole_quadrature(int n1, int l1, int n2, int l2) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double r) { return radial(n1, l1, r) * radial(n2, l2, r) * r * r * r; };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

std::complex<double> faddeeva_quadrature(std::complex<double> z) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto re = [&](double t) { return (std::complex<double>(0, 1) / kPi * std::exp(-t * t) / (z - t)).real(); };
  auto im = [&](double t) { return (std::complex<double>(0, 1) / kPi * std::exp(-t * t) / (z - t)).imag(); };
  return {GK::integrate(re, -10.0, 10.0, 25, 1e-14), GK::integrate(im, -10.0, 10.0, 25, 1e-14)};
}

std::complex<double> f_pm_path_quadrature(double xi, double tau, double t_minus, int s) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const std::complex<double> end(xi, s * tau / (2.0 * t_minus));
  // y = end * u, dy = end du
  auto g = [&](double u) { return end * std::exp(end * end * u * u); };
  auto re = [&](double u) { return g(u).real(); };
  auto im = [&](double u) { return g(u).imag(); };
  const std::complex<double> integral(GK::integrate(re, 0.0, 1.0, 20, 1e-15), GK::integrate(im, 0.0, 1.0, 20, 1e-15));
  return std::exp(-xi * xi) * (1.0 - std::complex<double>(0, 2.0 / std::sqrt(kPi)) * integral);
}

double geometric_entropy(double mu) {
  const double m2 = mu * mu;
  double e = 0.0;
  double lambda = 1.0 - m2;
  for (int n = 0; n < 100000 && lambda > 1e-300; ++n) {
    e -= lambda * std::log2(lambda);
    lambda *= m2;
  }
  return e;
}

std::vector<double> naive_dft_magnitude(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<double> acc{};
    for (std::size_t m = 0; m < n; ++m) {
      acc += x[m] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k * m % n) / static_cast<double>(n));
    }
    out[k] = std::abs(acc);
  }
  return out;
}

double sinc2_kept_fraction(double x_max) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  auto f = [](double x) {
    if (std::abs(x) < 1e-8) return 1.0;
    const double s = std::sin(x) / x;
    return s * s;
  };
  // panels of width pi keep every panel smooth
  double sum = 0.0;
  for (double a = 0.0; a < x_max; a += kPi) sum += GK::integrate(f, a, std::min(a + kPi, x_max), 10, 1e-15);
  return 2.0 * sum / kPi;
}

}  // namespace oracle
