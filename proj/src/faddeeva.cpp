#include "vss/faddeeva.hpp"

#include <cmath>
#include <limits>

namespace vss {
namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;

// w(x + iy) for y >= 0, x >= 0.
std::complex<double> faddeeva_first_quadrant(double x, double y) {
  const double xs = x / 6.3;
  const double ys = y / 4.4;
  double qrho = xs * xs + ys * ys;
  const double xquad = x * x - y * y;
  const double yquad = 2.0 * x * y;

  if (qrho < 0.085264) {
    // Power series for erfc near the origin.
    qrho = (1.0 - 0.85 * ys) * std::sqrt(qrho);
    const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
    int j = 2 * n + 1;
    double xsum = 1.0 / j;
    double ysum = 0.0;
    for (int i = n; i >= 1; --i) {
      j -= 2;
      const double xaux = (xsum * xquad - ysum * yquad) / i;
      ysum = (xsum * yquad + ysum * xquad) / i;
      xsum = xaux + 1.0 / j;
    }
    const double u1 = -kTwoOverSqrtPi * (xsum * y + ysum * x) + 1.0;
    const double v1 = kTwoOverSqrtPi * (xsum * x - ysum * y);
    const double daux = std::exp(-xquad);
    const double u2 = daux * std::cos(yquad);
    const double v2 = -daux * std::sin(yquad);
    return {u1 * u2 - v1 * v2, u1 * v2 + v1 * u2};
  }

  double h = 0.0;
  int kapn = 0;
  int nu = 0;
  if (qrho > 1.0) {
    nu = static_cast<int>(3.0 + 1442.0 / (26.0 + 77.0 * std::sqrt(qrho)));
  } else {
    qrho = (1.0 - ys) * std::sqrt(1.0 - qrho);
    h = 1.88 * qrho;
    kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
    nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
  }
  const bool truncated_taylor = h > 0.0;
  const double h2 = 2.0 * h;
  double qlambda = truncated_taylor ? std::pow(h2, kapn) : 0.0;

  double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
  for (int n = nu; n >= 0; --n) {
    const double np1 = n + 1.0;
    double tx = y + h + np1 * rx;
    const double ty = x - np1 * ry;
    const double c = 0.5 / (tx * tx + ty * ty);
    rx = c * tx;
    ry = c * ty;
    if (truncated_taylor && n <= kapn) {
      tx = qlambda + sx;
      sx = rx * tx - ry * sy;
      sy = ry * tx + rx * sy;
      qlambda /= h2;
    }
  }
  double u = truncated_taylor ? kTwoOverSqrtPi * sx : kTwoOverSqrtPi * rx;
  const double v = truncated_taylor ? kTwoOverSqrtPi * sy : kTwoOverSqrtPi * ry;
  if (y == 0.0) u = std::exp(-x * x);
  return {u, v};
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  const double x = z.real();
  const double y = z.imag();
  if (!std::isfinite(x) || !std::isfinite(y)) {
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  }
  if (y >= 0.0) {
    const auto w = faddeeva_first_quadrant(std::abs(x), y);
    return x < 0.0 ? std::conj(w) : w;
  }
  // Lower half plane: w(z) = 2 exp(-z^2) - w(-z); w(-z) is an upper-half-plane value.
  const auto w_reflected = faddeeva_w(-z);
  return 2.0 * std::exp(-z * z) - w_reflected;
}

std::complex<double> f_plus_minus(std::complex<double> xi, double tau, double t_minus, ContourSign sign) {
  const std::complex<double> shift{0.0, static_cast<int>(sign) * tau / (2.0 * t_minus)};
  const std::complex<double> z = xi + shift;
  // z^2 - xi^2 without cancellation against the (possibly large) xi^2.
  const std::complex<double> exponent = shift * (2.0 * xi + shift);
  if ((-z).imag() >= 0.0) {
    return std::exp(exponent) * faddeeva_w(-z);
  }
  // w(-z) = 2 exp(-z^2) - w(z), multiplied through by exp(z^2 - xi^2).
  return 2.0 * std::exp(-xi * xi) - std::exp(exponent) * faddeeva_w(z);
}

}  // namespace vss
