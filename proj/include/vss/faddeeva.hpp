#pragma once

#include <complex>

namespace vss {

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z), valid in the whole complex plane.
///
/// Taylor series near the origin and a Laplace continued fraction elsewhere
/// (Poppe & Wijers region split); the lower half plane goes through
/// w(z) = 2 exp(-z^2) - w(-z). Roughly 14 significant digits.
std::complex<double> faddeeva_w(std::complex<double> z);

enum class ContourSign { plus = +1, minus = -1 };

/// F_+-(xi; tau) = exp(-xi^2) [1 - (2i/sqrt(pi)) \int_0^{xi +- i tau/(2 T_-)} exp(y^2) dy].
///
/// With z = xi +- i tau/(2 T_-) this equals exp(z^2 - xi^2) w(-z). When -z lies
/// in the lower half plane the reflection is applied before multiplying so that
/// the large exp(-z^2) factors never form on their own.
std::complex<double> f_plus_minus(std::complex<double> xi, double tau, double t_minus, ContourSign sign);

}  // namespace vss
