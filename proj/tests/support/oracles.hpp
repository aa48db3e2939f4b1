#pragma once

// Reference computations that share no code with the library. Slow but simple.

#include <complex>
#include <vector>

namespace oracle {

/// \int_0^inf R_{n1 l1} R_{n2 l2} r^3 dr by exp-sinh quadrature, with the
/// radial functions built from std::assoc_laguerre (R > 0 near the origin).
double radial_dipole_quadrature(int n1, int l1, int n2, int l2);

/// w(z) = (i / pi) \int exp(-t^2) / (z - t) dt, valid for Im z > 0.
std::complex<double> faddeeva_quadrature(std::complex<double> z);

/// exp(-xi^2) [1 - (2i/sqrt(pi)) \int_0^{xi + s i tau/(2 T_-)} exp(y^2) dy] along the straight path; s = +-1.
std::complex<double> f_pm_path_quadrature(double xi, double tau, double t_minus, int s);

/// Entropy in bits of lambda_n = (1 - mu^2) mu^(2n), summed term by term.
double geometric_entropy(double mu);

/// |X_k| of the plain O(N^2) DFT for k = 0..N/2.
std::vector<double> naive_dft_magnitude(const std::vector<double>& x);

/// (1/pi) \int_{-X}^{X} sin^2(x)/x^2 dx, the kept fraction of a sinc^2 line.
double sinc2_kept_fraction(double x_max);

}  // namespace oracle
