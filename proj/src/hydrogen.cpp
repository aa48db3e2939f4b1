#include "vss/hydrogen.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "vss/errors.hpp"

namespace vss::hydrogen {
namespace {

void check_state(int n, int l) {
  if (n < 1 || n > kMaxPrincipal || l < 0 || l >= n) {
    throw InvalidArgument("hydrogen state n=" + std::to_string(n) + " l=" + std::to_string(l) +
                          " is not a bound state with 1 <= n <= " + std::to_string(kMaxPrincipal));
  }
}

// Coefficients of R_{nl}(r) = sum_k c_k r^{l+k} e^{-r/n}, normalization included.
std::vector<long double> radial_polynomial(int n, int l) {
  const int m = n - l - 1;
  const long double x_scale = 2.0L / n;
  // N^2 = (2/n)^3 (n-l-1)! / (2n (n+l)!)
  const long double log_norm =
      0.5L * (3.0L * std::log(x_scale) + std::lgamma(static_cast<long double>(m + 1)) -
              std::log(2.0L * n) - std::lgamma(static_cast<long double>(n + l + 1)));
  std::vector<long double> c(m + 1);
  for (int k = 0; k <= m; ++k) {
    // L_m^{2l+1}(x) = sum_k (-1)^k C(m + 2l + 1, m - k) x^k / k!
    const long double log_binom = std::lgamma(static_cast<long double>(n + l + 1)) -
                                  std::lgamma(static_cast<long double>(m - k + 1)) -
                                  std::lgamma(static_cast<long double>(2 * l + 2 + k));
    const long double log_mag = log_norm + log_binom - std::lgamma(static_cast<long double>(k + 1)) +
                                (l + k) * std::log(x_scale);
    c[k] = ((k % 2) ? -1.0L : 1.0L) * std::exp(log_mag);
  }
  return c;
}

}  // namespace

double energy(int n) {
  if (n < 1) throw InvalidArgument("principal quantum number must be >= 1");
  return -kIonization / (static_cast<double>(n) * n);
}

double radial_dipole(int n1, int l1, int n2, int l2) {
  check_state(n1, l1);
  check_state(n2, l2);
  const auto c1 = radial_polynomial(n1, l1);
  const auto c2 = radial_polynomial(n2, l2);
  const long double a = 1.0L / n1 + 1.0L / n2;
  const long double log_a = std::log(a);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    for (std::size_t j = 0; j < c2.size(); ++j) {
      const int p = 3 + l1 + l2 + static_cast<int>(i + j);
      const long double moment = std::exp(std::lgamma(static_cast<long double>(p + 1)) - (p + 1) * log_a);
      sum += c1[i] * c2[j] * moment;
    }
  }
  return static_cast<double>(sum);
}

double einstein_a(int n, int l, int n_lower, int l_lower) {
  if (std::abs(l - l_lower) != 1) throw InvalidArgument("dipole channel requires |l - l'| = 1");
  if (n_lower >= n) throw InvalidArgument("lower level must have smaller principal number");
  const double omega = (energy(n) - energy(n_lower)) / kHartree;  // atomic units
  const double r = radial_dipole(n, l, n_lower, l_lower);
  const double angular = static_cast<double>(std::max(l, l_lower)) / (2 * l + 1);
  const double alpha3 = kFineStructure * kFineStructure * kFineStructure;
  const double rate_au = 4.0 / 3.0 * alpha3 * omega * omega * omega * angular * r * r;
  return rate_au / kAtomicTime;
}

double total_decay_rate(int n, int l) {
  check_state(n, l);
  double total = 0.0;
  for (int lower = 1; lower < n; ++lower) {
    for (int l_lower : {l - 1, l + 1}) {
      if (l_lower < 0 || l_lower >= lower) continue;
      total += einstein_a(n, l, lower, l_lower);
    }
  }
  return total;
}

}  // namespace vss::hydrogen
