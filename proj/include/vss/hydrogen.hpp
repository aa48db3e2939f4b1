#pragma once

// Non-relativistic hydrogen: bound energies, radial dipole integrals and
// spontaneous emission rates. Lengths in bohr, rates in s^-1.

namespace vss::hydrogen {

inline constexpr double kIonization = 13.6;          // eV, -13.6/n^2 level scheme
inline constexpr double kHartree = 27.211386245988;  // eV
inline constexpr double kFineStructure = 7.2973525693e-3;
inline constexpr double kAtomicTime = 2.4188843265857e-17;  // s
inline constexpr int kMaxPrincipal = 40;

double energy(int n);

/// <n1 l1| r |n2 l2> = \int_0^inf R_{n1 l1}(r) R_{n2 l2}(r) r^3 dr.
///
/// Exact finite double sum over the associated-Laguerre coefficients of both
/// radial functions using \int r^p e^{-a r} dr = p!/a^{p+1}, accumulated in
/// long double. Sign convention: R_{nl}(r) > 0 as r -> 0.
double radial_dipole(int n1, int l1, int n2, int l2);

/// Einstein A coefficient for the single channel nl -> n'l' (|l - l'| = 1,
/// energy of n' below n), summed over final magnetic sublevels.
double einstein_a(int n, int l, int n_lower, int l_lower);

/// Total spontaneous decay rate of nl summed over all dipole-allowed lower levels.
double total_decay_rate(int n, int l);

}  // namespace vss::hydrogen
