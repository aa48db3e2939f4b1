#pragma once

namespace vss {

// Energies are in eV and times in ps throughout; every phase is exp(-i E t / hbar).
inline constexpr double kHbar = 6.582119569e-4;  // eV ps
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.77245385090551602730;

// Overall scale of every transition probability. The SI factor
// w0^2 / (hbar^2 eps0^2 c^2 A^2) is folded into `prefactor`, so all
// probabilities are in arbitrary units.
struct Constants {
  double hbar = kHbar;
  double prefactor = 1.0;
};

}  // namespace vss
