#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vss/constants.hpp"

namespace vss {

struct EnergyLevel {
  std::string label;
  double energy = 0.0;     // eV
  double linewidth = 0.0;  // eV, kappa >= 0
};

struct IntermediateLevel {
  EnergyLevel level;
  double dipole_product = 0.0;  // <f|d|j><j|d|g>, arbitrary units
};

/// Three-tier ladder g -> {j} -> f driven by two photons.
struct MediumLadder {
  EnergyLevel ground;
  EnergyLevel final;
  std::vector<IntermediateLevel> intermediates;

  /// Throws InvalidArgument when the ladder is not usable.
  void validate() const;

  /// Copy holding only intermediate `index`.
  [[nodiscard]] MediumLadder restricted_to(std::size_t index) const;
  [[nodiscard]] std::size_t find(const std::string& label) const;
};

/// Per-level detunings at carrier omega0.
struct LevelKinematics {
  double delta = 0.0;          // eps_j - eps_g - omega0
  std::complex<double> eta{};  // delta - i kappa_j / 2
};

/// 1s ground, 2s final, 2p..n_max p intermediates.
MediumLadder hydrogen_ladder(int n_max, const Constants& constants = {});

/// D^(np) = R(1s->np) R(np->2s) in bohr^2; the common angular factor is dropped.
double dipole_product(int n);

/// hbar times the total spontaneous decay rate of np, in eV.
double default_linewidths(int n, const Constants& constants = {});

/// hbar / 122 ms, the 2s two-photon lifetime width.
double hydrogen_final_linewidth(const Constants& constants = {});

std::vector<LevelKinematics> kinematics(const MediumLadder& ladder, double omega0);

/// Carrier frequency that puts the two-photon transition on resonance.
inline double resonant_carrier(const MediumLadder& ladder) {
  return 0.5 * (ladder.final.energy - ladder.ground.energy);
}

}  // namespace vss
