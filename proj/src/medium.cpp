#include "vss/medium.hpp"

#include <cmath>
#include <string>

#include "vss/errors.hpp"
#include "vss/hydrogen.hpp"

namespace vss {

void MediumLadder::validate() const {
  if (!(ground.energy < final.energy)) {
    throw InvalidArgument("ladder requires ground energy below final energy");
  }
  if (intermediates.empty()) throw InvalidArgument("ladder requires at least one intermediate level");
  auto check_level = [](const EnergyLevel& level) {
    if (!std::isfinite(level.energy) || !std::isfinite(level.linewidth) || level.linewidth < 0.0) {
      throw InvalidArgument("level '" + level.label + "' needs a finite energy and a linewidth >= 0");
    }
  };
  check_level(ground);
  check_level(final);
  for (const auto& j : intermediates) {
    check_level(j.level);
    if (!std::isfinite(j.dipole_product)) {
      throw InvalidArgument("level '" + j.level.label + "' has a non-finite dipole product");
    }
  }
}

MediumLadder MediumLadder::restricted_to(std::size_t index) const {
  if (index >= intermediates.size()) throw InvalidArgument("intermediate level index out of range");
  MediumLadder out{ground, final, {intermediates[index]}};
  return out;
}

std::size_t MediumLadder::find(const std::string& label) const {
  for (std::size_t i = 0; i < intermediates.size(); ++i) {
    if (intermediates[i].level.label == label) return i;
  }
  throw InvalidArgument("no intermediate level labelled '" + label + "'");
}

double dipole_product(int n) {
  if (n < 2) throw InvalidArgument("np intermediate requires n >= 2");
  // n = 2 is the energy-degenerate 2s-2p pair; the exact sum gives -3 sqrt(3).
  return hydrogen::radial_dipole(1, 0, n, 1) * hydrogen::radial_dipole(n, 1, 2, 0);
}

double default_linewidths(int n, const Constants& constants) {
  if (n < 2) throw InvalidArgument("np intermediate requires n >= 2");
  // hbar [eV ps] * rate [1/s] * 1e-12 [s/ps]
  return constants.hbar * hydrogen::total_decay_rate(n, 1) * 1e-12;
}

double hydrogen_final_linewidth(const Constants& constants) {
  constexpr double lifetime_ps = 122e-3 * 1e12;
  return constants.hbar / lifetime_ps;
}

MediumLadder hydrogen_ladder(int n_max, const Constants& constants) {
  if (n_max < 2) throw InvalidArgument("hydrogen ladder requires n_max >= 2");
  if (n_max > hydrogen::kMaxPrincipal) {
    throw InvalidArgument("hydrogen ladder supports n_max <= " + std::to_string(hydrogen::kMaxPrincipal));
  }
  MediumLadder ladder;
  ladder.ground = {"1s", hydrogen::energy(1), 0.0};
  ladder.final = {"2s", hydrogen::energy(2), hydrogen_final_linewidth(constants)};
  for (int n = 2; n <= n_max; ++n) {
    ladder.intermediates.push_back(
        {{std::to_string(n) + "p", hydrogen::energy(n), default_linewidths(n, constants)}, dipole_product(n)});
  }
  return ladder;
}

std::vector<LevelKinematics> kinematics(const MediumLadder& ladder, double omega0) {
  if (!(omega0 > 0.0)) throw InvalidArgument("carrier frequency omega0 must be positive");
  std::vector<LevelKinematics> out;
  out.reserve(ladder.intermediates.size());
  for (const auto& j : ladder.intermediates) {
    const double delta = j.level.energy - ladder.ground.energy - omega0;
    out.push_back({delta, {delta, -0.5 * j.level.linewidth}});
  }
  return out;
}

}  // namespace vss
