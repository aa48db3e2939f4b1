#include "vss/tpa.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vss/errors.hpp"
#include "vss/faddeeva.hpp"
#include "vss/parallel.hpp"
#include "vss/quadrature.hpp"

namespace vss {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

void warn(Warnings* warnings, std::string message) {
  if (warnings && std::find(warnings->begin(), warnings->end(), message) == warnings->end()) {
    warnings->push_back(std::move(message));
  }
}

// sin(dw x / 2 hbar) / dw, continuous through dw = 0.
double sin_over(double dw, double x, double hbar) {
  const double half = 0.5 * x / hbar;
  const double a = dw * half;
  if (std::abs(a) < 1e-6) return half * (1.0 - a * a / 6.0);
  return std::sin(a) / dw;
}

// Panel edges on [-reach, reach] with geometric refinement towards each pole
// so that Lorentzian peaks of width kappa/2 are resolved.
std::vector<double> pole_edges(double reach, double base_width, const std::vector<LevelKinematics>& kin) {
  std::vector<double> edges;
  quad::append_uniform(edges, -reach, reach, base_width);
  std::set<double> extra;
  for (const auto& k : kin) {
    const double half_width = -k.eta.imag();
    for (double p : {k.delta, -k.delta}) {
      if (!(std::abs(p) < reach)) continue;
      extra.insert(p);
      if (half_width <= 0.0) continue;
      for (double d = 0.25 * half_width; d < base_width; d *= 4.0) {
        if (p - d > -reach) extra.insert(p - d);
        if (p + d < reach) extra.insert(p + d);
      }
    }
  }
  edges.insert(edges.end(), extra.begin(), extra.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

double profile_t_minus(const EntangledProfile& p) {
  return std::visit([](const auto& s) { return std::abs(s.t_minus); }, p);
}

bool is_sinc(const EntangledProfile& p) { return std::holds_alternative<SincJsa>(p); }

}  // namespace

RectangularKinematics rectangular_kinematics(const MediumLadder& ladder, std::size_t level, double omega0) {
  const auto& j = ladder.intermediates.at(level).level;
  const double half = 0.5 * j.linewidth;
  RectangularKinematics k;
  k.delta_f = {j.energy - ladder.final.energy + omega0, -half};
  k.delta_g = {ladder.ground.energy - j.energy + omega0, half};
  const cd sum = k.delta_f + k.delta_g;
  if (sum.imag() != 0.0) throw NumericError("rectangular detunings: linewidth terms do not cancel");
  k.delta_omega = sum.real();
  if (k.delta_f + k.delta_g != cd{k.delta_omega, 0.0}) {
    throw NumericError("rectangular detunings violate delta_f + delta_g = delta_omega");
  }
  const double direct = ladder.ground.energy - ladder.final.energy + 2.0 * omega0;
  const double scale = std::abs(ladder.ground.energy) + std::abs(ladder.final.energy) + std::abs(j.energy) + omega0;
  if (std::abs(direct - k.delta_omega) > 1e-13 * scale) {
    throw NumericError("rectangular detunings disagree with eps_g - eps_f + 2 omega0");
  }
  return k;
}

double tpa_rectangular(const MediumLadder& ladder, double t_p, double tau, double omega0, const TpaOptions& options,
                       Warnings* warnings) {
  ladder.validate();
  if (!(t_p > 0.0) || !std::isfinite(tau)) throw InvalidArgument("rectangular pulses need T_p > 0 and finite tau");
  if (!(omega0 > 0.0)) throw InvalidArgument("carrier frequency omega0 must be positive");
  if (tau < 0.0 || tau >= t_p) warn(warnings, "rectangular: tau outside the overlap regime 0 <= tau < T_p");
  const double h = options.constants.hbar;
  cd sum{};
  for (std::size_t j = 0; j < ladder.intermediates.size(); ++j) {
    const auto k = rectangular_kinematics(ladder, j, omega0);
    const cd& df = k.delta_f;
    const cd& dg = k.delta_g;
    const double common = sin_over(k.delta_omega, t_p - tau, h);
    const cd sf = std::sin(df * (t_p - tau) / (2.0 * h));
    const cd i1 = common / dg - sf * std::exp(kI * dg * (t_p + tau) / (2.0 * h)) / (dg * df) -
                  2.0 * kI * std::sin(dg * t_p / (2.0 * h)) * std::sin(df * tau / (2.0 * h)) *
                      std::exp(-kI * (df * t_p - dg * tau) / (2.0 * h)) / (dg * df);
    const cd i2 = common / dg - sf * std::exp(kI * dg * (t_p - tau) / (2.0 * h)) / (dg * df);
    sum += ladder.intermediates[j].dipole_product * (i1 + i2);
  }
  const double p = options.constants.prefactor / (t_p * t_p) * std::norm(sum);
  if (!std::isfinite(p)) throw NumericError("rectangular transition probability is not finite");
  return p;
}

double tpa_classical(const MediumLadder& ladder, const ClassicalCorrelatedState& state, double tau,
                     const TpaOptions& options) {
  ladder.validate();
  std::visit([](const auto& s) { s.validate(); }, state.profile);
  if (!std::isfinite(tau)) throw InvalidArgument("delay must be finite");
  const double h = options.constants.hbar;
  const double omega0 = state.omega0 > 0.0 ? state.omega0 : resonant_carrier(ladder);
  const auto kin = kinematics(ladder, omega0);
  const double t_minus = profile_t_minus(state.profile);

  double max_delta = 0.0;
  for (const auto& k : kin) max_delta = std::max(max_delta, std::abs(k.delta));
  const bool sinc = is_sinc(state.profile);
  const double reach = sinc ? std::max(30.0, 3.0 * max_delta) : 12.0 * h / t_minus;
  const double base_width = sinc ? kPi * h / t_minus : reach / 24.0;
  const auto edges = pole_edges(reach, base_width, kin);

  auto weight = [&](double nu) { return classical_weight(state, nu, h); };
  for (const auto& k : kin) {
    if (k.eta.imag() == 0.0 && std::abs(k.delta) < reach && weight(k.delta) > 0.0) {
      throw NumericError("classical mixture: undamped intermediate level inside the weight support");
    }
  }
  // Each monochromatic pair picks up exp(-i nu tau); it is kept explicit and
  // drops out only through |.|^2.
  auto integrand = [&](double nu) {
    cd a{};
    for (std::size_t j = 0; j < kin.size(); ++j) {
      a += ladder.intermediates[j].dipole_product * (1.0 / (kin[j].eta - nu) + 1.0 / (kin[j].eta + nu));
    }
    a *= std::polar(1.0, -nu * tau / h);
    return weight(nu) * std::norm(a);
  };
  const std::span<const double> span(edges);
  const double rough = quad::panels<double>(integrand, span, 0.0, 0).value;
  const double tol = options.classical_rel_tol * std::abs(rough);
  const auto value = quad::panels<double>(integrand, span, tol);
  quad::require_converged(value, tol, "classical mixture");

  double norm = 1.0;
  if (state.normalize_weights) {
    const double rough_w = quad::panels<double>(weight, span, 0.0, 0).value;
    const auto w = quad::panels<double>(weight, span, options.classical_rel_tol * rough_w);
    quad::require_converged(w, options.classical_rel_tol * rough_w, "classical weight norm");
    if (!(w.value > 0.0)) throw DegenerateStateError("classical mixture has zero total weight");
    norm = w.value;
  }
  return options.constants.prefactor * value.value / norm;
}

double resonance_factor(const MediumLadder& ladder, double t_plus, double omega0, const TpaOptions& options) {
  const double h = options.constants.hbar;
  const double dw = ladder.ground.energy - ladder.final.energy + 2.0 * omega0;
  if (!options.final_linewidth_average || ladder.final.linewidth == 0.0) {
    return std::exp(-2.0 * t_plus * t_plus * dw * dw / (h * h));
  }
  // \int L(d) exp(-2 T+^2 (dw - d)^2 / hbar^2) dd = Re w(sqrt2 T+ (dw + i kappa_f/2) / hbar)
  const cd z = std::sqrt(2.0) * t_plus * cd{dw, 0.5 * ladder.final.linewidth} / h;
  return faddeeva_w(z).real();
}

double tpa_gaussian(const MediumLadder& ladder, double t_plus, double t_minus, double tau, double omega0,
                    const TpaOptions& options) {
  ladder.validate();
  if (!(t_plus > 0.0) || !(t_minus > 0.0)) throw InvalidArgument("Gaussian pairs need T_plus > 0 and T_minus > 0");
  if (!std::isfinite(tau)) throw InvalidArgument("delay must be finite");
  const double h = options.constants.hbar;
  const auto kin = kinematics(ladder, omega0);
  cd sum{};
  for (std::size_t j = 0; j < kin.size(); ++j) {
    const cd eta = kin[j].eta;
    const cd xi = eta * t_minus / h;
    const cd term = f_plus_minus(xi, tau, t_minus, ContourSign::plus) * std::exp(-kI * eta * tau / h) +
                    f_plus_minus(xi, tau, t_minus, ContourSign::minus) * std::exp(kI * eta * tau / h);
    sum += ladder.intermediates[j].dipole_product * term;
  }
  const double p = options.constants.prefactor * 32.0 * kPi * t_plus * t_minus *
                   resonance_factor(ladder, t_plus, omega0, options) * std::norm(sum);
  if (!std::isfinite(p)) throw NumericError("Gaussian transition probability is not finite");
  return p;
}

double tpa_sinc(const MediumLadder& ladder, double t_plus, double t_minus, double tau, double omega0,
                const TpaOptions& options, Warnings* warnings) {
  ladder.validate();
  if (!(t_plus > 0.0) || !(t_minus > 0.0)) throw InvalidArgument("sinc pairs need T_plus > 0 and T_minus > 0");
  if (!std::isfinite(tau)) throw InvalidArgument("delay must be finite");
  if (std::abs(tau) > t_minus) warn(warnings, "sinc: |tau| > T_minus is outside the modelled regime (extrapolation)");
  const double h = options.constants.hbar;
  const auto kin = kinematics(ladder, omega0);
  cd sum{};
  for (std::size_t j = 0; j < kin.size(); ++j) {
    const cd eta = kin[j].eta;
    if (eta == cd{}) throw NumericError("sinc: level '" + ladder.intermediates[j].level.label + "' has eta = 0");
    const cd a = ladder.intermediates[j].dipole_product / eta;
    sum += a * (2.0 - std::exp(-kI * eta * (t_minus - tau) / h) - std::exp(-kI * eta * (t_minus + tau) / h));
  }
  const double p = options.constants.prefactor * 64.0 * kPi / t_minus * (std::sqrt(2.0) * t_plus / kSqrtPi) *
                   resonance_factor(ladder, t_plus, omega0, options) * std::norm(sum);
  if (!std::isfinite(p)) throw NumericError("sinc transition probability is not finite");
  return p;
}

double carrier(const MediumLadder& ladder, const StateParams& params) {
  return params.omega0 > 0.0 ? params.omega0 : resonant_carrier(ladder);
}

std::vector<double> uniform_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw InvalidArgument("grid needs start <= stop and step > 0");
  }
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12)));
  grid.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) grid.push_back(start + step * static_cast<double>(k));
  if (stop - grid.back() > 1e-9 * step) grid.push_back(stop);
  return grid;
}

double tpa_probability(const MediumLadder& ladder, const StateParams& params, double tau, const TpaOptions& options,
                       Warnings* warnings) {
  const double omega0 = carrier(ladder, params);
  switch (params.family) {
    case Family::rectangular: return tpa_rectangular(ladder, params.t_p, tau, omega0, options, warnings);
    case Family::gaussian: return tpa_gaussian(ladder, params.t_plus, params.t_minus, tau, omega0, options);
    case Family::sinc: return tpa_sinc(ladder, params.t_plus, params.t_minus, tau, omega0, options, warnings);
    case Family::classical: {
      ClassicalCorrelatedState state;
      if (params.classical_profile == Family::sinc) {
        state.profile = SincJsa{.t_plus = params.t_plus, .t_minus = params.t_minus};
      } else if (params.classical_profile == Family::gaussian) {
        state.profile = GaussianJsa{.t_plus = params.t_plus, .t_minus = params.t_minus};
      } else {
        throw InvalidArgument("classical mixture weights come from a gaussian or sinc profile");
      }
      state.omega0 = omega0;
      return tpa_classical(ladder, state, tau, options);
    }
  }
  throw InvalidArgument("unknown state family");
}

TpaCurve tpa_curve(const MediumLadder& ladder, const StateParams& params, const std::vector<double>& tau_grid,
                   const TpaOptions& options, unsigned threads) {
  if (tau_grid.empty()) throw InvalidArgument("delay grid is empty");
  for (std::size_t k = 1; k < tau_grid.size(); ++k) {
    if (!(tau_grid[k] > tau_grid[k - 1])) throw InvalidArgument("delay grid must be strictly increasing");
  }
  TpaCurve curve;
  curve.tau_grid = tau_grid;
  curve.params = params;
  curve.values.assign(tau_grid.size(), 0.0);
  std::vector<Warnings> local(tau_grid.size());
  parallel_for(tau_grid.size(), threads, [&](std::size_t k) {
    curve.values[k] = tpa_probability(ladder, params, tau_grid[k], options, &local[k]);
  });
  for (auto& w : local) {
    for (auto& msg : w) warn(&curve.warnings, std::move(msg));
  }
  return curve;
}

TpaCurve tpa_single_level(const MediumLadder& ladder, const StateParams& params,
                          const std::vector<double>& tau_grid, const TpaOptions& options, unsigned threads) {
  if (ladder.intermediates.size() != 1) {
    throw InvalidArgument("single-level curve needs a ladder with exactly one intermediate level");
  }
  auto curve = tpa_curve(ladder, params, tau_grid, options, threads);
  curve.level = ladder.intermediates.front().level.label;
  return curve;
}

}  // namespace vss
