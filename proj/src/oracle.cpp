#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <limits>

#include "vss/errors.hpp"
#include "vss/quadrature.hpp"
#include "vss/tpa.hpp"

namespace vss {

double tpa_oracle_frequency_domain(const MediumLadder& ladder, const PureState& state, double omega0,
                                   const TpaOptions& options) {
  using cd = std::complex<double>;
  ladder.validate();
  if (std::holds_alternative<RectangularJsa>(state)) {
    throw InvalidArgument("frequency-domain oracle covers the gaussian and sinc families");
  }
  std::visit([](const auto& s) { s.validate(); }, state);
  const double h = options.constants.hbar;
  const auto kin = kinematics(ladder, omega0);
  const bool sinc = std::holds_alternative<SincJsa>(state);
  const auto [t_minus, tau] = sinc ? std::pair{std::abs(std::get<SincJsa>(state).t_minus), std::abs(std::get<SincJsa>(state).tau)}
                                   : std::pair{std::abs(std::get<GaussianJsa>(state).t_minus),
                                               std::abs(std::get<GaussianJsa>(state).tau)};

  double max_delta = 0.0;
  for (const auto& k : kin) max_delta = std::max(max_delta, std::abs(k.delta));
  const double reach = sinc ? std::max(30.0, 3.0 * max_delta) : 12.0 * h / t_minus;
  const double width = std::min(kPi * h / (t_minus + tau), reach / 32.0);

  // The kernel is even in nu, so fold Phi onto one pole per level:
  // \int Phi(nu,-nu) [1/(eta-nu) + 1/(eta+nu)] = \int g(nu) / (eta - nu), g(nu) = Phi(nu,-nu) + Phi(-nu,nu).
  auto g = [&](double nu) { return evaluate_jsa(state, nu, -nu, h) + evaluate_jsa(state, -nu, nu, h); };

  // Around each pole the integral over a window of about half an oscillation
  // is done exactly for the degree-19 interpolant of g on 20 Gauss-Legendre
  // nodes: \int P/(eta-nu) = sum_k w_k (g_k - P(eta))/(eta - x_k) + P(eta) log(...).
  // This avoids forming g(nu) - g(Delta) next to the pole, where the 1e-12
  // rounding noise of the large delay phase would be amplified by 1/(nu - Delta).
  using Legendre = boost::math::quadrature::gauss<double, 20>;
  std::vector<double> unit_nodes;
  std::vector<double> unit_weights;
  for (std::size_t k = 0; k < Legendre::abscissa().size(); ++k) {
    const double x = Legendre::abscissa()[k];
    const double w = Legendre::weights()[k];
    unit_nodes.push_back(x);
    unit_weights.push_back(w);
    if (x != 0.0) {
      unit_nodes.push_back(-x);
      unit_weights.push_back(w);
    }
  }
  std::vector<double> bary(unit_nodes.size());
  for (std::size_t k = 0; k < unit_nodes.size(); ++k) {
    double prod = 1.0;
    for (std::size_t m = 0; m < unit_nodes.size(); ++m) {
      if (m != k) prod *= unit_nodes[k] - unit_nodes[m];
    }
    bary[k] = 1.0 / prod;
  }

  const double window = 0.5 * h / (t_minus + tau);
  std::vector<std::pair<double, double>> holes;
  cd windows{};
  for (std::size_t j = 0; j < kin.size(); ++j) {
    const double d = kin[j].delta;
    if (!(std::abs(d) + window < reach)) continue;
    std::vector<cd> values(unit_nodes.size());
    for (std::size_t k = 0; k < unit_nodes.size(); ++k) values[k] = g(d + window * unit_nodes[k]);
    const cd t = (kin[j].eta - d) / window;  // pole in unit coordinates
    cd num{};
    cd den{};
    for (std::size_t k = 0; k < unit_nodes.size(); ++k) {
      const cd c = bary[k] / (t - unit_nodes[k]);
      num += c * values[k];
      den += c;
    }
    const cd p_eta = num / den;
    cd part = p_eta * (std::log(t + 1.0) - std::log(t - 1.0));
    for (std::size_t k = 0; k < unit_nodes.size(); ++k) part += unit_weights[k] * (values[k] - p_eta) / (t - unit_nodes[k]);
    windows += ladder.intermediates[j].dipole_product * part;
    holes.emplace_back(d - window, d + window);
  }
  std::sort(holes.begin(), holes.end());
  for (std::size_t k = 0; k + 1 < holes.size(); ++k) {
    if (holes[k].second > holes[k + 1].first) throw NumericError("oracle: intermediate levels closer than the pole window");
  }

  // Remaining axis: uniform panels, with the windows as their own (zero) panels.
  std::vector<double> edges;
  quad::append_uniform(edges, -reach, reach, width);
  for (const auto& [lo, hi] : holes) {
    edges.push_back(lo);
    edges.push_back(hi);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  auto in_hole = [&](double nu) {
    for (const auto& [lo, hi] : holes) {
      if (nu > lo && nu < hi) return true;
    }
    return false;
  };

  auto integrand = [&](double nu) {
    if (in_hole(nu)) return cd{};
    const cd gv = g(nu);
    cd acc{};
    for (std::size_t j = 0; j < kin.size(); ++j) acc += ladder.intermediates[j].dipole_product * gv / (kin[j].eta - nu);
    return acc;
  };
  const std::span<const double> span(edges);
  const cd rough = quad::panels<cd>(integrand, span, 0.0, 0).value + windows;
  const double tol = 1e-8 * std::abs(rough);
  const auto numeric = quad::panels<cd>(integrand, span, tol);
  quad::require_converged(numeric, tol, "frequency-domain oracle");
  const cd amplitude = numeric.value + windows;
  const double p = options.constants.prefactor * std::norm(amplitude);
  if (!std::isfinite(p)) throw NumericError("oracle probability is not finite");
  return p;
}

}  // namespace vss
