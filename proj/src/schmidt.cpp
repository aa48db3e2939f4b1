#include "vss/schmidt.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "vss/errors.hpp"
#include "vss/parallel.hpp"

namespace vss {

double SchmidtSpectrum::schmidt_number() const {
  double purity = 0.0;
  for (double l : eigenvalues) purity += l * l;
  return purity > 0.0 ? 1.0 / purity : 0.0;
}

double entropy_bits(const std::vector<double>& eigenvalues, double floor) {
  double e = 0.0;
  for (double l : eigenvalues) {
    if (l >= floor) e -= l * std::log2(l);
  }
  return e > 0.0 ? e : 0.0;  // a pure product state may round to -0
}

SchmidtSpectrum schmidt_decompose(const PureState& state, const FrequencyGrid& grid, bool keep_modes, double hbar) {
  Eigen::MatrixXcd m = sample_jsa(state, grid, hbar) * grid.step;
  const unsigned options = keep_modes ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, options);
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (!sigma.allFinite()) throw NumericError("Schmidt decomposition produced non-finite singular values");

  double total = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) total += sigma[i] * sigma[i];
  if (!(total > 0.0)) throw DegenerateStateError("JSA has zero norm on the grid");

  SchmidtSpectrum out;
  out.eigenvalues.reserve(static_cast<std::size_t>(sigma.size()));
  for (Eigen::Index i = 0; i < sigma.size(); ++i) out.eigenvalues.push_back(sigma[i] * sigma[i] / total);
  out.entropy = entropy_bits(out.eigenvalues);
  if (keep_modes) {
    // Orthonormal columns -> mode functions normalized with the grid measure.
    const double scale = 1.0 / std::sqrt(grid.step);
    out.modes = SchmidtModes{svd.matrixU() * scale, svd.matrixV().conjugate() * scale};
  }
  return out;
}

ConvergedSchmidt schmidt_converged(const PureState& state, double hbar) {
  const double span = default_span(state, hbar);
  std::size_t points = kDefaultGridPoints;
  auto grid_for = [&](std::size_t n) { return FrequencyGrid::symmetric(0.5 * span, n); };
  while (points < kMaxGridPoints) {
    if (narrowest_feature(state, hbar) / grid_for(points).step >= static_cast<double>(kMinSamplesPerFeature)) break;
    points *= 2;
  }

  ConvergedSchmidt result;
  result.spectrum = schmidt_decompose(state, grid_for(points), false, hbar);
  result.points = points;
  result.last_change = std::numeric_limits<double>::infinity();
  while (points < kMaxGridPoints) {
    points *= 2;
    auto finer = schmidt_decompose(state, grid_for(points), false, hbar);
    result.last_change = std::abs(finer.entropy - result.spectrum.entropy);
    result.spectrum = std::move(finer);
    result.points = points;
    if (result.last_change < kEntropyConvergence) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<EntropyPoint> entropy_curve(Family family, double t_plus, const std::vector<double>& t_minus_list,
                                        unsigned threads, double hbar) {
  if (family != Family::gaussian && family != Family::sinc) {
    throw InvalidArgument("entropy curves are defined for the gaussian and sinc families");
  }
  for (double t : t_minus_list) {
    if (!(t > 0.0)) throw InvalidArgument("entropy curve requires T_minus > 0");
  }
  std::vector<EntropyPoint> out(t_minus_list.size());
  parallel_for(t_minus_list.size(), threads, [&](std::size_t k) {
    PureState state;
    if (family == Family::gaussian) {
      state = GaussianJsa{.t_plus = t_plus, .t_minus = t_minus_list[k]};
    } else {
      state = SincJsa{.t_plus = t_plus, .t_minus = t_minus_list[k]};
    }
    const auto c = schmidt_converged(state, hbar);
    out[k] = {t_minus_list[k], c.spectrum.entropy, c.spectrum.schmidt_number(), c.points, c.converged};
  });
  return out;
}

double gaussian_entropy_closed_form(double t_plus, double t_minus) {
  const double mu = std::abs((t_plus - 0.5 * t_minus) / (t_plus + 0.5 * t_minus));
  if (mu == 0.0) return 0.0;
  const double mu2 = mu * mu;
  // lambda_n = (1 - mu^2) mu^(2n): E = -log2(1 - mu^2) - mu^2 log2(mu^2) / (1 - mu^2)
  return -std::log2(1.0 - mu2) - mu2 * std::log2(mu2) / (1.0 - mu2);
}

}  // namespace vss
