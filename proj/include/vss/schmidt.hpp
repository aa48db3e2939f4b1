#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "vss/states.hpp"

namespace vss {

inline constexpr double kEigenvalueFloor = 1e-14;
inline constexpr std::size_t kMaxGridPoints = 2048;
inline constexpr double kEntropyConvergence = 1e-4;  // bits

struct SchmidtModes {
  Eigen::MatrixXcd signal;  // columns f_i(nu_s) on the grid
  Eigen::MatrixXcd idler;   // columns g_i(nu_i)
};

struct SchmidtSpectrum {
  std::vector<double> eigenvalues;  // descending, sum 1
  double entropy = 0.0;             // bits
  std::optional<SchmidtModes> modes;

  [[nodiscard]] double schmidt_number() const;
};

/// -sum lambda log2 lambda over eigenvalues above the floor.
double entropy_bits(const std::vector<double>& eigenvalues, double floor = kEigenvalueFloor);

/// SVD of Phi(nu_s, nu_i) dnu on the grid; lambda_i are the squared singular
/// values renormalized to unit sum.
SchmidtSpectrum schmidt_decompose(const PureState& state, const FrequencyGrid& grid, bool keep_modes = false,
                                  double hbar = kHbar);

struct ConvergedSchmidt {
  SchmidtSpectrum spectrum;
  std::size_t points = 0;   // grid size of the returned spectrum
  double last_change = 0.0; // |E(N) - E(N/2)|, bits
  bool converged = false;
};

/// Starts at the smallest power of two >= 512 that resolves the state and
/// doubles until successive entropies agree within 1e-4 bits or the grid
/// reaches 2048 points.
ConvergedSchmidt schmidt_converged(const PureState& state, double hbar = kHbar);

struct EntropyPoint {
  double t_minus = 0.0;  // ps
  double entropy = 0.0;  // bits
  double schmidt_number = 1.0;
  std::size_t points = 0;
  bool converged = false;
};

/// Entropy of a Gaussian or sinc pair as a function of T_-.
std::vector<EntropyPoint> entropy_curve(Family family, double t_plus, const std::vector<double>& t_minus_list,
                                        unsigned threads = 1, double hbar = kHbar);

/// Closed-form Schmidt spectrum entropy of the double-Gaussian pair.
double gaussian_entropy_closed_form(double t_plus, double t_minus);

}  // namespace vss
