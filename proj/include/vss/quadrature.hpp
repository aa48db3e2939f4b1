#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <span>
#include <algorithm>
#include <string>
#include <vector>

#include "vss/errors.hpp"

namespace vss::quad {

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
};

/// Bisection driver over Boost's 15-point Gauss-Kronrod rule with an
/// absolute tolerance. Works for real and complex integrands. A panel whose
/// error estimate is below noise_floor * \int |f| is accepted: integrands with
/// phases of order 1e4 rad carry ~1e-12 relative rounding noise, and tighter
/// requests would only bisect that noise.
template <class T, class F>
Estimate<T> adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 30, double noise_floor = 1e-12) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  double l1 = 0.0;
  const T value = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
  err *= 0.5 * (b - a);  // Boost reports the single-rule error on the reference interval [-1, 1]
  if (err <= abs_tol || err <= noise_floor * l1 || max_depth == 0 || !(err == err)) {
    return {value, err};
  }
  const double mid = 0.5 * (a + b);
  if (mid <= a || mid >= b) return {value, err};
  auto left = adaptive<T>(f, a, mid, 0.5 * abs_tol, max_depth - 1, noise_floor);
  auto right = adaptive<T>(f, mid, b, 0.5 * abs_tol, max_depth - 1, noise_floor);
  return {left.value + right.value, left.error + right.error};
}

/// Globally adaptive integration over consecutive panels [edges[k], edges[k+1]]:
/// every panel gets one Gauss-Kronrod estimate, then the panel with the
/// largest error is bisected until the summed error is below `abs_tol` or
/// `max_splits` bisections have been spent. max_splits = 0 gives the plain
/// one-rule-per-panel sum. Refinement order depends only on the integrand, so
/// results are reproducible run to run.
template <class T, class F>
Estimate<T> panels(F&& f, std::span<const double> edges, double abs_tol, std::size_t max_splits = 1000000) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Panel {
    double a, b;
    T value;
    double error;
  };
  auto rule = [&](double a, double b) {
    double err = 0.0;
    const T v = Rule::integrate(f, a, b, 0, 0.0, &err);
    return Panel{a, b, v, err * 0.5 * (b - a)};  // Boost reports the error on [-1, 1]
  };
  auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
  std::vector<Panel> heap;
  heap.reserve(edges.size());
  double total_error = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (!(edges[k + 1] > edges[k])) continue;
    heap.push_back(rule(edges[k], edges[k + 1]));
    total_error += heap.back().error;
  }
  std::make_heap(heap.begin(), heap.end(), by_error);
  std::vector<Panel> finished;  // panels too narrow to split further
  for (std::size_t split = 0; split < max_splits && total_error > abs_tol && !heap.empty(); ++split) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || !(worst.error == worst.error)) {
      finished.push_back(worst);
      continue;
    }
    const Panel left = rule(worst.a, mid);
    const Panel right = rule(mid, worst.b);
    total_error += left.error + right.error - worst.error;
    for (const Panel& child : {left, right}) {
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
  }
  // Sum in address order for a result independent of heap layout details.
  heap.insert(heap.end(), finished.begin(), finished.end());
  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  Estimate<T> out{};
  for (const Panel& p : heap) {
    out.value += p.value;
    out.error += p.error;
  }
  return out;
}

/// Uniform subdivision of [a, b] into pieces no wider than `max_width`.
inline void append_uniform(std::vector<double>& edges, double a, double b, double max_width) {
  const auto pieces = static_cast<std::size_t>(std::ceil((b - a) / max_width));
  const std::size_t n = pieces == 0 ? 1 : pieces;
  if (edges.empty() || edges.back() != a) edges.push_back(a);
  for (std::size_t k = 1; k <= n; ++k) edges.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(n));
}

template <class T>
void require_converged(const Estimate<T>& e, double abs_tol, const std::string& what) {
  using std::abs;
  if (!std::isfinite(abs(e.value)) || !(e.error <= abs_tol)) {
    throw NumericError(what + ": quadrature did not converge (error estimate " + std::to_string(e.error) +
                       ", tolerance " + std::to_string(abs_tol) + ")");
  }
}

}  // namespace vss::quad
