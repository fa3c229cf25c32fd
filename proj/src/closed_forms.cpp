#include "closed_forms.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace spinlab {

namespace {

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    raise(ErrorCode::InvalidParameter, "beta must be finite and >= 0");
}

}  // namespace

double tree_correlation_closed_form(double beta, int dist) {
  check_beta(beta);
  if (dist < 0) raise(ErrorCode::InvalidParameter, "distance must be >= 0");
  if (dist == 0) return 1.0;
  return std::pow(std::tanh(beta), dist);
}

double parallel_paths_correlation_closed_form(double beta, int l, int d) {
  check_beta(beta);
  if (l < 1 || d < 1) raise(ErrorCode::InvalidParameter, "need l >= 1 and d >= 1");
  const double rpow = std::pow(std::tanh(beta), l + 1);
  const double plus = std::pow(1.0 + rpow, d);
  const double minus = std::pow(1.0 - rpow, d);
  return (plus - minus) / (plus + minus);
}

double binary_tree_hessian_closed_form(double beta, int k) {
  check_beta(beta);
  if (k < 3) raise(ErrorCode::InvalidDepth, "tree Hessian needs depth >= 3, got " + std::to_string(k));
  if (k > 60) raise(ErrorCode::InvalidDepth, "depth too large for a double-precision 2^(k-2) prefactor");

  const double e2 = std::exp(-2.0 * beta);
  const double u0 = 1.0 + e2;                            // U(0)
  const double u1 = 2.0 * beta * e2;                     // U'(0)
  const double u2 = -beta + (4.0 * beta * beta - beta) * e2;  // U''(0)
  const double r = std::tanh(beta);

  double depth_sum = 0.0;
  double term = 1.0;
  for (int l = 1; l <= k - 2; ++l) {
    term *= 2.0 * r * r;
    depth_sum += term;
  }
  return std::ldexp(u0 * u2 + u1 * u1 + u1 * u1 * depth_sum, k - 2);
}

double binary_tree_divergence_threshold() {
  // 2 tanh^2(beta) - 1 is increasing in beta, negative at 0.5, positive at 1.5.
  double lo = 0.5, hi = 1.5;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double t = std::tanh(mid);
    (2.0 * t * t > 1.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace spinlab
