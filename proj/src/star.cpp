#include "star.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace spinlab {

void gauss_legendre(int nodes, double a, double b, std::vector<double>* x, std::vector<double>* w) {
  if (nodes < 2) raise(ErrorCode::InvalidParameter, "quadrature needs at least 2 nodes");
  x->assign(nodes, 0.0);
  w->assign(nodes, 0.0);
  // Roots of P_n on [-1,1] by Newton iteration from the Chebyshev guess,
  // then mapped onto [a,b]. Symmetric pairs are filled together.
  for (int i = 0; i < (nodes + 1) / 2; ++i) {
    double root = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = root;
      for (int order = 2; order <= nodes; ++order) {
        const double p2 = ((2.0 * order - 1.0) * root * p1 - (order - 1.0) * p0) / order;
        p0 = p1;
        p1 = p2;
      }
      deriv = nodes * (root * p1 - p0) / (root * root - 1.0);
      const double step = p1 / deriv;
      root -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double weight = 2.0 / ((1.0 - root * root) * deriv * deriv);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    (*x)[i] = mid - half * root;
    (*x)[nodes - 1 - i] = mid + half * root;
    (*w)[i] = half * weight;
    (*w)[nodes - 1 - i] = half * weight;
  }
}

namespace {

struct SphereMoments {
  double a0, a1, a2;  // Int cos^k(theta) U over the sphere, k = 0,1,2
  double j0, j2;      // sphere area and Int (e.s)^2 ds
};

// One-sphere-integral reduction: with t = s1.s2, Int f(t) ds2 becomes
// S_{N-2} Int_0^pi f(cos th) sin^{N-2}(th) dth. For N=1 the "sphere" is the
// two-point set {-1,+1} with unit weights and the moments are exact sums.
SphereMoments sphere_moments(double beta, int n_components, int quad_nodes) {
  SphereMoments mom{};
  if (n_components == 1) {
    const double e2 = std::exp(-2.0 * beta);
    mom.a0 = 1.0 + e2;
    mom.a1 = 1.0 - e2;
    mom.a2 = 1.0 + e2;
    mom.j0 = 2.0;
    mom.j2 = 2.0;
    return mom;
  }
  const double ring = n_components == 2 ? 2.0 : 2.0 * std::numbers::pi;  // S_{N-2}
  std::vector<double> theta, weight;
  gauss_legendre(quad_nodes, 0.0, std::numbers::pi, &theta, &weight);
  for (int q = 0; q < quad_nodes; ++q) {
    const double c = std::cos(theta[q]);
    const double base = std::exp(-beta * (1.0 - c)) *
                        (n_components == 3 ? std::sin(theta[q]) : 1.0);
    const double wq = weight[q] * base * ring;
    mom.a0 += wq;
    mom.a1 += wq * c;
    mom.a2 += wq * c * c;
  }
  mom.j0 = n_components == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  mom.j2 = mom.j0 / n_components;
  return mom;
}

// The Hessian is (n0 - 1) * slope + offset with slope > 0 for beta > 0.
void star_hessian_parts(double beta, int n_components, int quad_nodes, double* slope,
                        double* offset) {
  if (n_components < 1 || n_components > 3)
    raise(ErrorCode::UnsupportedN, "star Hessian supports N in {1,2,3}, got " +
                                       std::to_string(n_components));
  if (!(beta >= 0.0) || !std::isfinite(beta))
    raise(ErrorCode::InvalidParameter, "beta must be finite and >= 0");
  const SphereMoments mom = sphere_moments(beta, n_components, quad_nodes);
  const double b2 = beta * beta;

  // Int_{s1} (Int_{s2} dU)^2: the inner integral is -beta (e.s1)(A0 - A1).
  *slope = b2 * (mom.a0 - mom.a1) * (mom.a0 - mom.a1) * mom.j2;

  // C * Int_{s1} Int_{s2} d2U, split into the component of s2 along s1 and
  // the transverse part (absent for N=1).
  double inner = mom.j2 * (mom.a0 - 2.0 * mom.a1 + mom.a2);
  if (n_components > 1)
    inner += (mom.j0 - mom.j2) * (mom.a0 - mom.a2) / (n_components - 1);
  *offset = mom.a0 * (b2 * inner - beta * mom.a0 * mom.j0);
}

}  // namespace

double star_hessian(double beta, int n_components, int n0, int quad_nodes) {
  if (n0 < 2) raise(ErrorCode::InvalidParameter, "star Hessian needs n0 >= 2");
  double slope, offset;
  star_hessian_parts(beta, n_components, quad_nodes, &slope, &offset);
  return (n0 - 1) * slope + offset;
}

int minimal_star_size(double beta, int n_components, int quad_nodes) {
  if (!(beta > 0.0)) raise(ErrorCode::NonpositiveBeta, "no finite star size at beta <= 0");
  double slope, offset;
  star_hessian_parts(beta, n_components, quad_nodes, &slope, &offset);
  // (n0 - 1) slope + offset > 0  <=>  n0 > 1 - offset/slope.
  const double bound = 1.0 - offset / slope;
  if (!(bound < 2.0e9)) raise(ErrorCode::TooLarge, "minimal star size exceeds integer range");
  int n0 = bound < 2.0 ? 2 : static_cast<int>(std::floor(bound)) + 1;
  while ((n0 - 1) * slope + offset <= 0.0) ++n0;
  while (n0 > 2 && (n0 - 2) * slope + offset > 0.0) --n0;
  return n0;
}

}  // namespace spinlab
