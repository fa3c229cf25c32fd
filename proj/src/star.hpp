#pragma once

#include <vector>

namespace spinlab {

// Normalized Hessian of the shifted partition sum on star(n0) along the
// direction that shifts the center by a unit vector e:
//
//   Z_v''(0) / (n0 C^{n0-2})
//     = (n0-1) Int_{s1} (Int_{s2} dU)^2 + C Int_{s1} Int_{s2} d2U
//
// where U = exp(-(beta/2)|s1 - s2|^2) over the N-sphere, dU and d2U are the
// first and second derivatives along e, and C = Int U ds2. Positive value
// means domination fails on the star. N=1 uses the exact two-point sums
// (site measure delta_{-1} + delta_{+1}); N in {2,3} reduces the sphere
// integrals to polar angles evaluated by Gauss-Legendre quadrature with
// `quad_nodes` points. Requires n0 >= 2; other N raise UnsupportedN.
double star_hessian(double beta, int n_components, int n0, int quad_nodes = 128);

// Smallest n0 with star_hessian > 0. The Hessian is affine and strictly
// increasing in n0 (its slope is a positive square), so this solves one
// inequality and verifies both neighbors. Requires beta > 0.
int minimal_star_size(double beta, int n_components, int quad_nodes = 128);

// Gauss-Legendre nodes and weights on [a, b]. Exposed for the quadrature
// convergence tests.
void gauss_legendre(int nodes, double a, double b, std::vector<double>* x, std::vector<double>* w);

}  // namespace spinlab
