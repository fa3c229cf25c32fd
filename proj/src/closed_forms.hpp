#pragma once

namespace spinlab {

// Ising two-point function on any tree: r^dist with r = tanh(beta), where
// dist is the graph distance between the two vertices.
double tree_correlation_closed_form(double beta, int dist);

// E sigma_1 sigma_{ld+2} on parallel_paths(l, d):
//   [(1+r^{l+1})^d - (1-r^{l+1})^d] / [(1+r^{l+1})^d + (1-r^{l+1})^d].
double parallel_paths_correlation_closed_form(double beta, int l, int d);

// Normalized Hessian of the shifted partition sum on the depth-k perfect
// binary tree along the leaf-indicator direction (Ising, unit site measure):
//
//   Z_v''(0) / (2 Z*_{G'}(0) U(0)^{2(2^{k-2}-1)})
//     = 2^{k-2} [ (U(0) U''(0) + U'(0)^2) + U'(0)^2 sum_{l=1}^{k-2} (2 r^2)^l ]
//
// with U(eta) = exp(-beta eta^2/2) + exp(-beta (2-eta)^2/2), G' the first
// k-1 generations, r = tanh(beta). Positive value means the domination test
// fails along that direction; the bracket diverges with k once 2 r^2 > 1.
// Requires k >= 3 (InvalidDepth below).
double binary_tree_hessian_closed_form(double beta, int k);

// The beta solving 2 tanh^2(beta) = 1, i.e. artanh(1/sqrt 2) ~ 0.8814:
// above it the depth sum in the tree Hessian grows geometrically. Found by
// bisection rather than the inverse-function shortcut so the two routes can
// be compared in tests.
double binary_tree_divergence_threshold();

}  // namespace spinlab
