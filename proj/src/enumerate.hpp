#pragma once

#include "graph.hpp"

namespace spinlab {

// Single-site measure for Ising (N=1) sums: `Half` weights each of -1/+1 by
// 1/2, `Unit` by 1. Expectations agree; partition values differ by 2^n.
enum class IsingConvention { Half, Unit };

// All functions below enumerate the 2^n Ising configurations; they reject
// n > 24 (TooLarge) and negative beta (InvalidParameter). Energies use the
// edge-difference form: weight(sigma) = exp(-(beta/2) sum_E (sigma_i + h_i
// - sigma_j - h_j)^2), the shifted-partition normalization. Results are
// deterministic bit-for-bit (fixed Gray-code order, compensated sums).

// Shifted partition sum Z*(h). Pass an empty `h` for the unshifted value.
// Accumulates in log domain when individual weights can underflow.
double exact_partition(const Graph& g, double beta, const std::vector<double>& h,
                       IsingConvention convention);

// E sigma_x sigma_y. The convention parameter is accepted for interface
// symmetry; the value does not depend on it.
double exact_correlation(const Graph& g, double beta, int x, int y,
                         IsingConvention convention = IsingConvention::Unit);

// All pairwise correlations in one enumeration pass; (x-1, y-1) entry holds
// E sigma_x sigma_y, diagonal is 1.
Eigen::MatrixXd exact_correlation_matrix(const Graph& g, double beta);

// d^2/d eta^2 of Z*(eta v) at eta = 0:
//   beta^2 sum_sigma [sum_E (v_i - v_j)(sigma_i - sigma_j)]^2 w(sigma)
//   - beta [sum_E (v_i - v_j)^2] sum_sigma w(sigma).
// Negative for every admissible v exactly when the second-order domination
// test passes along all directions.
double directional_second_derivative(const Graph& g, double beta, const std::vector<double>& v,
                                     IsingConvention convention = IsingConvention::Unit);

// E[(L sigma)_x (L sigma)_y] under the same measure; the building block K of
// the domination Hessian beta*K - L.
Eigen::MatrixXd exact_laplacian_covariance(const Graph& g, double beta);

}  // namespace spinlab
