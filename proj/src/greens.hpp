#pragma once

#include <cstdint>

#include "graph.hpp"
#include "stats.hpp"

namespace spinlab {

// u_{ij}(s): expected number of visits to `source` by a simple random walk
// started at s and absorbed on first arrival at `sink`.
struct GreenTable {
  int source = 0;
  int sink = 0;
  std::vector<double> values;  // indexed by vertex-1; values[sink-1] == 0

  double at(int s) const { return values[s - 1]; }
  double at_source() const { return values[source - 1]; }
};

// Solves the sink-deleted Laplacian system L_j u = d(i) e_i. The walk
// interpretation and the solve agree up to a residual checked at 1e-10.
GreenTable greens_function(const Graph& g, int i, int j);

// u_{xy}(x) / d(x). Symmetric in (x, y).
double renormalized_green(const Graph& g, int x, int y);

// Monte Carlo estimate of u_{ij}(s) by direct walk simulation. Used as an
// independent oracle for greens_function. Deterministic per (seed, threads).
Estimate greens_rw_oracle(const Graph& g, int i, int j, int s, std::uint64_t trials,
                          std::uint64_t seed, int threads = 1);

// Inverse of the Laplacian with row/column `root` deleted. Rows and columns
// are indexed by the remaining vertices in increasing label order; the entry
// for (x, y) equals u_{x,root}(y) / d(x).
Eigen::MatrixXd pinned_laplacian_inverse(const Graph& g, int root);

// All Green values for a fixed sink: row i-1, column s-1 holds u_{i,sink}(s)
// (rows and columns at the sink are zero). One factorization serves all pairs.
Eigen::MatrixXd greens_all(const Graph& g, int sink);

}  // namespace spinlab
