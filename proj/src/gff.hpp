#pragma once

#include <cstdint>

#include "graph.hpp"
#include "mc.hpp"
#include "stats.hpp"

namespace spinlab {

// Covariance of the field pinned to zero at `root`: the inverse of the
// root-deleted Laplacian. entry(x, y) embeds it back on all vertices with
// zeros on the root row/column; entry(x, x) equals the renormalized Green
// value u_{x,root}(x)/d(x).
struct GFFCovariance {
  int root = 0;
  int n = 0;
  Eigen::MatrixXd matrix;  // (n-1)x(n-1), remaining vertices in ascending order

  int index_of(int v) const { return v == root ? -1 : (v < root ? v - 1 : v - 2); }
  double entry(int x, int y) const {
    const int a = index_of(x), b = index_of(y);
    return (a < 0 || b < 0) ? 0.0 : matrix(a, b);
  }
  // E (gamma_x - gamma_y)^2 for one component.
  double distance_variance(int x, int y) const {
    return entry(x, x) + entry(y, y) - 2.0 * entry(x, y);
  }
};

GFFCovariance gff_covariance(const Graph& g, int root);

// I.i.d. draws of the pinned field with `components` independent scalar
// components, via triangular solves against the Cholesky factor of the
// pinned Laplacian. Layout matches ChainSamples (vertex-major), with the
// root identically zero.
struct GFFSampleSet {
  int root = 0;
  int components = 0;
  int n = 0;
  std::vector<std::vector<double>> fields;

  std::size_t count() const { return fields.size(); }
  double value(std::size_t sample, int v, int comp) const {
    return fields[sample][static_cast<std::size_t>(v - 1) * components + comp];
  }
};

GFFSampleSet gff_sample(const Graph& g, int components, int root, std::size_t count,
                        std::uint64_t seed, std::uint64_t stream = 0);

// One row of the low-temperature comparison: a root-pinned chain at one
// beta against the limiting field.
struct WconRow {
  double beta = 0.0;
  Estimate moment;          // beta E |sigma_x - sigma_y|^2
  double moment_target = 0.0;  // (N-1) * (pinned-covariance distance variance)
  double ks = 0.0;          // KS distance, sqrt(beta) sigma_x^1 vs gamma_x^1
};

// Runs one chain per beta (forcing root_pinned, root = vertex 1; chain
// streams are derived from cfg.stream so rows are independent) and compares
// against `gff_count` field samples. Betas must be positive and strictly
// increasing; N must be >= 2 (WrongN). x must differ from the root.
std::vector<WconRow> wcon_report(const Graph& g, int n_components,
                                 const std::vector<double>& betas, int x, int y,
                                 const ChainConfig& cfg, std::size_t gff_count);

}  // namespace spinlab
