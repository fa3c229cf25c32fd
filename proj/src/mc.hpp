#pragma once

#include <cstdint>

#include "graph.hpp"
#include "rng.hpp"
#include "stats.hpp"

namespace spinlab {

struct ChainConfig {
  std::uint64_t sweeps = 20000;   // total, including burn-in
  std::uint64_t burn_in = 2000;
  std::uint64_t thin = 1;         // emit every thin-th post-burn-in sweep
  double proposal_width = 0.0;    // <= 0 picks 1/sqrt(1+beta)
  bool root_pinned = false;       // vertex 1 frozen at the north pole
  bool tune_width = true;         // width adaptation during burn-in only
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;       // replicas use (seed, stream), stream distinct
};

// Materialized thinned sample stream plus the settings that produced it.
// Spins are unit vectors in R^N stored vertex-major; the north pole is the
// last coordinate axis, so components 0..N-2 are transverse.
struct ChainSamples {
  const Graph* graph = nullptr;
  int n_components = 1;
  double beta = 0.0;
  ChainConfig config;
  double final_width = 0.0;
  double acceptance_rate = 1.0;  // measurement phase; heat-bath counts as 1
  std::vector<std::vector<double>> states;

  std::size_t count() const { return states.size(); }
  double spin(std::size_t sample, int v, int comp) const {
    return states[sample][static_cast<std::size_t>(v - 1) * n_components + comp];
  }
};

// N=1: fair +-1. N>=2: normalized vector of iid standard normals.
void uniform_sphere_point(int n_components, Rng& rng, double* out);

// Single-site Markov chain for the spin O(N) measure: heat-bath flips for
// N=1, Metropolis with additive Gaussian proposals for N>=2. Vertices are
// updated once per sweep in a freshly shuffled order. Deterministic given
// (seed, stream).
ChainSamples run_chain(const Graph& g, int n_components, double beta, const ChainConfig& cfg);

// Batch-means estimators over the emitted states (32 batches, at least 16
// samples per batch or InsufficientSamples).
Estimate estimate_correlation(const ChainSamples& chain, int x, int y);
Estimate estimate_rescaled_distance(const ChainSamples& chain, double beta, int x, int y);

// K_xy = beta * E[(L sigma^1)_x (L sigma^1)_y] from the first spin component,
// with a per-entry batch-means error bar (also scaled by beta).
struct KMatrixEstimate {
  Eigen::MatrixXd value;
  Eigen::MatrixXd stderror;
  std::size_t n_samples = 0;
};
KMatrixEstimate estimate_k_matrix(const ChainSamples& chain);

// Binary dump: 32-byte header (magic "SPINSMP1", u64 n, u64 N, u64 count,
// all little-endian) followed by count*n*N little-endian float64 values.
void save_samples(const ChainSamples& chain, const std::string& path);

struct SampleDump {
  std::uint64_t n = 0, n_components = 0, count = 0;
  std::vector<double> data;  // count * n * n_components, vertex-major
};
SampleDump load_samples(const std::string& path);

}  // namespace spinlab
