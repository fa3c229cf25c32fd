#include "mc.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace spinlab {

static_assert(std::endian::native == std::endian::little,
              "sample dump format assumes a little-endian host");

void uniform_sphere_point(int n_components, Rng& rng, double* out) {
  if (n_components < 1) raise(ErrorCode::InvalidParameter, "N must be >= 1");
  if (n_components == 1) {
    out[0] = rng.next_u64() & 1 ? 1.0 : -1.0;
    return;
  }
  for (;;) {
    double norm_sq = 0.0;
    for (int c = 0; c < n_components; ++c) {
      out[c] = rng.next_gaussian();
      norm_sq += out[c] * out[c];
    }
    if (norm_sq > 1e-12) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (int c = 0; c < n_components; ++c) out[c] *= inv;
      return;
    }
  }
}

ChainSamples run_chain(const Graph& g, int n_components, double beta, const ChainConfig& cfg) {
  if (n_components < 1) raise(ErrorCode::InvalidParameter, "N must be >= 1");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    raise(ErrorCode::InvalidParameter, "beta must be finite and >= 0");
  if (cfg.burn_in >= cfg.sweeps)
    raise(ErrorCode::InvalidParameter, "burn_in must be smaller than sweeps");
  if (cfg.thin < 1) raise(ErrorCode::InvalidParameter, "thin must be >= 1");
  if (cfg.proposal_width < 0.0 || !std::isfinite(cfg.proposal_width))
    raise(ErrorCode::InvalidParameter, "proposal width must be finite and >= 0");

  const int n = g.n();
  const int nc = n_components;
  Rng rng(cfg.seed, cfg.stream);

  std::vector<double> spins(static_cast<std::size_t>(n) * nc);
  for (int v = 0; v < n; ++v) uniform_sphere_point(nc, rng, &spins[static_cast<std::size_t>(v) * nc]);
  if (cfg.root_pinned) {
    double* root = &spins[0];
    for (int c = 0; c < nc; ++c) root[c] = 0.0;
    root[nc - 1] = 1.0;  // north pole
  }

  std::vector<int> order;
  for (int v = 1; v <= n; ++v)
    if (!(cfg.root_pinned && v == 1)) order.push_back(v);
  if (order.empty()) raise(ErrorCode::InvalidParameter, "nothing to update: single pinned vertex");

  double width = cfg.proposal_width > 0.0 ? cfg.proposal_width : 1.0 / std::sqrt(1.0 + beta);

  ChainSamples out;
  out.graph = &g;
  out.n_components = nc;
  out.beta = beta;
  out.config = cfg;

  std::vector<double> field(nc), proposal(nc);
  std::uint64_t tune_accepted = 0, tune_proposed = 0;   // reset each adaptation window
  std::uint64_t meas_accepted = 0, meas_proposed = 0;   // measurement phase only

  for (std::uint64_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
    const bool measuring = sweep >= cfg.burn_in;
    // Fisher-Yates reshuffle of the update order.
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      const std::size_t j = rng.next_below(i + 1);
      std::swap(order[i], order[j]);
    }

    for (int v : order) {
      double* spin = &spins[static_cast<std::size_t>(v - 1) * nc];
      for (int c = 0; c < nc; ++c) field[c] = 0.0;
      for (int w : g.neighbors(v)) {
        const double* other = &spins[static_cast<std::size_t>(w - 1) * nc];
        for (int c = 0; c < nc; ++c) field[c] += other[c];
      }

      if (nc == 1) {
        // Exact conditional: P(+1) = 1 / (1 + exp(-2 beta f)).
        const double p_up = 1.0 / (1.0 + std::exp(-2.0 * beta * field[0]));
        spin[0] = rng.next_double() < p_up ? 1.0 : -1.0;
        continue;
      }

      double norm_sq = 0.0;
      for (int c = 0; c < nc; ++c) {
        proposal[c] = spin[c] + width * rng.next_gaussian();
        norm_sq += proposal[c] * proposal[c];
      }
      if (norm_sq <= 1e-12) continue;  // degenerate draw, treat as rejected
      const double inv = 1.0 / std::sqrt(norm_sq);
      double gain = 0.0;
      for (int c = 0; c < nc; ++c) {
        proposal[c] *= inv;
        gain += (proposal[c] - spin[c]) * field[c];
      }
      measuring ? ++meas_proposed : ++tune_proposed;
      const double log_ratio = beta * gain;
      if (log_ratio >= 0.0 || rng.next_double() < std::exp(log_ratio)) {
        std::memcpy(spin, proposal.data(), sizeof(double) * nc);
        measuring ? ++meas_accepted : ++tune_accepted;
      }
    }

    // Width adaptation, burn-in only, so the measured chain is homogeneous.
    if (!measuring && cfg.tune_width && nc >= 2 && (sweep + 1) % 200 == 0 && tune_proposed > 0) {
      const double rate = static_cast<double>(tune_accepted) / static_cast<double>(tune_proposed);
      if (rate < 0.3) width *= 0.8;
      else if (rate > 0.6) width *= 1.25;
      width = std::clamp(width, 1e-4, 10.0);
      tune_accepted = tune_proposed = 0;
    }

    // Norm drift guard. Proposals renormalize every accept, so this pass
    // only corrects accumulated rounding.
    if ((sweep + 1) % 1024 == 0 && nc >= 2) {
      for (int v = 0; v < n; ++v) {
        double* s = &spins[static_cast<std::size_t>(v) * nc];
        double norm_sq = 0.0;
        for (int c = 0; c < nc; ++c) norm_sq += s[c] * s[c];
        if (std::abs(norm_sq - 1.0) > 1e-12)
          raise(ErrorCode::InternalError, "spin norm drifted beyond tolerance");
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (int c = 0; c < nc; ++c) s[c] *= inv;
      }
    }

    if (measuring && (sweep - cfg.burn_in) % cfg.thin == 0) out.states.push_back(spins);
  }

  out.final_width = width;
  out.acceptance_rate =
      meas_proposed > 0 ? static_cast<double>(meas_accepted) / static_cast<double>(meas_proposed) : 1.0;
  return out;
}

namespace {

void check_chain_vertex(const ChainSamples& chain, int v) {
  if (chain.graph == nullptr) raise(ErrorCode::InvalidParameter, "chain has no graph attached");
  if (v < 1 || v > chain.graph->n())
    raise(ErrorCode::InvalidParameter, "vertex id out of range: " + std::to_string(v));
}

}  // namespace

Estimate estimate_correlation(const ChainSamples& chain, int x, int y) {
  check_chain_vertex(chain, x);
  check_chain_vertex(chain, y);
  if (x == y) {
    // sigma_x . sigma_x = 1 by the unit-norm invariant
    Estimate est;
    est.mean = 1.0;
    est.stderror = 0.0;
    est.n_samples = chain.count();
    return est;
  }
  const int nc = chain.n_components;
  std::vector<double> series(chain.count());
  for (std::size_t s = 0; s < chain.count(); ++s) {
    double dot = 0.0;
    for (int c = 0; c < nc; ++c) dot += chain.spin(s, x, c) * chain.spin(s, y, c);
    series[s] = dot;
  }
  return batch_means(series);
}

Estimate estimate_rescaled_distance(const ChainSamples& chain, double beta, int x, int y) {
  check_chain_vertex(chain, x);
  check_chain_vertex(chain, y);
  const int nc = chain.n_components;
  std::vector<double> series(chain.count());
  for (std::size_t s = 0; s < chain.count(); ++s) {
    double dist_sq = 0.0;
    for (int c = 0; c < nc; ++c) {
      const double diff = chain.spin(s, x, c) - chain.spin(s, y, c);
      dist_sq += diff * diff;
    }
    series[s] = beta * dist_sq;
  }
  return batch_means(series);
}

KMatrixEstimate estimate_k_matrix(const ChainSamples& chain) {
  if (chain.graph == nullptr) raise(ErrorCode::InvalidParameter, "chain has no graph attached");
  const Graph& g = *chain.graph;
  const int n = g.n();
  constexpr std::size_t kBatches = 32;
  const std::size_t per_batch = chain.count() / kBatches;
  if (per_batch < 16)
    raise(ErrorCode::InsufficientSamples, "K-matrix estimate needs at least " +
                                              std::to_string(16 * kBatches) + " samples");

  // Batch sums of the outer product (L sigma^1)(L sigma^1)^T.
  std::vector<Eigen::MatrixXd> batch_mean(kBatches, Eigen::MatrixXd::Zero(n, n));
  Eigen::VectorXd lap_spin(n);
  for (std::size_t b = 0; b < kBatches; ++b) {
    for (std::size_t s = b * per_batch; s < (b + 1) * per_batch; ++s) {
      for (int v = 1; v <= n; ++v) {
        double acc = static_cast<double>(g.degree(v)) * chain.spin(s, v, 0);
        for (int w : g.neighbors(v)) acc -= chain.spin(s, w, 0);
        lap_spin(v - 1) = acc;
      }
      batch_mean[b].selfadjointView<Eigen::Upper>().rankUpdate(lap_spin);
    }
    batch_mean[b] /= static_cast<double>(per_batch);
  }

  KMatrixEstimate est;
  est.n_samples = per_batch * kBatches;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
  for (const auto& bm : batch_mean) mean += bm;
  mean /= static_cast<double>(kBatches);
  Eigen::MatrixXd var = Eigen::MatrixXd::Zero(n, n);
  for (const auto& bm : batch_mean) var += (bm - mean).cwiseProduct(bm - mean);
  var /= static_cast<double>(kBatches - 1);

  Eigen::MatrixXd mean_sym = mean.selfadjointView<Eigen::Upper>();
  Eigen::MatrixXd se = (var / static_cast<double>(kBatches)).cwiseSqrt();
  Eigen::MatrixXd se_sym = se.selfadjointView<Eigen::Upper>();
  est.value = chain.beta * mean_sym;
  est.stderror = chain.beta * se_sym;
  return est;
}

void save_samples(const ChainSamples& chain, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  char header[32] = {};
  std::memcpy(header, "SPINSMP1", 8);
  const std::uint64_t n = chain.graph ? chain.graph->n() : 0;
  const std::uint64_t nc = chain.n_components;
  const std::uint64_t count = chain.count();
  std::memcpy(header + 8, &n, 8);
  std::memcpy(header + 16, &nc, 8);
  std::memcpy(header + 24, &count, 8);
  out.write(header, sizeof(header));
  for (const auto& state : chain.states)
    out.write(reinterpret_cast<const char*>(state.data()),
              static_cast<std::streamsize>(state.size() * sizeof(double)));
  out.flush();
  if (!out) raise(ErrorCode::IoError, "failed writing '" + path + "'");
}

SampleDump load_samples(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  char header[32];
  in.read(header, sizeof(header));
  if (!in || std::memcmp(header, "SPINSMP1", 8) != 0)
    raise(ErrorCode::ParseError, "'" + path + "' is not a sample dump");
  SampleDump dump;
  std::memcpy(&dump.n, header + 8, 8);
  std::memcpy(&dump.n_components, header + 16, 8);
  std::memcpy(&dump.count, header + 24, 8);
  const std::uint64_t total = dump.n * dump.n_components * dump.count;
  if (total > (std::uint64_t{1} << 33))
    raise(ErrorCode::TooLarge, "sample dump larger than supported");
  dump.data.resize(total);
  in.read(reinterpret_cast<char*>(dump.data.data()),
          static_cast<std::streamsize>(total * sizeof(double)));
  if (!in) raise(ErrorCode::ParseError, "'" + path + "' is truncated");
  return dump;
}

}  // namespace spinlab
