#include "gff.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "greens.hpp"
#include "rng.hpp"

namespace spinlab {

namespace {

Eigen::LLT<Eigen::MatrixXd> pinned_cholesky(const Graph& g, int root) {
  (void)g.degree(root);  // range check
  Eigen::MatrixXd lap = laplacian_matrix(g);
  const int n = g.n();
  Eigen::MatrixXd pinned(n - 1, n - 1);
  int row = 0;
  for (int a = 0; a < n; ++a) {
    if (a == root - 1) continue;
    int col = 0;
    for (int b = 0; b < n; ++b) {
      if (b == root - 1) continue;
      pinned(row, col++) = lap(a, b);
    }
    ++row;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(pinned);
  if (llt.info() != Eigen::Success)
    raise(ErrorCode::SolverFailure, "pinned Laplacian is not positive definite");
  return llt;
}

}  // namespace

GFFCovariance gff_covariance(const Graph& g, int root) {
  GFFCovariance cov;
  cov.root = root;
  cov.n = g.n();
  cov.matrix = pinned_cholesky(g, root).solve(
      Eigen::MatrixXd::Identity(g.n() - 1, g.n() - 1));
  return cov;
}

GFFSampleSet gff_sample(const Graph& g, int components, int root, std::size_t count,
                        std::uint64_t seed, std::uint64_t stream) {
  if (components < 1) raise(ErrorCode::InvalidParameter, "need at least one field component");
  const int n = g.n();
  const auto llt = pinned_cholesky(g, root);
  Rng rng(seed, stream);

  GFFSampleSet out;
  out.root = root;
  out.components = components;
  out.n = n;
  out.fields.reserve(count);

  // With L_r = C C^T, solving C^T x = z maps white noise z to covariance
  // (C^T)^{-1} (C^{-1}) = L_r^{-1}.
  Eigen::VectorXd noise(n - 1), field(n - 1);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> sample(static_cast<std::size_t>(n) * components, 0.0);
    for (int c = 0; c < components; ++c) {
      for (int i = 0; i < n - 1; ++i) noise(i) = rng.next_gaussian();
      field = llt.matrixU().solve(noise);
      int idx = 0;
      for (int v = 1; v <= n; ++v) {
        if (v == root) continue;
        sample[static_cast<std::size_t>(v - 1) * components + c] = field(idx++);
      }
    }
    out.fields.push_back(std::move(sample));
  }
  return out;
}

std::vector<WconRow> wcon_report(const Graph& g, int n_components,
                                 const std::vector<double>& betas, int x, int y,
                                 const ChainConfig& cfg, std::size_t gff_count) {
  if (n_components < 2)
    raise(ErrorCode::WrongN, "the limiting-field comparison needs N >= 2");
  if (betas.empty()) raise(ErrorCode::InvalidParameter, "empty beta schedule");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] > 0.0)) raise(ErrorCode::InvalidParameter, "betas must be positive");
    if (i > 0 && betas[i] <= betas[i - 1])
      raise(ErrorCode::InvalidParameter, "betas must be strictly increasing");
  }
  constexpr int kRoot = 1;
  if (x == y) raise(ErrorCode::SameVertex, "need two distinct vertices");
  if (x == kRoot)
    raise(ErrorCode::InvalidParameter, "x is compared to the field and must differ from the root");
  (void)g.degree(x);
  (void)g.degree(y);
  if (gff_count < 2) raise(ErrorCode::InvalidParameter, "need at least 2 field samples");

  const GFFCovariance cov = gff_covariance(g, kRoot);
  const double target_distance = cov.distance_variance(x, y);

  std::vector<WconRow> rows;
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    const double beta = betas[bi];
    ChainConfig row_cfg = cfg;
    row_cfg.root_pinned = true;
    row_cfg.stream = cfg.stream + 2 * bi + 1;  // distinct stream per row
    const ChainSamples chain = run_chain(g, n_components, beta, row_cfg);

    WconRow row;
    row.beta = beta;
    row.moment = estimate_rescaled_distance(chain, beta, x, y);
    row.moment_target = (n_components - 1) * target_distance;

    const GFFSampleSet field =
        gff_sample(g, 1, kRoot, gff_count, cfg.seed, cfg.stream + 2 * bi + 2);
    std::vector<double> rescaled(chain.count()), gaussian(field.count());
    const double scale = std::sqrt(beta);
    for (std::size_t s = 0; s < chain.count(); ++s)
      rescaled[s] = scale * chain.spin(s, x, 0);  // component 0 is transverse
    for (std::size_t s = 0; s < field.count(); ++s) gaussian[s] = field.value(s, x, 0);
    row.ks = ks_statistic(std::move(rescaled), std::move(gaussian));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spinlab
