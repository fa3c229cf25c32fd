#include "greens.hpp"

#include <cmath>
#include <thread>

#include <Eigen/Cholesky>

#include "rng.hpp"

namespace spinlab {

namespace {

// Maps vertices != root to 0..n-2 in increasing label order.
int pinned_index(int v, int root) { return v < root ? v - 1 : v - 2; }

Eigen::MatrixXd pinned_laplacian(const Graph& g, int root) {
  const int n = g.n();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (auto [a, b] : g.edges()) {
    if (a != root) lap(pinned_index(a, root), pinned_index(a, root)) += 1.0;
    if (b != root) lap(pinned_index(b, root), pinned_index(b, root)) += 1.0;
    if (a != root && b != root) {
      lap(pinned_index(a, root), pinned_index(b, root)) -= 1.0;
      lap(pinned_index(b, root), pinned_index(a, root)) -= 1.0;
    }
  }
  return lap;
}

}  // namespace

GreenTable greens_function(const Graph& g, int i, int j) {
  if (i == j) raise(ErrorCode::SameVertex, "source and sink coincide");
  const int n = g.n();
  (void)g.degree(i);  // range-checks i
  (void)g.degree(j);

  Eigen::MatrixXd lap = pinned_laplacian(g, j);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
  rhs(pinned_index(i, j)) = static_cast<double>(g.degree(i));

  Eigen::LLT<Eigen::MatrixXd> llt(lap);
  if (llt.info() != Eigen::Success)
    raise(ErrorCode::SolverFailure, "Cholesky factorization of the sink-deleted Laplacian failed");
  Eigen::VectorXd sol = llt.solve(rhs);

  GreenTable table;
  table.source = i;
  table.sink = j;
  table.values.assign(n, 0.0);
  for (int v = 1; v <= n; ++v) {
    if (v == j) continue;
    double val = sol(pinned_index(v, j));
    if (val < 0.0) {
      if (val < -1e-9) raise(ErrorCode::SolverFailure, "negative Green value, solve is unreliable");
      val = 0.0;
    }
    table.values[v - 1] = val;
  }

  // The table must reproduce L u = d(i) (e_i - e_j) on the full graph.
  const std::vector<double> resid = laplacian_apply(g, table.values);
  double scale = 1.0;
  for (double v : table.values) scale = std::max(scale, std::abs(v));
  scale *= static_cast<double>(g.degree(i));
  for (int s = 1; s <= n; ++s) {
    double expected = 0.0;
    if (s == i) expected += g.degree(i);
    if (s == j) expected -= g.degree(i);
    if (std::abs(resid[s - 1] - expected) > 1e-10 * scale)
      raise(ErrorCode::SolverFailure, "Green table residual exceeds tolerance");
  }
  return table;
}

double renormalized_green(const Graph& g, int x, int y) {
  return greens_function(g, x, y).at_source() / g.degree(x);
}

Estimate greens_rw_oracle(const Graph& g, int i, int j, int s, std::uint64_t trials,
                          std::uint64_t seed, int threads) {
  if (i == j) raise(ErrorCode::SameVertex, "source and sink coincide");
  if (trials < 1) raise(ErrorCode::InvalidParameter, "need at least one trial");
  if (threads < 1) raise(ErrorCode::InvalidParameter, "thread count must be >= 1");
  (void)g.degree(i);
  (void)g.degree(s);

  const auto run_block = [&](std::uint64_t count, std::uint64_t stream, double* sum, double* sumsq) {
    Rng rng(seed, stream);
    double acc = 0.0, acc2 = 0.0;
    for (std::uint64_t t = 0; t < count; ++t) {
      int pos = s;
      std::uint64_t visits = 0;
      while (pos != j) {
        if (pos == i) ++visits;
        const auto& nbrs = g.neighbors(pos);
        pos = nbrs[rng.next_below(nbrs.size())];
      }
      const double v = static_cast<double>(visits);
      acc += v;
      acc2 += v * v;
    }
    *sum = acc;
    *sumsq = acc2;
  };

  const int workers = static_cast<int>(std::min<std::uint64_t>(threads, trials));
  std::vector<double> sums(workers, 0.0), sumsqs(workers, 0.0);
  if (workers == 1) {
    run_block(trials, 0, &sums[0], &sumsqs[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t base = trials / workers, extra = trials % workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t count = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
      pool.emplace_back(run_block, count, static_cast<std::uint64_t>(w), &sums[w], &sumsqs[w]);
    }
    for (auto& t : pool) t.join();
  }

  double sum = 0.0, sumsq = 0.0;
  for (int w = 0; w < workers; ++w) {
    sum += sums[w];
    sumsq += sumsqs[w];
  }
  Estimate est;
  est.n_samples = trials;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(0.0, (sumsq - sum * est.mean) / static_cast<double>(trials - 1));
    est.stderror = std::sqrt(var / static_cast<double>(trials));
  }
  return est;
}

Eigen::MatrixXd pinned_laplacian_inverse(const Graph& g, int root) {
  (void)g.degree(root);
  const int n = g.n();
  Eigen::LLT<Eigen::MatrixXd> llt(pinned_laplacian(g, root));
  if (llt.info() != Eigen::Success)
    raise(ErrorCode::SolverFailure, "Cholesky factorization of the pinned Laplacian failed");
  return llt.solve(Eigen::MatrixXd::Identity(n - 1, n - 1));
}

Eigen::MatrixXd greens_all(const Graph& g, int sink) {
  const int n = g.n();
  const Eigen::MatrixXd inv = pinned_laplacian_inverse(g, sink);
  Eigen::MatrixXd table = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    if (i == sink) continue;
    for (int s = 1; s <= n; ++s) {
      if (s == sink) continue;
      table(i - 1, s - 1) =
          g.degree(i) * inv(pinned_index(s, sink), pinned_index(i, sink));
    }
  }
  return table;
}

}  // namespace spinlab
