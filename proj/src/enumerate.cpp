#include "enumerate.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "stats.hpp"

namespace spinlab {

namespace {

constexpr int kMaxVertices = 24;
constexpr std::uint64_t kRefreshPeriod = 8192;  // drift control for float accumulators

void check_enumerable(const Graph& g, double beta) {
  if (g.n() > kMaxVertices)
    raise(ErrorCode::TooLarge, "enumeration limited to " + std::to_string(kMaxVertices) +
                                   " vertices, graph has " + std::to_string(g.n()));
  if (!(beta >= 0.0) || !std::isfinite(beta))
    raise(ErrorCode::InvalidParameter, "beta must be finite and >= 0");
}

// Walks all 2^n spin assignments in Gray-code order, so consecutive states
// differ by one flip. The visitor gets the current spins and the number of
// unsatisfied edges (sigma_i != sigma_j), plus the vertex just flipped (0 on
// the first call). Single-threaded by design: the fixed order makes every
// reported value bit-reproducible.
template <typename Visit>
void enumerate_gray(const Graph& g, Visit&& visit) {
  const int n = g.n();
  std::vector<std::int8_t> sigma(n, -1);
  int unsat = 0;
  visit(sigma.data(), unsat, 0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t c = 1; c < total; ++c) {
    const int v = std::countr_zero(c) + 1;
    for (int w : g.neighbors(v)) unsat += sigma[v - 1] == sigma[w - 1] ? 1 : -1;
    sigma[v - 1] = static_cast<std::int8_t>(-sigma[v - 1]);
    visit(sigma.data(), unsat, v);
  }
}

// weight at h=0 depends only on the unsatisfied-edge count u:
// sum_E (sigma_i - sigma_j)^2 = 4u, so w = exp(-2 beta u). Tabulated once;
// equal-energy states then get identical weights. Note max(w) = 1, so the
// h=0 sums never need the log-domain fallback: terms that would underflow
// are genuinely negligible against the >= 2 ground-state contribution.
std::vector<double> weight_table(const Graph& g, double beta) {
  std::vector<double> table(g.m() + 1);
  for (int u = 0; u <= g.m(); ++u) table[u] = std::exp(-2.0 * beta * u);
  return table;
}

double convention_factor(IsingConvention convention, int n) {
  return convention == IsingConvention::Half ? std::ldexp(1.0, -n) : 1.0;
}

}  // namespace

double exact_partition(const Graph& g, double beta, const std::vector<double>& h,
                       IsingConvention convention) {
  check_enumerable(g, beta);
  const int n = g.n();
  if (!h.empty() && static_cast<int>(h.size()) != n)
    raise(ErrorCode::DimensionMismatch, "shift field length != vertex count");
  for (double value : h)
    if (!std::isfinite(value)) raise(ErrorCode::InvalidParameter, "shift field has non-finite entry");

  // Per-edge shift differences. All zero (h = 0 or constant h) permits the
  // exact integer-energy fast path.
  std::vector<double> shift(g.m(), 0.0);
  bool shifted = false;
  if (!h.empty()) {
    for (int e = 0; e < g.m(); ++e) {
      shift[e] = h[g.edges()[e].first - 1] - h[g.edges()[e].second - 1];
      shifted |= shift[e] != 0.0;
    }
  }

  if (!shifted) {
    const std::vector<double> wtab = weight_table(g, beta);
    CompensatedSum z;
    enumerate_gray(g, [&](const std::int8_t*, int unsat, int) { z.add(wtab[unsat]); });
    return z.value() * convention_factor(convention, n);
  }

  // General shift: maintain the energy incrementally and accumulate in log
  // domain (streaming log-sum-exp), since a strong shift can push every
  // individual weight below the underflow threshold.
  std::vector<std::vector<std::pair<int, double>>> incident(n);  // per vertex: (other end, oriented shift)
  for (int e = 0; e < g.m(); ++e) {
    auto [a, b] = g.edges()[e];
    incident[a - 1].emplace_back(b, shift[e]);
    incident[b - 1].emplace_back(a, -shift[e]);
  }
  const auto full_energy = [&](const std::int8_t* sigma) {
    double acc = 0.0;
    for (int e = 0; e < g.m(); ++e) {
      auto [a, b] = g.edges()[e];
      const double t = static_cast<double>(sigma[a - 1] - sigma[b - 1]) + shift[e];
      acc += t * t;
    }
    return acc;
  };

  double energy = 0.0;
  double lse_max = -std::numeric_limits<double>::infinity();
  CompensatedSum lse_sum;
  std::uint64_t since_refresh = 0;
  enumerate_gray(g, [&](const std::int8_t* sigma, int, int flipped) {
    if (flipped == 0) {
      energy = full_energy(sigma);
    } else {
      // sigma[flipped] already holds the new value; remove the old terms and
      // add the new ones for each incident edge.
      const double now = sigma[flipped - 1];
      for (auto [other, oriented] : incident[flipped - 1]) {
        const double diff_new = now - sigma[other - 1] + oriented;
        const double diff_old = -now - sigma[other - 1] + oriented;
        energy += diff_new * diff_new - diff_old * diff_old;
      }
      if (++since_refresh == kRefreshPeriod) {
        since_refresh = 0;
        energy = full_energy(sigma);
      }
    }
    const double lw = -0.5 * beta * energy;
    if (lw <= lse_max) {
      lse_sum.add(std::exp(lw - lse_max));
    } else {
      // rescale the running sum to the new maximum
      const double scaled = lse_sum.value() * std::exp(lse_max - lw);
      lse_sum = CompensatedSum();
      lse_sum.add(scaled);
      lse_sum.add(1.0);
      lse_max = lw;
    }
  });
  const double log_z = lse_max + std::log(lse_sum.value());
  return std::exp(log_z) * convention_factor(convention, n);
}

double exact_correlation(const Graph& g, double beta, int x, int y, IsingConvention) {
  check_enumerable(g, beta);
  (void)g.degree(x);
  (void)g.degree(y);
  const std::vector<double> wtab = weight_table(g, beta);
  CompensatedSum num, den;
  enumerate_gray(g, [&](const std::int8_t* sigma, int unsat, int) {
    const double w = wtab[unsat];
    den.add(w);
    num.add(sigma[x - 1] == sigma[y - 1] ? w : -w);
  });
  return num.value() / den.value();
}

Eigen::MatrixXd exact_correlation_matrix(const Graph& g, double beta) {
  check_enumerable(g, beta);
  const int n = g.n();
  const std::vector<double> wtab = weight_table(g, beta);
  std::vector<CompensatedSum> upper(static_cast<std::size_t>(n) * n);
  CompensatedSum den;
  enumerate_gray(g, [&](const std::int8_t* sigma, int unsat, int) {
    const double w = wtab[unsat];
    den.add(w);
    for (int a = 0; a < n; ++a) {
      const double wa = sigma[a] > 0 ? w : -w;
      for (int b = a + 1; b < n; ++b)
        upper[static_cast<std::size_t>(a) * n + b].add(sigma[b] > 0 ? wa : -wa);
    }
  });
  const double z = den.value();
  Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double value = upper[static_cast<std::size_t>(a) * n + b].value() / z;
      corr(a, b) = value;
      corr(b, a) = value;
    }
  return corr;
}

double directional_second_derivative(const Graph& g, double beta, const std::vector<double>& v,
                                     IsingConvention convention) {
  check_enumerable(g, beta);
  const int n = g.n();
  if (static_cast<int>(v.size()) != n)
    raise(ErrorCode::DimensionMismatch, "direction length != vertex count");
  for (double value : v)
    if (!std::isfinite(value)) raise(ErrorCode::InvalidParameter, "direction has non-finite entry");

  double edge_norm = 0.0;  // sum_E (v_i - v_j)^2
  for (auto [a, b] : g.edges()) {
    const double diff = v[a - 1] - v[b - 1];
    edge_norm += diff * diff;
  }
  // sum_E (v_i - v_j)(sigma_i - sigma_j) = <L v, sigma>, updated per flip.
  const std::vector<double> lv = laplacian_apply(g, v);
  const auto full_overlap = [&](const std::int8_t* sigma) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) acc += lv[a] * sigma[a];
    return acc;
  };

  const std::vector<double> wtab = weight_table(g, beta);
  CompensatedSum sum_w, sum_sq;
  double overlap = 0.0;
  std::uint64_t since_refresh = 0;
  enumerate_gray(g, [&](const std::int8_t* sigma, int unsat, int flipped) {
    if (flipped == 0) {
      overlap = full_overlap(sigma);
    } else {
      overlap += 2.0 * lv[flipped - 1] * sigma[flipped - 1];
      if (++since_refresh == kRefreshPeriod) {
        since_refresh = 0;
        overlap = full_overlap(sigma);
      }
    }
    const double w = wtab[unsat];
    sum_w.add(w);
    sum_sq.add(w * overlap * overlap);
  });
  const double value = beta * beta * sum_sq.value() - beta * edge_norm * sum_w.value();
  return value * convention_factor(convention, n);
}

Eigen::MatrixXd exact_laplacian_covariance(const Graph& g, double beta) {
  check_enumerable(g, beta);
  const int n = g.n();
  const std::vector<double> wtab = weight_table(g, beta);

  // (L sigma)_v is integer-valued; incremental updates below stay exact.
  std::vector<int> lap_sigma(n);
  const auto refresh = [&](const std::int8_t* sigma) {
    for (int a = 1; a <= n; ++a) {
      int acc = 0;
      for (int w : g.neighbors(a)) acc += sigma[a - 1] - sigma[w - 1];
      lap_sigma[a - 1] = acc;
    }
  };

  std::vector<CompensatedSum> upper(static_cast<std::size_t>(n) * n);
  CompensatedSum den;
  enumerate_gray(g, [&](const std::int8_t* sigma, int unsat, int flipped) {
    if (flipped == 0) {
      refresh(sigma);
    } else {
      const int now = sigma[flipped - 1];
      lap_sigma[flipped - 1] += 2 * g.degree(flipped) * now;
      for (int w : g.neighbors(flipped)) lap_sigma[w - 1] -= 2 * now;
    }
    const double w = wtab[unsat];
    den.add(w);
    for (int a = 0; a < n; ++a) {
      if (lap_sigma[a] == 0) continue;
      const double wa = w * lap_sigma[a];
      for (int b = a; b < n; ++b)
        upper[static_cast<std::size_t>(a) * n + b].add(wa * lap_sigma[b]);
    }
  });
  const double z = den.value();
  Eigen::MatrixXd cov(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const double value = upper[static_cast<std::size_t>(a) * n + b].value() / z;
      cov(a, b) = value;
      cov(b, a) = value;
    }
  return cov;
}

}  // namespace spinlab
