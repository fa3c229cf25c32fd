#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace spinlab {

Estimate batch_means(const std::vector<double>& series, std::size_t n_batches,
                     std::size_t min_per_batch) {
  if (n_batches < 2) raise(ErrorCode::InvalidParameter, "need at least 2 batches");
  const std::size_t per_batch = series.size() / n_batches;
  if (per_batch < min_per_batch) {
    raise(ErrorCode::InsufficientSamples,
          "series of length " + std::to_string(series.size()) + " gives " +
              std::to_string(per_batch) + " samples per batch, need " +
              std::to_string(min_per_batch));
  }

  std::vector<double> bmeans(n_batches);
  for (std::size_t b = 0; b < n_batches; ++b) {
    CompensatedSum acc;
    for (std::size_t k = b * per_batch; k < (b + 1) * per_batch; ++k) acc.add(series[k]);
    bmeans[b] = acc.value() / static_cast<double>(per_batch);
  }

  CompensatedSum macc;
  for (double v : bmeans) macc.add(v);
  const double mean = macc.value() / static_cast<double>(n_batches);

  CompensatedSum vacc;
  for (double v : bmeans) vacc.add((v - mean) * (v - mean));
  const double var_bm = vacc.value() / static_cast<double>(n_batches - 1);

  Estimate est;
  est.mean = mean;
  est.stderror = std::sqrt(std::max(0.0, var_bm) / static_cast<double>(n_batches));
  est.n_samples = per_batch * n_batches;
  return est;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) raise(ErrorCode::InsufficientSamples, "empty sample in KS test");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace spinlab
