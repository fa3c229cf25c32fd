#pragma once

#include <cstddef>
#include <vector>

namespace spinlab {

// Point estimate with a one-sigma error bar and the number of raw samples
// that went into it.
struct Estimate {
  double mean = 0.0;
  double stderror = 0.0;
  std::size_t n_samples = 0;
};

// Neumaier's variant of Kahan summation. Exact enumeration sums billions of
// terms spanning many orders of magnitude; a compensated accumulator keeps
// the partition sums accurate to close to machine precision.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Mean and error bar from a correlated series via the method of batch means:
// split into `n_batches` equal contiguous batches, treat batch averages as
// independent. Throws InsufficientSamples if fewer than `min_per_batch`
// values would land in each batch.
Estimate batch_means(const std::vector<double>& series, std::size_t n_batches = 32,
                     std::size_t min_per_batch = 16);

// Two-sample Kolmogorov-Smirnov statistic, sup_t |F1(t) - F2(t)|.
// Inputs need not be sorted.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace spinlab
