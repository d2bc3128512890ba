#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qig/random.hpp"

namespace qig {

struct McConfig {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t batches = 100;
  /// Runs whose rejected-sample fraction exceeds this fail loudly.
  double max_reject_fraction = 0.01;
};

/// A Monte-Carlo mean with its batch-means standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct BatchMeans {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t samples = 0;
  std::size_t rejected = 0;
};

/// Draws one sample into `out` (length `width`); returns false to reject it.
using SampleFn = std::function<bool(Rng&, std::span<double> out)>;

/// Splits `cfg.samples` over `cfg.batches` batches, each with its own RNG
/// stream, and reduces batch means pairwise in batch order. The result is a
/// function of (seed, samples, batches) only, never of the thread count.
/// Rejected samples contribute zero; throws NumericalError when the rejected
/// fraction exceeds cfg.max_reject_fraction.
BatchMeans run_batches(const McConfig& cfg, std::size_t width, const SampleFn& sample);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> xs);

}  // namespace qig
