#include "qig/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/core.h>

namespace qig {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

BatchMeans run_batches(const McConfig& cfg, std::size_t width, const SampleFn& sample) {
  if (cfg.batches < 2) throw InvalidInput("Monte-Carlo needs at least 2 batches");
  if (cfg.samples < cfg.batches) {
    throw InvalidInput(fmt::format("sample count {} is below batch count {}", cfg.samples,
                                   cfg.batches));
  }
  const std::size_t nb = cfg.batches;
  // batch_sums[b * width + k]
  std::vector<double> batch_means(nb * width, 0.0);
  std::vector<std::size_t> batch_rejected(nb, 0);
  std::vector<std::size_t> batch_size(nb, cfg.samples / nb);
  for (std::size_t b = 0; b < cfg.samples % nb; ++b) ++batch_size[b];

  auto run_batch = [&](std::size_t b) {
    Rng rng = Rng::stream(cfg.seed, b);
    std::vector<double> acc(width, 0.0);
    std::vector<double> draw(width, 0.0);
    for (std::size_t s = 0; s < batch_size[b]; ++s) {
      std::fill(draw.begin(), draw.end(), 0.0);
      if (!sample(rng, draw)) {
        ++batch_rejected[b];
        continue;
      }
      for (std::size_t k = 0; k < width; ++k) acc[k] += draw[k];
    }
    for (std::size_t k = 0; k < width; ++k) {
      batch_means[b * width + k] = acc[k] / static_cast<double>(batch_size[b]);
    }
  };

  const unsigned nthreads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(nb)));
  if (nthreads == 1) {
    for (std::size_t b = 0; b < nb; ++b) run_batch(b);
  } else {
    std::vector<std::exception_ptr> errors(nthreads);
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (unsigned w = 0; w < nthreads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t b = w; b < nb; b += nthreads) run_batch(b);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  BatchMeans out;
  out.samples = cfg.samples;
  for (std::size_t r : batch_rejected) out.rejected += r;
  const double reject_fraction =
      static_cast<double>(out.rejected) / static_cast<double>(cfg.samples);
  if (reject_fraction > cfg.max_reject_fraction) {
    throw NumericalError(fmt::format(
        "Monte-Carlo rejected {} of {} samples ({:.2f}%), above the {:.2f}% limit", out.rejected,
        cfg.samples, 100.0 * reject_fraction, 100.0 * cfg.max_reject_fraction));
  }

  out.mean.assign(width, 0.0);
  out.std_error.assign(width, 0.0);
  std::vector<double> column(nb);
  const double dnb = static_cast<double>(nb);
  for (std::size_t k = 0; k < width; ++k) {
    for (std::size_t b = 0; b < nb; ++b) column[b] = batch_means[b * width + k];
    const double mean = pairwise_sum(column) / dnb;
    for (std::size_t b = 0; b < nb; ++b) column[b] = (column[b] - mean) * (column[b] - mean);
    const double var = pairwise_sum(column) / (dnb - 1.0);
    out.mean[k] = mean;
    out.std_error[k] = std::sqrt(var / dnb);
  }
  return out;
}

}  // namespace qig
