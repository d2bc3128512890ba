#pragma once

#include <cstdint>
#include <random>

#include "qig/hermitian.hpp"

namespace qig {

/// Seeded 64-bit Mersenne Twister. One instance per worker; never shared.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  /// Independent stream `index` derived from a master seed. Monte-Carlo
  /// batches use one stream each so results do not depend on thread count.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  double normal();
  /// Standard complex Gaussian: E|z|^2 = 1.
  Complex complex_normal();
  double uniform();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// SplitMix64 mix of (seed, index); used to give sub-runs distinct seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
CMatrix random_ginibre(std::size_t dim, Rng& rng);
/// (G + G^dagger)/2
HermitianMatrix random_hermitian(std::size_t dim, Rng& rng);
/// GG^dagger / tr(GG^dagger), the Hilbert-Schmidt measure.
DensityMatrix random_density_hs(std::size_t dim, Rng& rng);
/// Normalized complex Gaussian vector (Haar / Fubini-Study measure).
PureState random_pure(std::size_t dim, Rng& rng);
/// Haar unitary via QR of a Ginibre matrix with phase correction.
CMatrix random_unitary(std::size_t dim, Rng& rng);

}  // namespace qig
