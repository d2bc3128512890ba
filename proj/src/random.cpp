#include "qig/random.hpp"

#include <cmath>

#include <fmt/core.h>

namespace qig {

namespace {

void require_dim(std::size_t dim) {
  if (dim < 2) throw InvalidInput(fmt::format("random ensembles need dim >= 2 (got {})", dim));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x71u};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

double Rng::normal() { return normal_(engine_); }

Complex Rng::complex_normal() {
  constexpr double kScale = 0.70710678118654752440;  // 1/sqrt(2)
  const double re = normal();
  const double im = normal();
  return {kScale * re, kScale * im};
}

double Rng::uniform() { return std::generate_canonical<double, 53>(engine_); }

CMatrix random_ginibre(std::size_t dim, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

HermitianMatrix random_hermitian(std::size_t dim, Rng& rng) {
  require_dim(dim);
  return HermitianMatrix(random_ginibre(dim, rng));
}

DensityMatrix random_density_hs(std::size_t dim, Rng& rng) {
  require_dim(dim);
  const CMatrix g = random_ginibre(dim, rng);
  const CMatrix w = g * g.adjoint();
  return DensityMatrix::from(HermitianMatrix(w / w.trace().real()));
}

PureState random_pure(std::size_t dim, Rng& rng) {
  require_dim(dim);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = rng.complex_normal();
  return PureState::normalized(v);
}

CMatrix random_unitary(std::size_t dim, Rng& rng) {
  require_dim(dim);
  const CMatrix g = random_ginibre(dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace qig
