#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the eigen-solver paths of the library.

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M sigma_x() {
  M m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline M sigma_y() {
  M m(2, 2);
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}
inline M sigma_z() {
  M m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Denman-Beavers iteration for the principal square root of a positive
/// definite matrix.
inline M denman_beavers_sqrt(const M& a, int iterations = 60) {
  M y = a;
  M z = M::Identity(a.rows(), a.cols());
  for (int k = 0; k < iterations; ++k) {
    const M yi = y.inverse();
    const M zi = z.inverse();
    y = 0.5 * (y + zi);
    z = 0.5 * (z + yi);
  }
  return y;
}

/// Truncated Taylor series of exp(A) with scaling and squaring.
inline M expm_taylor(const M& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const M scaled = a / std::pow(2.0, squarings);
  M term = M::Identity(a.rows(), a.cols());
  M sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline double tr_real(const M& m) { return m.trace().real(); }

/// Hilbert-Schmidt distance sqrt(tr((A-B)^dagger (A-B))).
inline double hs_dist(const M& a, const M& b) { return (a - b).norm(); }

/// Deterministic Hermitian matrix built from a small LCG, independent of the
/// library RNG.
class Lcg {
 public:
  explicit Lcg(std::uint64_t s) : state_(s * 2862933555777941757ULL + 3037000493ULL) {}
  double uniform() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::uint64_t state_;
};

inline M lcg_hermitian(std::size_t n, Lcg& g) {
  M m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g.symmetric();
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = C(g.symmetric(), g.symmetric());
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

/// Full-rank density A A^dagger + eps I, normalized.
inline M lcg_density(std::size_t n, Lcg& g, double eps = 0.05) {
  M a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = C(g.symmetric(), g.symmetric());
  M rho = a * a.adjoint() + eps * M::Identity(n, n);
  return rho / tr_real(rho);
}

/// (tr A tr B + tr(AB)) / (n (n+1)): the second Haar moment of pure states.
inline double haar_second_moment(const M& a, const M& b) {
  const double n = static_cast<double>(a.rows());
  return (tr_real(a) * tr_real(b) + tr_real(a * b)) / (n * (n + 1.0));
}

}  // namespace oracle
