#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qig {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Input that violates a documented contract (bad dimension, non-PSD density, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: eigensolver non-convergence, violated theorem, excessive
/// Monte-Carlo rejection.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double psd_clamp = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double unit_norm = 1e-12;
}  // namespace tol

/// Square complex matrix equal to its conjugate transpose. The constructor
/// symmetrizes A <- (A + A^dagger)/2 so downstream traces are exactly real.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);

  /// Rejects inputs whose anti-Hermitian part exceeds `tolerance` (max-abs),
  /// then symmetrizes.
  static HermitianMatrix checked(const CMatrix& m, double tolerance);

  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix diagonal(const RVector& d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator-(HermitianMatrix a) { return a *= -1.0; }

 private:
  CMatrix m_;
};

/// Positive-semidefinite Hermitian matrix with unit trace.
class DensityMatrix {
 public:
  /// Validates trace (1e-10) and spectrum. Eigenvalues in [-1e-10, 0) are
  /// clamped to zero; anything more negative is rejected.
  static DensityMatrix from(const HermitianMatrix& h);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }

 private:
  explicit DensityMatrix(HermitianMatrix h) : h_(std::move(h)) {}
  HermitianMatrix h_;
};

/// Hermitian xi with tr(xi^2) = 1; xi^2 is then a density matrix. xi need not
/// be positive.
class SqrtState {
 public:
  static SqrtState from(const HermitianMatrix& h);

  std::size_t dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const CMatrix& matrix() const { return h_.matrix(); }
  DensityMatrix squared() const;

 private:
  explicit SqrtState(HermitianMatrix h) : h_(std::move(h)) {}
  HermitianMatrix h_;
};

/// Unit vector in C^n with canonical phase: first non-negligible amplitude is
/// real and positive.
class PureState {
 public:
  /// Requires unit norm within 1e-12.
  static PureState from(const CVector& v);
  /// Normalizes first; rejects the zero vector.
  static PureState normalized(const CVector& v);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  const CVector& amplitudes() const { return v_; }
  /// <x|A|x>
  double expectation(const HermitianMatrix& a) const;
  HermitianMatrix projector() const;

 private:
  explicit PureState(CVector v) : v_(std::move(v)) {}
  CVector v_;
};

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

/// Hermitian eigendecomposition; throws NumericalError on non-convergence.
EigenSystem eigh(const HermitianMatrix& a);

/// f applied to the spectrum: V f(Lambda) V^dagger.
template <class F>
HermitianMatrix spectral_map(const HermitianMatrix& a, F&& f) {
  const EigenSystem es = eigh(a);
  RVector mapped(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) mapped(k) = f(es.values(k));
  return HermitianMatrix(es.vectors * mapped.asDiagonal() * es.vectors.adjoint());
}

/// tr(AB), the Hilbert-Schmidt inner product on the Hermitian algebra.
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);
double hs_norm(const HermitianMatrix& a);

/// i[A,B] = i(AB - BA), Hermitian whenever A and B are.
HermitianMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b);
/// AB + BA
HermitianMatrix anticommutator(const HermitianMatrix& a, const HermitianMatrix& b);
/// A^2
HermitianMatrix square(const HermitianMatrix& a);
/// Real part of tr(A B C D) for Hermitian arguments; the trace is real when
/// the product is palindromic (e.g. tr(H xi H xi)).
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b,
                     const HermitianMatrix& c, const HermitianMatrix& d);

/// The unique positive-semidefinite square root.
SqrtState principal_sqrt(const DensityMatrix& rho);

/// exp(-iHt)
CMatrix evolution_operator(const HermitianMatrix& h, double t);
/// U A U^dagger
HermitianMatrix conjugate(const CMatrix& u, const HermitianMatrix& a);

/// xi_t = exp(-iHt) xi_0 exp(iHt)
SqrtState unitary_evolve(const SqrtState& xi0, const HermitianMatrix& h, double t);

/// d^k xi_t / dt^k at the current point of the unitary curve, k in {1,2,3}:
/// xi' = -i[H,xi], xi'' = -[H,[H,xi]], xi''' = i[H,[H,[H,xi]]].
HermitianMatrix derivatives_unitary(const HermitianMatrix& xi, const HermitianMatrix& h,
                                    int order);

void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace qig
