#include <limits>
#include "qig/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace qig {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidInput(fmt::format("{}: dimension mismatch ({} vs {})", what, a, b));
  }
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidInput(fmt::format("matrix is not square ({}x{})", m.rows(), m.cols()));
  }
  if (m.rows() == 0) throw InvalidInput("matrix has zero dimension");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::checked(const CMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) {
    throw InvalidInput(fmt::format("matrix is not square ({}x{})", m.rows(), m.cols()));
  }
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff() * 0.5;
  if (skew > tolerance) {
    throw InvalidInput(fmt::format("matrix is not Hermitian (anti-Hermitian part {:.3e})", skew));
  }
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianMatrix(CMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  return HermitianMatrix(CMatrix(d.cast<Complex>().asDiagonal()));
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& o) {
  require_same_dim(dim(), o.dim(), "HermitianMatrix +");
  m_ += o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& o) {
  require_same_dim(dim(), o.dim(), "HermitianMatrix -");
  m_ -= o.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

EigenSystem eigh(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix DensityMatrix::from(const HermitianMatrix& h) {
  const double tr = h.trace();
  if (std::abs(tr - 1.0) > tol::trace) {
    throw InvalidInput(fmt::format("trace is {:.17g}, expected 1 (not unit trace)", tr));
  }
  const EigenSystem es = eigh(h);
  const double min_eig = es.values.minCoeff();
  if (min_eig < -tol::psd_clamp) {
    throw InvalidInput(
        fmt::format("not positive semidefinite (minimum eigenvalue {:.3e})", min_eig));
  }
  if (min_eig < 0.0) {
    const RVector clamped = es.values.cwiseMax(0.0);
    return DensityMatrix(
        HermitianMatrix(es.vectors * clamped.cast<Complex>().asDiagonal() * es.vectors.adjoint()));
  }
  return DensityMatrix(h);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

SqrtState SqrtState::from(const HermitianMatrix& h) {
  const double norm2 = hs_inner(h, h);
  if (std::abs(norm2 - 1.0) > tol::trace) {
    throw InvalidInput(fmt::format("tr(xi^2) is {:.17g}, expected 1", norm2));
  }
  return SqrtState(h);
}

DensityMatrix SqrtState::squared() const { return DensityMatrix::from(square(h_)); }

PureState PureState::from(const CVector& v) {
  if (v.size() == 0) throw InvalidInput("pure state has zero dimension");
  if (std::abs(v.norm() - 1.0) > tol::unit_norm) {
    throw InvalidInput(fmt::format("state vector norm is {:.17g}, expected 1", v.norm()));
  }
  CVector out = v;
  Eigen::Index lead = 0;
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    if (std::abs(out(k)) > 1e-14) {
      lead = k;
      break;
    }
  }
  const Complex phase = out(lead) / std::abs(out(lead));
  out /= phase;
  out(lead) = Complex(out(lead).real(), 0.0);
  return PureState(std::move(out));
}

PureState PureState::normalized(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw InvalidInput("cannot normalize the zero vector");
  return from(v / n);
}

double PureState::expectation(const HermitianMatrix& a) const {
  require_same_dim(dim(), a.dim(), "PureState::expectation");
  return v_.dot(a.matrix() * v_).real();
}

HermitianMatrix PureState::projector() const { return HermitianMatrix(v_ * v_.adjoint()); }

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "hs_inner");
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().array().conjugate()).sum().real();
}

double hs_norm(const HermitianMatrix& a) { return std::sqrt(std::max(0.0, hs_inner(a, a))); }

HermitianMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "commutator");
  const CMatrix ab = a.matrix() * b.matrix();
  return HermitianMatrix(Complex(0.0, 1.0) * (ab - ab.adjoint()));
}

HermitianMatrix anticommutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "anticommutator");
  const CMatrix ab = a.matrix() * b.matrix();
  return HermitianMatrix(ab + ab.adjoint());
}

HermitianMatrix square(const HermitianMatrix& a) { return HermitianMatrix(a.matrix() * a.matrix()); }

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b, const HermitianMatrix& c,
                     const HermitianMatrix& d) {
  require_same_dim(a.dim(), b.dim(), "trace_product");
  require_same_dim(a.dim(), c.dim(), "trace_product");
  require_same_dim(a.dim(), d.dim(), "trace_product");
  const CMatrix ab = a.matrix() * b.matrix();
  const CMatrix cd = c.matrix() * d.matrix();
  return (ab.array() * cd.transpose().array()).sum().real();
}

SqrtState principal_sqrt(const DensityMatrix& rho) {
  // Eigenvalues at the rounding level of the spectrum are zeros; their square
  // roots would otherwise leak ~1e-8 weight into a rank-deficient root.
  const EigenSystem es = eigh(rho.hermitian());
  const double floor = 4.0 * static_cast<double>(rho.dim()) * std::numeric_limits<double>::epsilon() *
                       es.values.cwiseAbs().maxCoeff();
  const HermitianMatrix root =
      spectral_map(rho.hermitian(), [floor](double l) { return l <= floor ? 0.0 : std::sqrt(l); });
  return SqrtState::from(root);
}

CMatrix evolution_operator(const HermitianMatrix& h, double t) {
  const EigenSystem es = eigh(h);
  CVector phases(es.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -es.values(k) * t);
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

HermitianMatrix conjugate(const CMatrix& u, const HermitianMatrix& a) {
  return HermitianMatrix(u * a.matrix() * u.adjoint());
}

SqrtState unitary_evolve(const SqrtState& xi0, const HermitianMatrix& h, double t) {
  require_same_dim(xi0.dim(), h.dim(), "unitary_evolve");
  if (t == 0.0) return xi0;
  HermitianMatrix xt = conjugate(evolution_operator(h, t), xi0.hermitian());
  // Unitary conjugation preserves tr(xi^2) up to rounding; renormalize that drift.
  xt *= 1.0 / hs_norm(xt);
  return SqrtState::from(xt);
}

HermitianMatrix derivatives_unitary(const HermitianMatrix& xi, const HermitianMatrix& h, int order) {
  if (order < 1 || order > 3) {
    throw InvalidInput(fmt::format("derivative order must be 1, 2 or 3 (got {})", order));
  }
  require_same_dim(xi.dim(), h.dim(), "derivatives_unitary");
  // d/dt (U xi U^dagger) = -i[H, xi] = -(i[H, xi]); iterate.
  HermitianMatrix d = xi;
  for (int k = 0; k < order; ++k) d = -commutator(h, d);
  return d;
}

}  // namespace qig
