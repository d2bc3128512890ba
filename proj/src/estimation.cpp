#include "qig/estimation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace qig {

namespace {

constexpr double kVelocityFloor = 1e-12;
constexpr double kPairFloor = 1e-10;
constexpr double kUnbiasedTol = 1e-9;
constexpr double kTheoremSlack = 1e-9;
constexpr double kIdentityTol = 1e-10;
constexpr double kDependentRel = 1e-12;

double expect(const HermitianMatrix& a, const HermitianMatrix& rho) { return hs_inner(a, rho); }

// Slack scaled to the magnitude of the compared values.
double slack(double scale) { return kTheoremSlack * std::max(1.0, std::abs(scale)); }

void require_velocity(double v) {
  if (!(v > kVelocityFloor)) {
    throw InvalidInput(fmt::format(
        "zero velocity: tr(xi' xi') = {:.3e}, [H, xi] vanishes and no locally unbiased "
        "estimator exists",
        v));
  }
}

HermitianMatrix mean_adjusted(const EstimatorT& t, const HermitianMatrix& rho) {
  const double mean = expect(t.matrix, rho);
  return t.matrix - HermitianMatrix::identity(t.matrix.dim()) * mean;
}

}  // namespace

double variance(const DensityMatrix& rho, const HermitianMatrix& h) {
  require_same_dim(rho.dim(), h.dim(), "variance");
  const double mean = expect(h, rho.hermitian());
  return expect(square(h), rho.hermitian()) - mean * mean;
}

double skew_information(const DensityMatrix& rho, const HermitianMatrix& h) {
  require_same_dim(rho.dim(), h.dim(), "skew_information");
  const SqrtState sq = principal_sqrt(rho);
  const HermitianMatrix& root = sq.hermitian();
  return expect(square(h), rho.hermitian()) - trace_product(h, root, h, root);
}

double skew_second(const DensityMatrix& rho, const HermitianMatrix& h) {
  require_same_dim(rho.dim(), h.dim(), "skew_second");
  const SqrtState sq = principal_sqrt(rho);
  const HermitianMatrix& root = sq.hermitian();
  const double mean = expect(h, rho.hermitian());
  return trace_product(h, root, h, root) - mean * mean;
}

double velocity_sq(const SqrtState& xi, const HermitianMatrix& h) {
  require_same_dim(xi.dim(), h.dim(), "velocity_sq");
  const HermitianMatrix d1 = derivatives_unitary(xi.hermitian(), h, 1);
  return hs_inner(d1, d1);
}

double velocity_sq_trace_form(const SqrtState& xi, const HermitianMatrix& h) {
  require_same_dim(xi.dim(), h.dim(), "velocity_sq_trace_form");
  const HermitianMatrix& x = xi.hermitian();
  return 2.0 * (expect(square(h), square(x)) - trace_product(h, x, h, x));
}

double local_unbiasedness(const EstimatorT& t, const SqrtState& xi, const HermitianMatrix& h) {
  require_same_dim(xi.dim(), t.matrix.dim(), "local_unbiasedness");
  const HermitianMatrix centered =
      t.matrix - HermitianMatrix::identity(xi.dim()) * t.reference_time;
  return hs_inner(anticommutator(centered, xi.hermitian()),
                  derivatives_unitary(xi.hermitian(), h, 1));
}

EstimatorT make_locally_unbiased(const SqrtState& xi, const HermitianMatrix& h,
                                 double reference_time) {
  require_same_dim(xi.dim(), h.dim(), "make_locally_unbiased");
  const HermitianMatrix d1 = derivatives_unitary(xi.hermitian(), h, 1);
  const double vel = hs_inner(d1, d1);
  require_velocity(vel);

  const EigenSystem es = eigh(xi.hermitian());
  const CMatrix d1_eig = es.vectors.adjoint() * d1.matrix() * es.vectors;
  const Eigen::Index n = d1_eig.rows();
  const double scale = std::sqrt(vel);
  CMatrix tt = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double denom = es.values(j) + es.values(k);
      if (std::abs(denom) > kPairFloor) {
        tt(j, k) = d1_eig(j, k) / (denom * vel);
      } else if (std::abs(d1_eig(j, k)) > kPairFloor * scale) {
        throw InvalidInput(fmt::format(
            "rank-deficient xi: eigenvalue pair ({}, {}) sums to {:.3e} but xi' has weight "
            "{:.3e} there; no locally unbiased estimator of this form exists",
            j, k, denom, std::abs(d1_eig(j, k))));
      }
    }
  }
  HermitianMatrix centered(es.vectors * tt * es.vectors.adjoint());
  // Diagonal of xi' vanishes in the eigenbasis of xi, so tr(T~ xi^2) = 0 up to
  // rounding; remove the residue.
  const double drift = expect(centered, square(xi.hermitian()));
  centered -= HermitianMatrix::identity(xi.dim()) * drift;
  return {centered + HermitianMatrix::identity(xi.dim()) * reference_time, reference_time};
}

EstimatorT perturb_estimator(const EstimatorT& t, const SqrtState& xi, const HermitianMatrix& h,
                             const HermitianMatrix& p) {
  require_same_dim(xi.dim(), p.dim(), "perturb_estimator");
  const HermitianMatrix& x = xi.hermitian();
  const HermitianMatrix k = anticommutator(x, derivatives_unitary(x, h, 1));
  const double kk = hs_inner(k, k);
  HermitianMatrix q = p;
  if (kk > 0.0) q -= k * (hs_inner(q, k) / kk);
  q -= HermitianMatrix::identity(xi.dim()) * expect(q, square(x));
  return {t.matrix + q, t.reference_time};
}

BoundReport bound_report(const SqrtState& xi, const HermitianMatrix& h, const EstimatorT& t) {
  require_same_dim(xi.dim(), h.dim(), "bound_report");
  require_same_dim(xi.dim(), t.matrix.dim(), "bound_report");
  const double unbiased = local_unbiasedness(t, xi, h);
  if (std::abs(unbiased - 1.0) > kUnbiasedTol) {
    throw InvalidInput(fmt::format(
        "estimator is not locally unbiased: tr((T~ xi + xi T~) xi') = {:.17g}", unbiased));
  }
  const HermitianMatrix& x = xi.hermitian();
  const HermitianMatrix rho = square(x);
  const HermitianMatrix tc = mean_adjusted(t, rho);
  const double mean_h = expect(h, rho);
  const double h2 = expect(square(h), rho);
  const double hxhx = trace_product(h, x, h, x);

  BoundReport r;
  r.var_T = expect(square(tc), rho);
  r.delta_T2 = trace_product(tc, x, tc, x);
  r.var_H = h2 - mean_h * mean_h;
  r.delta_H2 = hxhx - mean_h * mean_h;
  r.skew_I = h2 - hxhx;
  r.velocity_sq = velocity_sq(xi, h);
  require_velocity(r.velocity_sq);
  r.crb_rhs = 1.0 / (2.0 * r.velocity_sq);
  r.crb_rhs_skew = 1.0 / (4.0 * (r.var_H - r.delta_H2));
  r.luo_rhs = 1.0 / (4.0 * r.velocity_sq);
  r.symmetric_lhs = r.var_T * r.var_H;
  r.symmetric_rhs = 0.25 + r.delta_T2 * r.delta_H2;
  r.curvature_gamma2 = acceleration_curvature(xi, h).gamma2;

  const DirectionSet dirs = bhattacharyya_directions(xi, h, 3);
  const HermitianMatrix grad = anticommutator(tc, x);
  double odd = 0.0;
  for (const auto& d : dirs.directions) {
    if (d.order % 2 == 1) {
      const double c = hs_inner(grad, d.unit);
      odd += c * c;
    }
  }
  r.third_order_rhs = 0.5 * odd;

  std::vector<std::string> failures;
  if (r.var_T + r.delta_T2 < r.crb_rhs - slack(r.crb_rhs)) failures.push_back("Cramer-Rao");
  if (r.var_T < r.luo_rhs - slack(r.luo_rhs)) failures.push_back("Luo");
  if (r.symmetric_lhs < r.symmetric_rhs - slack(r.symmetric_rhs)) failures.push_back("symmetric");
  if (r.var_T < r.delta_T2 - slack(r.var_T)) failures.push_back("var_T >= delta_T2");
  const double min_eig = eigh(x).values.minCoeff();
  if (min_eig >= -kPairFloor && r.delta_T2 < -slack(r.var_T)) failures.push_back("delta_T2 >= 0");
  if (std::abs(r.var_H - (r.skew_I + r.delta_H2)) > kIdentityTol * std::max(1.0, std::abs(h2))) {
    failures.push_back("var_H = skew_I + delta_H2");
  }
  if (!failures.empty()) {
    std::string which;
    for (const auto& f : failures) which += (which.empty() ? "" : ", ") + f;
    throw NumericalError(fmt::format("bound violated ({}): {}", which, describe(r)));
  }
  return r;
}

std::string describe(const BoundReport& r) {
  return fmt::format(
      "var_T={:.17g} delta_T2={:.17g} var_H={:.17g} delta_H2={:.17g} skew_I={:.17g} "
      "velocity_sq={:.17g} crb_rhs={:.17g} luo_rhs={:.17g} symmetric=({:.17g}, {:.17g}) "
      "curvature_gamma2={:.17g} third_order_rhs={:.17g}",
      r.var_T, r.delta_T2, r.var_H, r.delta_H2, r.skew_I, r.velocity_sq, r.crb_rhs, r.luo_rhs,
      r.symmetric_lhs, r.symmetric_rhs, r.curvature_gamma2, r.third_order_rhs);
}

Acceleration acceleration_curvature(const SqrtState& xi, const HermitianMatrix& h) {
  const HermitianMatrix& x = xi.hermitian();
  const HermitianMatrix d1 = derivatives_unitary(x, h, 1);
  const double vel = hs_inner(d1, d1);
  require_velocity(vel);
  const HermitianMatrix d2 = derivatives_unitary(x, h, 2);
  Acceleration out;
  out.alpha = d2 - x * hs_inner(d2, x);
  out.gamma2 = 16.0 * hs_inner(out.alpha, out.alpha) / vel;
  return out;
}

DirectionSet bhattacharyya_directions(const SqrtState& xi, const HermitianMatrix& h,
                                      int max_order) {
  if (max_order < 1 || max_order > 3) {
    throw InvalidInput(fmt::format("max_order must be 1, 2 or 3 (got {})", max_order));
  }
  const HermitianMatrix& x = xi.hermitian();
  DirectionSet out;
  // xi is a unit vector; every derivative direction is orthogonalized against
  // it so the order-2 element is the acceleration.
  std::vector<HermitianMatrix> basis{x};
  for (int k = 1; k <= max_order; ++k) {
    const HermitianMatrix raw = derivatives_unitary(x, h, k);
    const double raw_norm = hs_norm(raw);
    if (k == 1) require_velocity(raw_norm * raw_norm);
    HermitianMatrix v = raw;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : basis) v -= e * hs_inner(v, e);
    }
    const double norm = hs_norm(v);
    if (!(norm > kDependentRel * raw_norm)) {
      out.notices.push_back(fmt::format(
          "order {} derivative is linearly dependent on lower orders (residual {:.3e}); dropped", k,
          norm));
      continue;
    }
    v *= 1.0 / norm;
    basis.push_back(v);
    out.directions.push_back({k, std::move(v), norm});
  }
  return out;
}

HermitianMatrix third_order_beta(const SqrtState& xi, const HermitianMatrix& h) {
  const HermitianMatrix& x = xi.hermitian();
  const HermitianMatrix d1 = derivatives_unitary(x, h, 1);
  const HermitianMatrix d3 = derivatives_unitary(x, h, 3);
  const double vel = hs_inner(d1, d1);
  require_velocity(vel);
  return d3 - d1 * (hs_inner(d3, d1) / vel);
}

HigherOrderBound higher_order_bound(const SqrtState& xi, const HermitianMatrix& h,
                                    const EstimatorT& t, int max_order) {
  HigherOrderBound out;
  out.base = bound_report(xi, h, t);
  const HermitianMatrix& x = xi.hermitian();
  const HermitianMatrix tc = mean_adjusted(t, square(x));
  out.gradient = anticommutator(tc, x);
  out.gradient_norm2 = hs_inner(out.gradient, out.gradient);

  const double two_sum = 2.0 * (out.base.var_T + out.base.delta_T2);
  if (std::abs(out.gradient_norm2 - two_sum) > kIdentityTol * std::max(1.0, two_sum)) {
    throw NumericalError(fmt::format("gradient identity failed: |grad t|^2 = {:.17g}, "
                                     "2(var_T + delta_T2) = {:.17g}",
                                     out.gradient_norm2, two_sum));
  }

  const DirectionSet dirs = bhattacharyya_directions(xi, h, max_order);
  out.notices = dirs.notices;
  double partial = 0.0, odd = 0.0;
  std::size_t next = 0;
  for (int k = 1; k <= max_order; ++k) {
    if (next < dirs.directions.size() && dirs.directions[next].order == k) {
      const double c = hs_inner(out.gradient, dirs.directions[next].unit);
      out.terms.push_back({k, c, c * c});
      partial += c * c;
      if (k % 2 == 1) odd += c * c;
      ++next;
    }
    out.bound_by_order.push_back(0.5 * partial);
  }
  out.odd_order_bound = 0.5 * odd;

  if (partial > out.gradient_norm2 + slack(out.gradient_norm2)) {
    throw NumericalError(fmt::format("Bessel inequality violated: projections {:.17g} exceed "
                                     "|grad t|^2 = {:.17g}",
                                     partial, out.gradient_norm2));
  }
  if (max_order >= 3) {
    const HermitianMatrix beta = third_order_beta(xi, h);
    const double bb = hs_inner(beta, beta);
    if (bb > kDependentRel * kDependentRel * hs_inner(derivatives_unitary(x, h, 3),
                                                      derivatives_unitary(x, h, 3))) {
      const double c = hs_inner(out.gradient, beta);
      out.beta_component2 = c * c / bb;
    }
  }
  return out;
}

double skew_moment(const SqrtState& xi, const HermitianMatrix& h, int k) {
  if (k < 2 || k > 4) throw InvalidInput(fmt::format("skew moment order must be 2..4 (got {})", k));
  require_same_dim(xi.dim(), h.dim(), "skew_moment");
  const CMatrix& x = xi.matrix();
  const CMatrix rho = x * x;
  const double mean = (h.matrix() * rho).trace().real();
  const auto n = h.matrix().rows();
  const CMatrix hc = h.matrix() - mean * CMatrix::Identity(n, n);
  CMatrix power = CMatrix::Identity(n, n);
  for (int j = 0; j < k - 1; ++j) power = power * hc;  // H~^(k-1)
  const Complex first = (power * hc * rho).trace();
  const Complex second = (power * x * hc * x).trace();
  return (first - second).real();
}

}  // namespace qig
