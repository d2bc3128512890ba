#pragma once

#include <string>
#include <vector>

#include "qig/hermitian.hpp"

namespace qig {

/// Time estimator T for the unitary curve xi_t = exp(-iHt) xi exp(iHt).
/// Locally unbiased at reference_time when tr((T~ xi + xi T~) xi') = 1 with
/// T~ = T - reference_time * I.
struct EstimatorT {
  HermitianMatrix matrix;
  double reference_time = 0.0;
};

/// tr(H^2 rho) - tr(H rho)^2
double variance(const DensityMatrix& rho, const HermitianMatrix& h);

/// Wigner-Yanase skew information tr(H^2 rho) - tr(H sqrt(rho) H sqrt(rho)),
/// with the principal square root.
double skew_information(const DensityMatrix& rho, const HermitianMatrix& h);

/// Second-kind skew information tr(H sqrt(rho) H sqrt(rho)) - tr(H rho)^2.
double skew_second(const DensityMatrix& rho, const HermitianMatrix& h);

/// tr(xi' xi') with xi' = -i[H, xi].
double velocity_sq(const SqrtState& xi, const HermitianMatrix& h);

/// 2 [tr(H^2 xi^2) - tr(H xi H xi)], computed without forming xi'.
double velocity_sq_trace_form(const SqrtState& xi, const HermitianMatrix& h);

/// tr((T~ xi + xi T~) xi'); equals 1 for a locally unbiased estimator.
double local_unbiasedness(const EstimatorT& t, const SqrtState& xi, const HermitianMatrix& h);

/// Estimator saturating the Schwarz step: T~ xi + xi T~ = xi' / tr(xi' xi'),
/// solved in the eigenbasis of xi as T~_jk = c xi'_jk / (l_j + l_k). Index
/// pairs with |l_j + l_k| <= 1e-10 are skipped; if xi' has weight on such a
/// pair (rank-deficient xi with no solution) the call throws InvalidInput, as
/// it does for zero velocity. The result has tr(T xi^2) = reference_time.
EstimatorT make_locally_unbiased(const SqrtState& xi, const HermitianMatrix& h,
                                 double reference_time = 0.0);

/// T + P', where P' is P with its component along {xi, xi'} and its mean
/// removed, so local unbiasedness and tr(T xi^2) are preserved.
EstimatorT perturb_estimator(const EstimatorT& t, const SqrtState& xi, const HermitianMatrix& h,
                             const HermitianMatrix& p);

struct BoundReport {
  double var_T = 0.0;        // tr(T~^2 xi^2), T~ mean-adjusted
  double delta_T2 = 0.0;     // tr(T~ xi T~ xi)
  double var_H = 0.0;        // tr(H^2 xi^2) - <H>^2
  double delta_H2 = 0.0;     // tr(H xi H xi) - <H>^2
  double skew_I = 0.0;       // tr(H^2 xi^2) - tr(H xi H xi)
  double velocity_sq = 0.0;  // tr(xi' xi')
  double crb_rhs = 0.0;      // 1 / (2 velocity_sq): bound on var_T + delta_T2
  double crb_rhs_skew = 0.0; // 1 / (4 (var_H - delta_H2)), same value by the trace identity
  double luo_rhs = 0.0;      // 1 / (4 velocity_sq): bound on var_T
  double symmetric_lhs = 0.0;  // var_T var_H
  double symmetric_rhs = 0.0;  // 1/4 + delta_T2 delta_H2
  double curvature_gamma2 = 0.0;
  double third_order_rhs = 0.0;  // (term_1 + term_3)/2 over orthonormal directions
};

/// All variance and bound quantities for (xi, H, T). The delta-type terms use
/// xi itself; for xi = principal_sqrt(rho) they coincide with the skew
/// information quantities of rho. Requires T locally unbiased to 1e-9
/// (InvalidInput otherwise). A violated inequality is an implementation bug
/// and throws NumericalError with the full report in the message.
BoundReport bound_report(const SqrtState& xi, const HermitianMatrix& h, const EstimatorT& t);

std::string describe(const BoundReport& r);

struct Acceleration {
  HermitianMatrix alpha;  // xi'' - tr(xi'' xi) xi
  double gamma2 = 0.0;    // 16 tr(alpha alpha) / tr(xi' xi')
};

Acceleration acceleration_curvature(const SqrtState& xi, const HermitianMatrix& h);

struct Direction {
  int order = 0;
  HermitianMatrix unit;  // unit HS norm
  double residual_norm = 0.0;  // norm of the derivative after orthogonalization
};

struct DirectionSet {
  std::vector<Direction> directions;  // ordered by derivative order
  std::vector<std::string> notices;   // dropped (linearly dependent) orders
};

/// xi', then xi'' and xi''' Gram-Schmidt orthogonalized against xi and all
/// earlier directions (max_order in 1..3). The order-2 direction is the
/// normalized acceleration. Directions whose residual norm falls below 1e-12
/// relative to the raw derivative are dropped with a notice.
DirectionSet bhattacharyya_directions(const SqrtState& xi, const HermitianMatrix& h, int max_order);

/// xi''' - (tr(xi''' xi') / tr(xi' xi')) xi', orthogonalized against xi' only.
HermitianMatrix third_order_beta(const SqrtState& xi, const HermitianMatrix& h);

struct ProjectionTerm {
  int order = 0;
  double coefficient = 0.0;  // tr(grad e_k)
  double value = 0.0;        // coefficient^2
};

struct HigherOrderBound {
  BoundReport base;
  HermitianMatrix gradient;   // T~ xi + xi T~
  double gradient_norm2 = 0.0;  // |grad t|^2
  std::vector<ProjectionTerm> terms;
  /// Bound on var_T + delta_T2 using orders 1..m: half the partial Bessel sum.
  std::vector<double> bound_by_order;
  /// Orders 1 and 3 only; the order-2 term depends on T and is excluded.
  double odd_order_bound = 0.0;
  /// Squared component of the gradient along the unorthogonalized-to-xi'' beta.
  double beta_component2 = 0.0;
  std::vector<std::string> notices;
};

/// Projects grad t = T~ xi + xi T~ onto the orthonormal derivative
/// directions. Throws NumericalError if the Bessel inequality or the gradient
/// identity |grad t|^2 = 2 (var_T + delta_T2) fails.
HigherOrderBound higher_order_bound(const SqrtState& xi, const HermitianMatrix& h,
                                    const EstimatorT& t, int max_order);

/// m_k = tr(H~^k xi^2) - tr(H~^(k-1) xi H~ xi), H~ = H - tr(H xi^2) I, k in 2..4.
/// m_2 is the skew information; for pure xi, m_k is the k-th central moment
/// of H. Equivalently m_k = tr(H~^(k-1) [H, xi] xi).
double skew_moment(const SqrtState& xi, const HermitianMatrix& h, int k);

}  // namespace qig
