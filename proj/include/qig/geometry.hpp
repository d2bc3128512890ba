#pragma once

#include <span>
#include <vector>

#include "qig/family.hpp"
#include "qig/hermitian.hpp"
#include "qig/monte_carlo.hpp"

namespace qig {

/// Metric components with Monte-Carlo standard errors (all zero for analytic
/// results).
struct MetricEstimate {
  RMatrix components;
  RMatrix std_error;
  std::size_t samples = 0;
  std::size_t rejected = 0;
};

/// n <x|rho|x>: density of the state on pure-state space relative to the
/// normalized unitarily invariant (Haar) measure.
double density_on_pure(const PureState& x, const DensityMatrix& rho);

/// MC mean of density_on_pure over Haar samples; should be 1.
Estimate density_normalization(const DensityMatrix& rho, const McConfig& cfg);

/// MC estimate of E_Haar[<x|A|x><x|B|x>]. Exact value: (trA trB + tr(AB)) / (n(n+1)).
Estimate haar_moment(const HermitianMatrix& a, const HermitianMatrix& b, const McConfig& cfg);

/// (n+1) E_Haar[<x|A|x> p(x|rho)] which equals tr(A rho) for traceless A.
/// Requires |tr A| <= 1e-10 and at least 10^3 samples.
Estimate gibbons_expectation(const HermitianMatrix& a, const DensityMatrix& rho,
                             const McConfig& cfg);

/// E_HS[tr(A rho) <x|rho|x>] over Hilbert-Schmidt distributed rho, without
/// normalization. Proportional to <x|A|x> for traceless A.
Estimate dual_expectation_raw(const HermitianMatrix& a, const PureState& x, const McConfig& cfg);

/// Constant c with c * dual_expectation_raw(A, x) = <x|A|x>, measured by
/// weighted regression over random (A, x) validation pairs.
struct DualCalibration {
  std::size_t dim = 0;
  double constant = 0.0;
  double std_error = 0.0;
  std::size_t validation_points = 0;
};

DualCalibration calibrate_dual(std::size_t dim, std::size_t validation_points,
                               const McConfig& cfg);

Estimate dual_expectation(const HermitianMatrix& a, const PureState& x, const McConfig& cfg,
                          const DualCalibration& calibration);

/// Integral over pure states of (1/p) dp/dtheta_a dp/dtheta_b with
/// p = density_on_pure(x, xi(theta)^2). Scores use central differences of
/// rho(theta) with the family's step. Samples with p ~ 0 but nonzero score are
/// rejected; more than cfg.max_reject_fraction rejected throws.
MetricEstimate fisher_rao_mc(const ParamFamily& family, std::span<const double> theta,
                             const McConfig& cfg);

/// 4 tr(d_a xi d_b xi) from the family's tangents.
MetricEstimate fisher_rao_analytic(const ParamFamily& family, std::span<const double> theta);

/// Weighted least-squares fit mc = kappa * analytic over all upper-triangular
/// components with positive standard error and non-negligible analytic value.
struct ProportionalityFit {
  double kappa = 0.0;
  double std_error = 0.0;
  double chi2 = 0.0;
  std::size_t dof = 0;
  double max_abs_z = 0.0;
};

ProportionalityFit fit_proportionality(std::span<const MetricEstimate> mc,
                                       std::span<const MetricEstimate> analytic);

/// Per-component z-scores (mc - kappa * analytic) / stderr; NaN where stderr is 0.
RMatrix z_scores(const MetricEstimate& mc, const MetricEstimate& analytic, double kappa);

/// Measures kappa_n on random pure-state families in dimension `dim`
/// (two random generators each), one MC run of cfg.samples per point.
struct KappaCalibration {
  std::size_t dim = 0;
  std::size_t points = 0;
  ProportionalityFit fit;
  std::vector<double> point_ratios;
  std::vector<double> point_ratio_errors;
};

KappaCalibration calibrate_kappa(std::size_t dim, std::size_t points, const McConfig& cfg);

}  // namespace qig
