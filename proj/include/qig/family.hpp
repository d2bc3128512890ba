#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qig/hermitian.hpp"

namespace qig {

enum class DerivativeMode { exact, finite_difference };

/// Differentiable map theta -> xi(theta) into the square-root sphere.
///
/// Families either carry exact tangents (d xi / d theta_a) or fall back to
/// central differences with step h * max(1, |theta_a|).
class ParamFamily {
 public:
  using Evaluator = std::function<SqrtState(std::span<const double>)>;
  using Tangents = std::function<std::vector<HermitianMatrix>(std::span<const double>)>;

  static constexpr double kDefaultStep = 1e-5;

  /// Finite-difference family.
  ParamFamily(std::size_t param_dim, Evaluator eval, double step = kDefaultStep);
  /// Exact-derivative family.
  ParamFamily(std::size_t param_dim, Evaluator eval, Tangents tangents);

  std::size_t param_dim() const { return param_dim_; }
  DerivativeMode mode() const { return tangents_ ? DerivativeMode::exact : DerivativeMode::finite_difference; }
  double step() const { return step_; }

  SqrtState at(std::span<const double> theta) const;
  std::vector<HermitianMatrix> tangents(std::span<const double> theta) const;

  /// theta = map(theta'); tangents follow the chain rule with the supplied
  /// Jacobian J[a][b] = d theta_a / d theta'_b (param_dim x new_dim).
  ParamFamily reparameterized(
      std::size_t new_dim, std::function<std::vector<double>(std::span<const double>)> map,
      std::function<RMatrix(std::span<const double>)> jacobian) const;

  /// U xi(theta) U^dagger
  ParamFamily conjugated(const CMatrix& u) const;

 private:
  void check_theta(std::span<const double> theta) const;

  std::size_t param_dim_;
  Evaluator eval_;
  Tangents tangents_;
  double step_ = kDefaultStep;
};

/// Pure qubit on the t = 1/2 sheet: (theta, phi) -> Bloch angles.
ParamFamily qubit_pure_family();
/// Mixed qubit (u, theta, phi) with t = sqrt(1/2 - u^2), (x,y,z) = u * n(theta, phi).
ParamFamily qubit_mixed_family();
/// One-parameter unitary curve xi_t = exp(-iHt) xi0 exp(iHt), exact tangents.
ParamFamily unitary_curve_family(const SqrtState& xi0, const HermitianMatrix& h);
/// theta -> exp(-i sum_a theta_a H_a) xi0 exp(i sum_a theta_a H_a); finite differences.
ParamFamily unitary_orbit_family(const SqrtState& xi0, std::vector<HermitianMatrix> generators);
/// xi(theta) = xi0 for every theta.
ParamFamily constant_family(const SqrtState& xi0, std::size_t param_dim);

}  // namespace qig
