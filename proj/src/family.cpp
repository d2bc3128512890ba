#include "qig/family.hpp"

#include <cmath>

#include <fmt/core.h>

#include "qig/bloch2x2.hpp"

namespace qig {

ParamFamily::ParamFamily(std::size_t param_dim, Evaluator eval, double step)
    : param_dim_(param_dim), eval_(std::move(eval)), step_(step) {
  if (param_dim_ == 0) throw InvalidInput("family needs at least one parameter");
  if (!(step_ > 0.0)) throw InvalidInput("finite-difference step must be positive");
}

ParamFamily::ParamFamily(std::size_t param_dim, Evaluator eval, Tangents tangents)
    : param_dim_(param_dim), eval_(std::move(eval)), tangents_(std::move(tangents)) {
  if (param_dim_ == 0) throw InvalidInput("family needs at least one parameter");
}

void ParamFamily::check_theta(std::span<const double> theta) const {
  if (theta.size() != param_dim_) {
    throw InvalidInput(
        fmt::format("family expects {} parameters, got {}", param_dim_, theta.size()));
  }
}

SqrtState ParamFamily::at(std::span<const double> theta) const {
  check_theta(theta);
  return eval_(theta);
}

std::vector<HermitianMatrix> ParamFamily::tangents(std::span<const double> theta) const {
  check_theta(theta);
  if (tangents_) return tangents_(theta);

  std::vector<HermitianMatrix> out;
  out.reserve(param_dim_);
  std::vector<double> shifted(theta.begin(), theta.end());
  for (std::size_t a = 0; a < param_dim_; ++a) {
    const double h = step_ * std::max(1.0, std::abs(theta[a]));
    const double up = theta[a] + h;
    const double down = theta[a] - h;
    if (up == theta[a] || down == theta[a]) {
      throw NumericalError(
          fmt::format("finite-difference step underflow at parameter {} (theta = {})", a, theta[a]));
    }
    shifted[a] = up;
    const HermitianMatrix plus = eval_(shifted).hermitian();
    shifted[a] = down;
    const HermitianMatrix minus = eval_(shifted).hermitian();
    shifted[a] = theta[a];
    out.push_back((plus - minus) * (1.0 / (up - down)));
  }
  return out;
}

ParamFamily ParamFamily::reparameterized(
    std::size_t new_dim, std::function<std::vector<double>(std::span<const double>)> map,
    std::function<RMatrix(std::span<const double>)> jacobian) const {
  auto self = *this;
  Evaluator eval = [self, map](std::span<const double> th) { return self.at(map(th)); };
  if (mode() == DerivativeMode::finite_difference) return ParamFamily(new_dim, eval, step_);

  Tangents tang = [self, map, jacobian, new_dim](std::span<const double> th) {
    const std::vector<HermitianMatrix> inner = self.tangents(map(th));
    const RMatrix jac = jacobian(th);
    std::vector<HermitianMatrix> out;
    out.reserve(new_dim);
    for (std::size_t b = 0; b < new_dim; ++b) {
      HermitianMatrix acc = HermitianMatrix::zero(inner.front().dim());
      for (std::size_t a = 0; a < inner.size(); ++a) {
        acc += inner[a] * jac(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
      out.push_back(std::move(acc));
    }
    return out;
  };
  return ParamFamily(new_dim, eval, tang);
}

ParamFamily ParamFamily::conjugated(const CMatrix& u) const {
  auto self = *this;
  Evaluator eval = [self, u](std::span<const double> th) {
    return SqrtState::from(conjugate(u, self.at(th).hermitian()));
  };
  if (mode() == DerivativeMode::finite_difference) return ParamFamily(param_dim_, eval, step_);
  Tangents tang = [self, u](std::span<const double> th) {
    std::vector<HermitianMatrix> out = self.tangents(th);
    for (auto& d : out) d = conjugate(u, d);
    return out;
  };
  return ParamFamily(param_dim_, eval, tang);
}

ParamFamily qubit_pure_family() {
  auto eval = [](std::span<const double> p) {
    const double th = p[0], ph = p[1];
    return SqrtState::from(s3_matrix(0.5, 0.5 * std::sin(th) * std::cos(ph),
                                     0.5 * std::sin(th) * std::sin(ph), 0.5 * std::cos(th)));
  };
  auto tang = [](std::span<const double> p) {
    const double th = p[0], ph = p[1];
    return std::vector<HermitianMatrix>{
        s3_matrix(0.0, 0.5 * std::cos(th) * std::cos(ph), 0.5 * std::cos(th) * std::sin(ph),
                  -0.5 * std::sin(th)),
        s3_matrix(0.0, -0.5 * std::sin(th) * std::sin(ph), 0.5 * std::sin(th) * std::cos(ph), 0.0)};
  };
  return ParamFamily(2, eval, tang);
}

ParamFamily qubit_mixed_family() {
  auto eval = [](std::span<const double> p) {
    const double u = p[0], th = p[1], ph = p[2];
    if (!(u * u < 0.5)) throw InvalidInput("qubit-mixed family requires u^2 < 1/2");
    const double t = std::sqrt(0.5 - u * u);
    return SqrtState::from(s3_matrix(t, u * std::sin(th) * std::cos(ph),
                                     u * std::sin(th) * std::sin(ph), u * std::cos(th)));
  };
  auto tang = [](std::span<const double> p) {
    const double u = p[0], th = p[1], ph = p[2];
    if (!(u * u < 0.5)) throw InvalidInput("qubit-mixed family requires u^2 < 1/2");
    const double t = std::sqrt(0.5 - u * u);
    const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
    return std::vector<HermitianMatrix>{s3_matrix(-u / t, st * cp, st * sp, ct),
                                        s3_matrix(0.0, u * ct * cp, u * ct * sp, -u * st),
                                        s3_matrix(0.0, -u * st * sp, u * st * cp, 0.0)};
  };
  return ParamFamily(3, eval, tang);
}

ParamFamily unitary_curve_family(const SqrtState& xi0, const HermitianMatrix& h) {
  require_same_dim(xi0.dim(), h.dim(), "unitary_curve_family");
  auto eval = [xi0, h](std::span<const double> p) { return unitary_evolve(xi0, h, p[0]); };
  auto tang = [xi0, h](std::span<const double> p) {
    return std::vector<HermitianMatrix>{
        derivatives_unitary(unitary_evolve(xi0, h, p[0]).hermitian(), h, 1)};
  };
  return ParamFamily(1, eval, tang);
}

ParamFamily unitary_orbit_family(const SqrtState& xi0, std::vector<HermitianMatrix> generators) {
  if (generators.empty()) throw InvalidInput("unitary orbit needs at least one generator");
  for (const auto& g : generators) require_same_dim(xi0.dim(), g.dim(), "unitary_orbit_family");
  const std::size_t k = generators.size();
  auto eval = [xi0, gens = std::move(generators)](std::span<const double> p) {
    HermitianMatrix sum = HermitianMatrix::zero(xi0.dim());
    for (std::size_t a = 0; a < gens.size(); ++a) sum += gens[a] * p[a];
    return unitary_evolve(xi0, sum, 1.0);
  };
  return ParamFamily(k, eval);
}

ParamFamily constant_family(const SqrtState& xi0, std::size_t param_dim) {
  auto eval = [xi0](std::span<const double>) { return xi0; };
  auto tang = [xi0, param_dim](std::span<const double>) {
    return std::vector<HermitianMatrix>(param_dim, HermitianMatrix::zero(xi0.dim()));
  };
  return ParamFamily(param_dim, eval, tang);
}

}  // namespace qig
