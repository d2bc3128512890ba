#include "qig/report.hpp"

#include <cmath>

#include "qig/matrix_io.hpp"

namespace qig {

nlohmann::json to_json(const MetricEstimate& m, std::uint64_t seed, double wall_ms) {
  return {{"components", real_matrix_json(m.components)},
          {"stderr", real_matrix_json(m.std_error)},
          {"samples", m.samples},
          {"rejected", m.rejected},
          {"seed", seed},
          {"wall_ms", wall_ms}};
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"var_T", r.var_T},
          {"delta_T2", r.delta_T2},
          {"var_H", r.var_H},
          {"delta_H2", r.delta_H2},
          {"skew_I", r.skew_I},
          {"velocity_sq", r.velocity_sq},
          {"crb_rhs", r.crb_rhs},
          {"crb_rhs_skew", r.crb_rhs_skew},
          {"luo_rhs", r.luo_rhs},
          {"symmetric_lhs_rhs", {r.symmetric_lhs, r.symmetric_rhs}},
          {"curvature_gamma2", r.curvature_gamma2},
          {"third_order_rhs", r.third_order_rhs}};
}

nlohmann::json to_json(const HigherOrderBound& b) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : b.terms) {
    terms.push_back({{"order", t.order}, {"coefficient", t.coefficient}, {"value", t.value}});
  }
  return {{"report", to_json(b.base)},
          {"gradient_norm2", b.gradient_norm2},
          {"terms", terms},
          {"bound_by_order", b.bound_by_order},
          {"odd_order_bound", b.odd_order_bound},
          {"beta_component2", b.beta_component2},
          {"notices", b.notices}};
}

nlohmann::json to_json(const PreimageSet& set, const QubitDensityParams& input) {
  const double r2 = input.a * input.a + input.b * input.b + input.c * input.c;
  const HermitianMatrix rho = input.matrix();
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : set.isolated_points) {
    const HermitianMatrix xi = s3_matrix(p.t, p.x, p.y, p.z);
    points.push_back({{"t", p.t},
                      {"x", p.x},
                      {"y", p.y},
                      {"z", p.z},
                      {"rho_residual", hs_norm(square(xi) - rho)},
                      {"quartic_residual", quartic_residual(p.t, r2)},
                      {"sphere_residual", std::abs(p.norm2() - 0.5)}});
  }
  nlohmann::json continuum = nullptr;
  if (set.continuum) {
    continuum = {{"t", 0.0}, {"radius2", set.continuum->radius2},
                 {"description", "x^2 + y^2 + z^2 = 1/2 at t = 0; every point squares to I/2"}};
  }
  return {{"input", {{"a", input.a}, {"b", input.b}, {"c", input.c}, {"R", std::sqrt(r2)}}},
          {"case", to_string(set.case_tag)},
          {"isolated_points", points},
          {"continuum", continuum}};
}

nlohmann::json to_json(const ProportionalityFit& fit) {
  return {{"kappa", fit.kappa},
          {"stderr", fit.std_error},
          {"chi2", fit.chi2},
          {"dof", fit.dof},
          {"max_abs_z", fit.max_abs_z}};
}

nlohmann::json to_json(const KappaCalibration& cal) {
  return {{"dim", cal.dim},
          {"points", cal.points},
          {"fit", to_json(cal.fit)},
          {"point_ratios", cal.point_ratios},
          {"point_ratio_stderr", cal.point_ratio_errors}};
}

nlohmann::json to_json(const DualCalibration& cal) {
  return {{"dim", cal.dim},
          {"constant", cal.constant},
          {"stderr", cal.std_error},
          {"validation_points", cal.validation_points}};
}

nlohmann::json strip_timing(nlohmann::json j) {
  if (j.is_object()) {
    j.erase("wall_ms");
    for (auto& [key, value] : j.items()) value = strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_timing(value);
  }
  return j;
}

}  // namespace qig
