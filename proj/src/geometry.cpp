#include "qig/geometry.hpp"

#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "qig/random.hpp"

namespace qig {

namespace {

constexpr double kTracelessTol = 1e-10;
constexpr std::size_t kMinGibbonsSamples = 1000;

void require_traceless(const HermitianMatrix& a, const char* what) {
  if (std::abs(a.trace()) > kTracelessTol) {
    throw InvalidInput(fmt::format("{}: observable must be traceless (tr A = {:.3e})", what,
                                   a.trace()));
  }
}

// Haar-random unit vector; phase is irrelevant for quadratic forms.
void draw_haar(Rng& rng, CVector& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = rng.complex_normal();
  x /= x.norm();
}

double quad(const CMatrix& m, const CVector& x) { return x.dot(m * x).real(); }

std::size_t n_upper(std::size_t d) { return d * (d + 1) / 2; }

}  // namespace

double density_on_pure(const PureState& x, const DensityMatrix& rho) {
  require_same_dim(x.dim(), rho.dim(), "density_on_pure");
  return static_cast<double>(rho.dim()) * x.expectation(rho.hermitian());
}

Estimate density_normalization(const DensityMatrix& rho, const McConfig& cfg) {
  const auto n = static_cast<Eigen::Index>(rho.dim());
  const CMatrix& m = rho.matrix();
  const double dn = static_cast<double>(n);
  const BatchMeans bm = run_batches(cfg, 1, [&](Rng& rng, std::span<double> out) {
    CVector x(n);
    draw_haar(rng, x);
    out[0] = dn * quad(m, x);
    return true;
  });
  return {bm.mean[0], bm.std_error[0]};
}

Estimate haar_moment(const HermitianMatrix& a, const HermitianMatrix& b, const McConfig& cfg) {
  require_same_dim(a.dim(), b.dim(), "haar_moment");
  const auto n = static_cast<Eigen::Index>(a.dim());
  const BatchMeans bm = run_batches(cfg, 1, [&](Rng& rng, std::span<double> out) {
    CVector x(n);
    draw_haar(rng, x);
    out[0] = quad(a.matrix(), x) * quad(b.matrix(), x);
    return true;
  });
  return {bm.mean[0], bm.std_error[0]};
}

Estimate gibbons_expectation(const HermitianMatrix& a, const DensityMatrix& rho,
                             const McConfig& cfg) {
  require_same_dim(a.dim(), rho.dim(), "gibbons_expectation");
  require_traceless(a, "gibbons_expectation");
  if (cfg.samples < kMinGibbonsSamples) {
    throw InvalidInput(fmt::format("gibbons_expectation needs at least {} samples (got {})",
                                   kMinGibbonsSamples, cfg.samples));
  }
  const auto n = static_cast<Eigen::Index>(a.dim());
  const double dn = static_cast<double>(n);
  // E_Haar[<x|A|x> n<x|rho|x>] = tr(A rho) / (n + 1) for traceless A.
  const double calibration = dn + 1.0;
  const BatchMeans bm = run_batches(cfg, 1, [&](Rng& rng, std::span<double> out) {
    CVector x(n);
    draw_haar(rng, x);
    out[0] = calibration * quad(a.matrix(), x) * dn * quad(rho.matrix(), x);
    return true;
  });
  return {bm.mean[0], bm.std_error[0]};
}

Estimate dual_expectation_raw(const HermitianMatrix& a, const PureState& x, const McConfig& cfg) {
  require_same_dim(a.dim(), x.dim(), "dual_expectation");
  require_traceless(a, "dual_expectation");
  const std::size_t dim = a.dim();
  const CVector& v = x.amplitudes();
  const BatchMeans bm = run_batches(cfg, 1, [&](Rng& rng, std::span<double> out) {
    const CMatrix g = random_ginibre(dim, rng);
    const CMatrix w = g * g.adjoint();
    const double norm = w.trace().real();
    // tr(A W) without forming the product.
    const double tr_aw = (a.matrix().array() * w.array().transpose()).sum().real();
    out[0] = (tr_aw / norm) * (quad(w, v) / norm);
    return true;
  });
  return {bm.mean[0], bm.std_error[0]};
}

DualCalibration calibrate_dual(std::size_t dim, std::size_t validation_points,
                               const McConfig& cfg) {
  if (validation_points == 0) throw InvalidInput("calibration needs validation points");
  Rng rng = Rng::stream(cfg.seed, 0xCA1Bu);
  double swt = 0.0, stt = 0.0;
  for (std::size_t k = 0; k < validation_points; ++k) {
    HermitianMatrix a = random_hermitian(dim, rng);
    a -= HermitianMatrix::identity(dim) * (a.trace() / static_cast<double>(dim));
    const PureState x = random_pure(dim, rng);
    McConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, k);
    const Estimate raw = dual_expectation_raw(a, x, sub);
    const double target = x.expectation(a);
    const double w = 1.0 / (raw.std_error * raw.std_error);
    swt += w * raw.value * target;
    stt += w * target * target;
  }
  // raw = s * target  =>  c = 1/s.
  const double s = swt / stt;
  const double s_err = 1.0 / std::sqrt(stt);
  return {dim, 1.0 / s, s_err / (s * s), validation_points};
}

Estimate dual_expectation(const HermitianMatrix& a, const PureState& x, const McConfig& cfg,
                          const DualCalibration& calibration) {
  if (calibration.dim != a.dim()) {
    throw InvalidInput(fmt::format("dual calibration is for dim {}, observable has dim {}",
                                   calibration.dim, a.dim()));
  }
  const Estimate raw = dual_expectation_raw(a, x, cfg);
  return {calibration.constant * raw.value, std::abs(calibration.constant) * raw.std_error};
}

MetricEstimate fisher_rao_mc(const ParamFamily& family, std::span<const double> theta,
                             const McConfig& cfg) {
  const std::size_t d = family.param_dim();
  const DensityMatrix rho = family.at(theta).squared();
  const auto n = static_cast<Eigen::Index>(rho.dim());
  const double dn = static_cast<double>(n);

  // d rho / d theta_a by central differences; p is linear in rho, so this is
  // the central difference of p itself.
  std::vector<CMatrix> drho;
  std::vector<double> shifted(theta.begin(), theta.end());
  for (std::size_t a = 0; a < d; ++a) {
    const double h = family.step() * std::max(1.0, std::abs(theta[a]));
    const double up = theta[a] + h, down = theta[a] - h;
    if (up == theta[a] || down == theta[a]) {
      throw NumericalError(fmt::format("finite-difference step underflow at parameter {}", a));
    }
    shifted[a] = up;
    const CMatrix plus = square(family.at(shifted).hermitian()).matrix();
    shifted[a] = down;
    const CMatrix minus = square(family.at(shifted).hermitian()).matrix();
    shifted[a] = theta[a];
    drho.push_back((plus - minus) / (up - down));
  }

  constexpr double kTinyDensity = 1e-14;
  const std::size_t width = n_upper(d);
  const BatchMeans bm = run_batches(cfg, width, [&](Rng& rng, std::span<double> out) {
    CVector x(n);
    draw_haar(rng, x);
    const double p = dn * quad(rho.matrix(), x);
    double score[16];
    std::vector<double> big;
    double* dp = score;
    if (d > 16) {
      big.resize(d);
      dp = big.data();
    }
    double max_dp = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      dp[a] = dn * quad(drho[a], x);
      max_dp = std::max(max_dp, std::abs(dp[a]));
    }
    if (p <= kTinyDensity) return max_dp <= kTinyDensity;
    std::size_t k = 0;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) out[k++] = dp[a] * dp[b] / p;
    return true;
  });

  MetricEstimate est;
  const auto di = static_cast<Eigen::Index>(d);
  est.components = RMatrix::Zero(di, di);
  est.std_error = RMatrix::Zero(di, di);
  std::size_t k = 0;
  for (Eigen::Index a = 0; a < di; ++a) {
    for (Eigen::Index b = a; b < di; ++b, ++k) {
      est.components(a, b) = est.components(b, a) = bm.mean[k];
      est.std_error(a, b) = est.std_error(b, a) = bm.std_error[k];
    }
  }
  est.samples = bm.samples;
  est.rejected = bm.rejected;
  return est;
}

MetricEstimate fisher_rao_analytic(const ParamFamily& family, std::span<const double> theta) {
  const std::vector<HermitianMatrix> tang = family.tangents(theta);
  const auto d = static_cast<Eigen::Index>(tang.size());
  MetricEstimate est;
  est.components = RMatrix::Zero(d, d);
  est.std_error = RMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a; b < d; ++b) {
      est.components(a, b) = est.components(b, a) =
          4.0 * hs_inner(tang[static_cast<std::size_t>(a)], tang[static_cast<std::size_t>(b)]);
    }
  }
  return est;
}

ProportionalityFit fit_proportionality(std::span<const MetricEstimate> mc,
                                       std::span<const MetricEstimate> analytic) {
  if (mc.size() != analytic.size() || mc.empty()) {
    throw InvalidInput("proportionality fit needs matching, non-empty metric lists");
  }
  constexpr double kNegligible = 1e-9;
  struct Point {
    double m, a, w;
  };
  std::vector<Point> pts;
  for (std::size_t i = 0; i < mc.size(); ++i) {
    const RMatrix& m = mc[i].components;
    const RMatrix& a = analytic[i].components;
    if (m.rows() != a.rows()) throw InvalidInput("metric shape mismatch in proportionality fit");
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = r; c < m.cols(); ++c) {
        const double se = mc[i].std_error(r, c);
        if (se > 0.0 && std::abs(a(r, c)) > kNegligible) pts.push_back({m(r, c), a(r, c), 1.0 / (se * se)});
      }
    }
  }
  if (pts.empty()) throw InvalidInput("no usable components for proportionality fit");
  double sma = 0.0, saa = 0.0;
  for (const auto& p : pts) {
    sma += p.w * p.m * p.a;
    saa += p.w * p.a * p.a;
  }
  ProportionalityFit fit;
  fit.kappa = sma / saa;
  fit.std_error = 1.0 / std::sqrt(saa);
  for (const auto& p : pts) {
    const double z = (p.m - fit.kappa * p.a) * std::sqrt(p.w);
    fit.chi2 += z * z;
    fit.max_abs_z = std::max(fit.max_abs_z, std::abs(z));
  }
  fit.dof = pts.size() - 1;
  return fit;
}

RMatrix z_scores(const MetricEstimate& mc, const MetricEstimate& analytic, double kappa) {
  RMatrix z(mc.components.rows(), mc.components.cols());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      const double se = mc.std_error(r, c);
      z(r, c) = se > 0.0 ? (mc.components(r, c) - kappa * analytic.components(r, c)) / se
                         : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return z;
}

KappaCalibration calibrate_kappa(std::size_t dim, std::size_t points, const McConfig& cfg) {
  if (points == 0) throw InvalidInput("kappa calibration needs at least one point");
  Rng rng = Rng::stream(cfg.seed, 0x4B41u);
  std::vector<MetricEstimate> mc, an;
  KappaCalibration out;
  out.dim = dim;
  out.points = points;
  const std::vector<double> origin{0.0, 0.0};
  for (std::size_t k = 0; k < points; ++k) {
    const PureState psi = random_pure(dim, rng);
    std::vector<HermitianMatrix> gens{random_hermitian(dim, rng), random_hermitian(dim, rng)};
    const ParamFamily fam = unitary_orbit_family(SqrtState::from(psi.projector()), gens);
    McConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, k);
    mc.push_back(fisher_rao_mc(fam, origin, sub));
    an.push_back(fisher_rao_analytic(fam, origin));
    const ProportionalityFit one = fit_proportionality(std::span(&mc.back(), 1), std::span(&an.back(), 1));
    out.point_ratios.push_back(one.kappa);
    out.point_ratio_errors.push_back(one.std_error);
  }
  out.fit = fit_proportionality(mc, an);
  return out;
}

}  // namespace qig
