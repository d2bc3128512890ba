#include "qig/bloch2x2.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <ostream>

#include <fmt/core.h>

namespace qig {

namespace {

constexpr double kSphereTol = 1e-12;
constexpr double kRadiusTol = 1e-12;

// cos/sin of k*pi/(2q), k = 0..2q, built so that the table is exactly
// symmetric: cos(pi - a) = -cos(a), sin(pi - a) = sin(a), and
// cos(pi/2 - a) = sin(a).
struct HalfTurnTable {
  std::vector<double> cos, sin;
};

HalfTurnTable half_turn_table(int q) {
  HalfTurnTable tab;
  const int n = 2 * q;
  tab.cos.resize(n + 1);
  tab.sin.resize(n + 1);
  const int quarter = q / 2;  // angles up to pi/4 when q is even
  for (int k = 0; k <= n; ++k) {
    int r = k <= q ? k : n - k;  // reflect into [0, pi/2]
    double c = 0.0, s = 0.0;
    if (q % 2 == 0 && r > quarter) {
      const double a = std::numbers::pi * (q - r) / (2.0 * q);
      c = std::sin(a);
      s = std::cos(a);
    } else {
      const double a = std::numbers::pi * r / (2.0 * q);
      c = std::cos(a);
      s = std::sin(a);
    }
    if (r == q) c = 0.0;
    if (r == 0) s = 0.0;
    tab.cos[k] = k <= q ? c : -c;
    tab.sin[k] = s;
  }
  return tab;
}

std::array<long long, 3> grid_key(const QubitDensityParams& q) {
  constexpr double kGrid = 1e9;
  return {std::llround(q.a * kGrid), std::llround(q.b * kGrid), std::llround(q.c * kGrid)};
}

}  // namespace

S3Point S3Point::make(double t, double x, double y, double z) {
  const S3Point p{t, x, y, z};
  if (std::abs(p.norm2() - 0.5) > kSphereTol) {
    throw InvalidInput(
        fmt::format("point is off the trace sphere: t^2+x^2+y^2+z^2 = {:.17g}", p.norm2()));
  }
  return p;
}

QubitDensityParams QubitDensityParams::make(double a, double b, double c) {
  const QubitDensityParams q{a, b, c};
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw InvalidInput("density parameters must be finite");
  }
  if (q.radius() > 0.5 + kRadiusTol) {
    throw InvalidInput(fmt::format("invalid density: R = {:.17g} exceeds 1/2", q.radius()));
  }
  return q;
}

double QubitDensityParams::radius() const { return std::sqrt(a * a + b * b + c * c); }

HermitianMatrix QubitDensityParams::matrix() const {
  CMatrix m(2, 2);
  m << Complex(0.5 + a, 0.0), Complex(b, -c), Complex(b, c), Complex(0.5 - a, 0.0);
  return HermitianMatrix(m);
}

std::string to_string(QubitCase c) {
  switch (c) {
    case QubitCase::fully_mixed:
      return "fully_mixed";
    case QubitCase::pure:
      return "pure";
    case QubitCase::generic:
      return "generic";
  }
  return "unknown";
}

HermitianMatrix s3_matrix(double t, double x, double y, double z) {
  CMatrix m(2, 2);
  m << Complex(t + z, 0.0), Complex(x, -y), Complex(x, y), Complex(t - z, 0.0);
  return HermitianMatrix(m);
}

SqrtState xi_from_s3(const S3Point& p) { return SqrtState::from(s3_matrix(p.t, p.x, p.y, p.z)); }

QubitDensityParams rho_from_s3(const S3Point& p) {
  return {2.0 * p.t * p.z, 2.0 * p.t * p.x, 2.0 * p.t * p.y};
}

QubitCase classify(const QubitDensityParams& q) {
  const double r = q.radius();
  if (r < kCaseBand) return QubitCase::fully_mixed;
  if (std::abs(r - 0.5) < kCaseBand) return QubitCase::pure;
  return QubitCase::generic;
}

double quartic_residual(double t, double radius2) {
  const double t2 = t * t;
  return std::abs(4.0 * t2 * t2 - 2.0 * t2 + radius2);
}

PreimageSet sqrt_preimages(const QubitDensityParams& in) {
  const QubitDensityParams q = QubitDensityParams::make(in.a, in.b, in.c);
  const double r2 = q.a * q.a + q.b * q.b + q.c * q.c;
  auto point_at = [&](double t) { return S3Point{t, q.b / (2.0 * t), q.c / (2.0 * t), q.a / (2.0 * t)}; };

  PreimageSet out;
  out.case_tag = classify(q);
  switch (out.case_tag) {
    case QubitCase::fully_mixed: {
      // t = +-1/sqrt(2) isolated; the double root t = 0 is the equatorial S^2.
      const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * r2));
      const double t_big = std::sqrt((1.0 + disc) / 4.0);
      const S3Point p = point_at(t_big);
      out.isolated_points = {p, -p};
      out.continuum = EquatorContinuum{};
      break;
    }
    case QubitCase::pure: {
      // The two positive roots merge at t = 1/2.
      const S3Point p{0.5, q.b, q.c, q.a};
      out.isolated_points = {p, -p};
      break;
    }
    case QubitCase::generic: {
      const double disc = std::sqrt(1.0 - 4.0 * r2);
      const double t_big = std::sqrt((1.0 + disc) / 4.0);
      // t_big^2 t_small^2 = R^2/4 avoids cancellation in (1 - disc).
      const double t_small = std::sqrt(r2) / (2.0 * t_big);
      const S3Point p = point_at(t_big);
      const S3Point s = point_at(t_small);
      out.isolated_points = {p, -p, s, -s};
      break;
    }
  }
  return out;
}

std::vector<MeshRow> figure1_mesh(int resolution) {
  if (resolution < 8) {
    throw InvalidInput(fmt::format("mesh resolution must be >= 8 (got {})", resolution));
  }
  // Latitude angle psi in [0, pi] with t = cos(psi)/sqrt(2): 4m steps put
  // t = +-1/2 (psi = pi/4, 3pi/4) and t = 0 on the grid.
  const int m = (resolution + 3) / 4;
  const HalfTurnTable lat = half_turn_table(2 * m);
  // S^2 directions: polar angle j*pi/L, azimuth l*pi/L.
  const int big_l = resolution / 2;
  // Angle l*pi/L is entry 2l of this table; the second azimuthal half turn is the negation.
  const HalfTurnTable ang = half_turn_table(big_l);

  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const int bands = 4 * m + 1;

  auto band_rows = [&](int k) {
    std::vector<MeshRow> rows;
    const double t = lat.cos[static_cast<std::size_t>(k)] * inv_sqrt2;
    const double r = lat.sin[static_cast<std::size_t>(k)] * inv_sqrt2;
    auto push = [&](double dx, double dy, double dz) {
      MeshRow row;
      row.point = {t, r * dx, r * dy, r * dz};
      const QubitDensityParams q = rho_from_s3(row.point);
      row.radius = q.radius();
      row.case_tag = classify(q);
      rows.push_back(std::move(row));
    };
    if (k == 0 || k == bands - 1) {
      push(0.0, 0.0, 1.0);
      return rows;
    }
    push(0.0, 0.0, 1.0);
    for (int j = 1; j < big_l; ++j) {
      const double st = ang.sin[static_cast<std::size_t>(2 * j)];
      const double ct = ang.cos[static_cast<std::size_t>(2 * j)];
      for (int l = 0; l < 2 * big_l; ++l) {
        const bool second_half = l >= big_l;
        const auto li = static_cast<std::size_t>(2 * (second_half ? l - big_l : l));
        const double cp = second_half ? -ang.cos[li] : ang.cos[li];
        const double sp = second_half ? -ang.sin[li] : ang.sin[li];
        push(st * cp, st * sp, ct);
      }
    }
    push(0.0, 0.0, -1.0);
    return rows;
  };

  std::vector<std::future<std::vector<MeshRow>>> futures;
  futures.reserve(static_cast<std::size_t>(bands));
  for (int k = 0; k < bands; ++k) futures.push_back(std::async(std::launch::async, band_rows, k));
  std::vector<MeshRow> rows;
  for (auto& f : futures) {
    auto part = f.get();
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }

  std::map<std::array<long long, 3>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < rows.size(); ++i) groups[grid_key(rho_from_s3(rows[i].point))].push_back(i);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j : groups[grid_key(rho_from_s3(rows[i].point))]) {
      if (j != i) rows[i].partners.push_back(j);
    }
  }
  return rows;
}

void write_mesh_csv(std::ostream& out, const std::vector<MeshRow>& rows) {
  out << "t,x,y,z,R,case,partners\n";
  for (const auto& row : rows) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},", row.point.t, row.point.x,
                       row.point.y, row.point.z, row.radius, to_string(row.case_tag));
    for (std::size_t i = 0; i < row.partners.size(); ++i) {
      if (i) out << ';';
      out << row.partners[i];
    }
    out << '\n';
  }
}

void write_mesh_csv(const std::filesystem::path& path, const std::vector<MeshRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  write_mesh_csv(out, rows);
  if (!out) throw std::runtime_error(fmt::format("write to {} failed", path.string()));
}

}  // namespace qig
