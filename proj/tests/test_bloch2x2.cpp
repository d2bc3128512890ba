#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qig/bloch2x2.hpp"
#include "qig/random.hpp"

using namespace qig;
using oracle::M;

namespace {

double dist(const S3Point& p, const S3Point& q) {
  return std::sqrt((p.t - q.t) * (p.t - q.t) + (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) +
                   (p.z - q.z) * (p.z - q.z));
}

bool contains(const std::vector<S3Point>& pts, const S3Point& p, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const S3Point& q) { return dist(p, q) <= tol; });
}

S3Point random_s3(Rng& rng) {
  Eigen::Vector4d v;
  for (int i = 0; i < 4; ++i) v(i) = rng.normal();
  v *= std::sqrt(0.5) / v.norm();
  return {v(0), v(1), v(2), v(3)};
}

QubitDensityParams random_params(Rng& rng) {
  Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
  v *= 0.5 * std::cbrt(rng.uniform()) / v.norm();
  return {v(0), v(1), v(2)};
}

double square_residual(const S3Point& p, const QubitDensityParams& q) {
  const M xi = s3_matrix(p.t, p.x, p.y, p.z).matrix();
  return oracle::hs_dist(xi * xi, q.matrix().matrix());
}

}  // namespace

TEST_CASE("xi_from_s3 examples") {
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(oracle::hs_dist(xi_from_s3(S3Point::make(r, 0, 0, 0)).matrix(), M::Identity(2, 2) * r) < 1e-15);

  M pure = M::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(oracle::hs_dist(xi_from_s3(S3Point::make(0.5, 0, 0, 0.5)).matrix(), pure) < 1e-15);

  const M sx = xi_from_s3(S3Point::make(0, r, 0, 0)).matrix();
  CHECK(oracle::hs_dist(sx, oracle::sigma_x() * r) < 1e-15);
  CHECK(oracle::hs_dist(sx * sx, M::Identity(2, 2) / 2.0) < 1e-15);

  CHECK_THROWS_AS(S3Point::make(1, 0, 0, 0), InvalidInput);
}

TEST_CASE("rho_from_s3 examples") {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const S3Point p = random_s3(rng);
    const QubitDensityParams a = rho_from_s3(p), b = rho_from_s3(-p);
    CHECK(a.a == b.a);
    CHECK(a.b == b.b);
    CHECK(a.c == b.c);
    // (a, b, c) reproduces xi^2.
    CHECK(square_residual(p, a) < 1e-14);

    S3Point eq = p;
    eq.t = 0.0;
    const QubitDensityParams z = rho_from_s3(eq);
    CHECK(z.radius() == 0.0);
  }
  const QubitDensityParams q = rho_from_s3(S3Point::make(0.5, 0, 0, 0.5));
  CHECK(q.a == doctest::Approx(0.5));
  CHECK(q.b == 0.0);
  CHECK(q.c == 0.0);
}

TEST_CASE("density parameter validation and classification") {
  CHECK_THROWS_AS(QubitDensityParams::make(0.4, 0.4, 0.0), InvalidInput);
  CHECK_THROWS_AS(QubitDensityParams::make(NAN, 0.0, 0.0), InvalidInput);
  CHECK_NOTHROW(QubitDensityParams::make(0.5, 0.0, 0.0));
  CHECK(classify({0, 0, 0}) == QubitCase::fully_mixed);
  CHECK(classify({0.5, 0, 0}) == QubitCase::pure);
  CHECK(classify({0.3, 0, 0}) == QubitCase::generic);
  CHECK(classify({0.5 - 1e-10, 0, 0}) == QubitCase::pure);
  CHECK(classify({1e-10, 0, 0}) == QubitCase::fully_mixed);
}

TEST_CASE("preimages: fully mixed") {
  const PreimageSet s = sqrt_preimages({0, 0, 0});
  CHECK(s.case_tag == QubitCase::fully_mixed);
  REQUIRE(s.isolated_points.size() == 2);
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK(contains(s.isolated_points, {r, 0, 0, 0}, 1e-15));
  CHECK(contains(s.isolated_points, {-r, 0, 0, 0}, 1e-15));
  REQUIRE(s.continuum.has_value());
  CHECK(s.continuum->radius2 == 0.5);
  // t = 0 is the double root of 4t^4 - 2t^2.
  CHECK(quartic_residual(0.0, 0.0) == 0.0);
}

TEST_CASE("preimages: pure") {
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
    v *= 0.5 / v.norm();
    const QubitDensityParams q{v(0), v(1), v(2)};
    const PreimageSet s = sqrt_preimages(q);
    CHECK(s.case_tag == QubitCase::pure);
    CHECK_FALSE(s.continuum.has_value());
    REQUIRE(s.isolated_points.size() == 2);
    const S3Point expected{0.5, q.b, q.c, q.a};
    CHECK(contains(s.isolated_points, expected, 1e-15));
    CHECK(contains(s.isolated_points, -expected, 1e-15));
    for (const auto& p : s.isolated_points) CHECK(square_residual(p, q) < 1e-12);
  }
}

TEST_CASE("preimages: generic quarter radius") {
  const QubitDensityParams q{0.25, 0, 0};
  const PreimageSet s = sqrt_preimages(q);
  CHECK(s.case_tag == QubitCase::generic);
  REQUIRE(s.isolated_points.size() == 4);
  // Oracle: roots of 4 s^2 - 2 s + 1/16 = 0 in s = t^2.
  const double big = std::sqrt((1.0 + std::sqrt(3.0) / 2.0) / 4.0);
  const double small = std::sqrt((1.0 - std::sqrt(3.0) / 2.0) / 4.0);
  std::vector<double> ts;
  for (const auto& p : s.isolated_points) {
    ts.push_back(p.t);
    CHECK(quartic_residual(p.t, 0.0625) <= 1e-12);
    CHECK(square_residual(p, q) <= 1e-10);
  }
  std::sort(ts.begin(), ts.end());
  CHECK(ts[0] == doctest::Approx(-big).epsilon(1e-14));
  CHECK(ts[1] == doctest::Approx(-small).epsilon(1e-14));
  CHECK(ts[2] == doctest::Approx(small).epsilon(1e-14));
  CHECK(ts[3] == doctest::Approx(big).epsilon(1e-14));
}

TEST_CASE("preimage properties on random inputs") {
  Rng rng(17);
  for (int k = 0; k < 10000; ++k) {
    const QubitDensityParams q = random_params(rng);
    const PreimageSet s = sqrt_preimages(q);
    const double r2 = q.a * q.a + q.b * q.b + q.c * q.c;
    for (const auto& p : s.isolated_points) {
      CHECK(quartic_residual(p.t, r2) <= 1e-12);
      CHECK(std::abs(p.norm2() - 0.5) <= 1e-12);
      // Antipodal closure.
      CHECK(contains(s.isolated_points, -p, 0.0));
    }
    if (s.case_tag == QubitCase::generic) CHECK(s.isolated_points.size() == 4);
  }
}

TEST_CASE("cover consistency") {
  Rng rng(19);
  int checked = 0;
  while (checked < 10000) {
    const S3Point p = random_s3(rng);
    if (std::abs(p.t) <= 1e-3) continue;
    const QubitDensityParams q = rho_from_s3(p);
    if (classify(q) == QubitCase::fully_mixed) continue;
    CHECK(contains(sqrt_preimages(q).isolated_points, p, 1e-9));
    ++checked;
  }
}

TEST_CASE("exactly one preimage is the principal root") {
  Rng rng(23);
  for (int k = 0; k < 2000; ++k) {
    const QubitDensityParams q = random_params(rng);
    if (classify(q) == QubitCase::fully_mixed) continue;
    const M principal = principal_sqrt(DensityMatrix::from(q.matrix())).matrix();
    int matches = 0;
    for (const auto& p : sqrt_preimages(q).isolated_points) {
      if (oracle::hs_dist(s3_matrix(p.t, p.x, p.y, p.z).matrix(), principal) <= 1e-9) ++matches;
    }
    CHECK(matches == 1);
  }
}

TEST_CASE("covering mesh") {
  const auto rows = figure1_mesh(16);
  REQUIRE(!rows.empty());
  std::size_t pure_rows = 0, equator_rows = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    CHECK(std::abs(row.point.norm2() - 0.5) <= 1e-12);
    const QubitDensityParams q = rho_from_s3(row.point);
    for (std::size_t j : row.partners) {
      const QubitDensityParams o = rho_from_s3(rows[j].point);
      CHECK(std::abs(o.a - q.a) <= 1e-9);
      CHECK(std::abs(o.b - q.b) <= 1e-9);
      CHECK(std::abs(o.c - q.c) <= 1e-9);
    }
    const double r2 = row.point.x * row.point.x + row.point.y * row.point.y + row.point.z * row.point.z;
    if (std::abs(std::abs(row.point.t) - 0.5) <= 1e-12 && std::abs(r2 - 0.25) <= 1e-12) {
      CHECK(row.case_tag == QubitCase::pure);
      ++pure_rows;
    }
    if (row.point.t == 0.0) {
      ++equator_rows;
      CHECK(row.case_tag == QubitCase::fully_mixed);
      // The equator is identified with both poles.
      bool north = false, south = false;
      for (std::size_t j : row.partners) {
        north = north || rows[j].point.t == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15);
        south = south || rows[j].point.t == doctest::Approx(-1.0 / std::numbers::sqrt2).epsilon(1e-15);
      }
      CHECK(north);
      CHECK(south);
    }
    // Generic rows see all four preimages.
    if (row.case_tag == QubitCase::generic) CHECK(row.partners.size() == 3);
  }
  CHECK(pure_rows > 0);
  CHECK(equator_rows > 0);

  std::ostringstream csv;
  write_mesh_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(text.rfind("t,x,y,z,R,case,partners\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == rows.size() + 1);
  CHECK_THROWS_AS(figure1_mesh(4), InvalidInput);
}
