#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qig/hermitian.hpp"

namespace qig {

/// Point (t, x, y, z) of the trace sphere t^2 + x^2 + y^2 + z^2 = 1/2.
struct S3Point {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

  /// Validates the trace-sphere condition to 1e-12.
  static S3Point make(double t, double x, double y, double z);
  S3Point operator-() const { return {-t, -x, -y, -z}; }
  double norm2() const { return t * t + x * x + y * y + z * z; }
};

/// Qubit density [[1/2 + a, b - ic], [b + ic, 1/2 - a]] with R^2 = a^2+b^2+c^2 <= 1/4.
struct QubitDensityParams {
  double a = 0.0, b = 0.0, c = 0.0;

  /// Rejects R > 1/2 + 1e-12.
  static QubitDensityParams make(double a, double b, double c);
  double radius() const;
  HermitianMatrix matrix() const;
};

enum class QubitCase { fully_mixed, pure, generic };

std::string to_string(QubitCase c);

/// The t = 0 two-sphere x^2 + y^2 + z^2 = 1/2, every point of which squares to I/2.
struct EquatorContinuum {
  double radius2 = 0.5;
};

struct PreimageSet {
  QubitCase case_tag = QubitCase::generic;
  std::vector<S3Point> isolated_points;
  std::optional<EquatorContinuum> continuum;
};

/// [[t+z, x-iy], [x+iy, t-z]] without any normalization check.
HermitianMatrix s3_matrix(double t, double x, double y, double z);

SqrtState xi_from_s3(const S3Point& p);
/// (a, b, c) = (2tz, 2tx, 2ty)
QubitDensityParams rho_from_s3(const S3Point& p);

/// Band half-width for the fully-mixed and pure boundary cases.
inline constexpr double kCaseBand = 1e-9;

QubitCase classify(const QubitDensityParams& q);

/// All Hermitian square roots of the qubit density, from the quartic
/// 4t^4 - 2t^2 + R^2 = 0 and (x, y, z) = (b, c, a) / (2t).
PreimageSet sqrt_preimages(const QubitDensityParams& q);

/// |4t^4 - 2t^2 + R^2|
double quartic_residual(double t, double radius2);

struct MeshRow {
  S3Point point;
  double radius = 0.0;
  QubitCase case_tag = QubitCase::generic;
  std::vector<std::size_t> partners;
};

/// Latitude/longitude sampling of S^3 whose latitude set is closed under
/// t -> -t and t -> +-sqrt(1/2 - t^2) and whose S^2 directions are closed
/// under negation, so every sampled point has its partner preimages in the
/// mesh. Partners share (a, b, c) rounded to a 1e-9 grid.
std::vector<MeshRow> figure1_mesh(int resolution);

/// CSV with header t,x,y,z,R,case,partners; partners are ';'-separated row indices.
void write_mesh_csv(std::ostream& out, const std::vector<MeshRow>& rows);
void write_mesh_csv(const std::filesystem::path& path, const std::vector<MeshRow>& rows);

}  // namespace qig
