#pragma once

#include <cstdint>

#include "json.hpp"
#include "qig/bloch2x2.hpp"
#include "qig/estimation.hpp"
#include "qig/geometry.hpp"

namespace qig {

/// {"components", "stderr", "samples", "seed", "wall_ms"}
nlohmann::json to_json(const MetricEstimate& m, std::uint64_t seed, double wall_ms);

/// Flat object keyed by the BoundReport field names; the symmetric pair is
/// emitted as "symmetric_lhs_rhs": [lhs, rhs].
nlohmann::json to_json(const BoundReport& r);

nlohmann::json to_json(const HigherOrderBound& b);

/// Case tag, isolated points with round-trip and quartic residuals, and the
/// t = 0 continuum descriptor (or null).
nlohmann::json to_json(const PreimageSet& set, const QubitDensityParams& input);

nlohmann::json to_json(const ProportionalityFit& fit);
nlohmann::json to_json(const KappaCalibration& cal);
nlohmann::json to_json(const DualCalibration& cal);

/// Removes every "wall_ms" key recursively; used for determinism checks.
nlohmann::json strip_timing(nlohmann::json j);

}  // namespace qig
