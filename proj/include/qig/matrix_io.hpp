#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qig/hermitian.hpp"

namespace qig {

// Matrix interchange: {"dim": n, "re": [[...]], "im": [[...]]}, row-major.

CMatrix matrix_from_json(const nlohmann::json& j);
/// Serializes with 17 significant digits so values round-trip exactly.
std::string matrix_to_json(const CMatrix& m);

CMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const CMatrix& m);

nlohmann::json real_matrix_json(const RMatrix& m);

}  // namespace qig
