#include "qig/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/core.h>

namespace qig {

namespace {

void append_rows(std::string& out, const RMatrix& m) {
  out += '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += fmt::format("{:.17g}", m(i, j));
    }
    out += ']';
  }
  out += ']';
}

}  // namespace

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw InvalidInput("matrix JSON must be an object with keys dim, re, im");
  }
  const auto n = j.at("dim").get<std::int64_t>();
  if (n <= 0) throw InvalidInput("matrix dim must be positive");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || !im.is_array() || std::ssize(re) != n || std::ssize(im) != n) {
    throw InvalidInput(fmt::format("matrix re/im must be {}x{} arrays", n, n));
  }
  CMatrix m(n, n);
  for (std::int64_t r = 0; r < n; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || std::ssize(re[r]) != n ||
        std::ssize(im[r]) != n) {
      throw InvalidInput(fmt::format("matrix row {} must have {} entries", r, n));
    }
    for (std::int64_t c = 0; c < n; ++c) {
      m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  return m;
}

std::string matrix_to_json(const CMatrix& m) {
  std::string out = fmt::format("{{\"dim\": {}, \"re\": ", m.rows());
  append_rows(out, m.real());
  out += ", \"im\": ";
  append_rows(out, m.imag());
  out += "}";
  return out;
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("cannot open {}", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(fmt::format("{}: malformed JSON ({})", path.string(), e.what()));
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::filesystem::path& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << matrix_to_json(m) << '\n';
}

nlohmann::json real_matrix_json(const RMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qig
