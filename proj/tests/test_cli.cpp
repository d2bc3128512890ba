#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qig/commands.hpp"
#include "qig/matrix_io.hpp"
#include "qig/report.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qig::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "qig_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qig::CMatrix read_out_matrix(const std::string& text) { return qig::matrix_from_json(json::parse(text)); }

}  // namespace

TEST_CASE("sqrt command") {
  const auto half = write_text("half.json", R"({"dim":2,"re":[[0.5,0],[0,0.5]],"im":[[0,0],[0,0]]})");
  Result r = run({"sqrt", half.string()});
  CHECK(r.code == 0);
  const qig::CMatrix xi = read_out_matrix(r.out);
  CHECK((xi - qig::CMatrix::Identity(2, 2) / std::sqrt(2.0)).norm() < 1e-15);
  CHECK(r.err.find("residual") != std::string::npos);

  const auto proj = write_text("proj.json", R"({"dim":2,"re":[[0.5,0.5],[0.5,0.5]],"im":[[0,0],[0,0]]})");
  const fs::path out = scratch() / "proj_sqrt.json";
  r = run({"--out", out.string(), "sqrt", proj.string()});
  CHECK(r.code == 0);
  const qig::CMatrix p = qig::read_matrix_file(out);
  CHECK((p * p - p).norm() < 1e-14);

  const auto bad = write_text("bad.json", R"({"dim":2,"re":[[1.2,0],[0,-0.2]],"im":[[0,0],[0,0]]})");
  r = run({"sqrt", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("not positive semidefinite") != std::string::npos);

  CHECK(run({"sqrt", (scratch() / "missing.json").string()}).code == 2);
  CHECK(run({"sqrt", write_text("garbage.json", "{not json").string()}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--samples", "ten", "metric"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("preimages command") {
  Result r = run({"preimages", "0", "0", "0"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["case"] == "fully_mixed");
  CHECK(j["isolated_points"].size() == 2);
  CHECK(!j["continuum"].is_null());

  j = json::parse(run({"preimages", "0.5", "0", "0"}).out);
  CHECK(j["case"] == "pure");
  CHECK(j["isolated_points"].size() == 2);

  j = json::parse(run({"preimages", "0.25", "0", "0"}).out);
  CHECK(j["case"] == "generic");
  CHECK(j["isolated_points"].size() == 4);
  for (const auto& p : j["isolated_points"]) {
    CHECK(p["quartic_residual"].get<double>() <= 1e-12);
    CHECK(p["rho_residual"].get<double>() <= 1e-10);
  }

  r = run({"preimages", "0.4", "0.4", "0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("exceeds 1/2") != std::string::npos);

  const fs::path mesh = scratch() / "mesh.csv";
  r = run({"preimages", "0.1", "0", "0", "--mesh", mesh.string(), "--resolution", "8"});
  CHECK(r.code == 0);
  CHECK(read_text(mesh).rfind("t,x,y,z,R,case,partners", 0) == 0);
}

TEST_CASE("metric command") {
  CHECK(run({"metric", "--family", "qubit-pure"}).code == 2);  // seed is mandatory

  Result r = run({"--seed", "3", "--samples", "20000", "metric", "--family", "qubit-pure"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["points"].size() == 20);
  for (const auto& p : j["points"]) {
    const double th = p["theta"][0].get<double>();
    const auto g = p["analytic"]["components"];
    CHECK(g[0][0].get<double>() == doctest::Approx(2.0));
    CHECK(g[1][1].get<double>() == doctest::Approx(2.0 * std::sin(th) * std::sin(th)));
    CHECK(g[0][1].get<double>() == doctest::Approx(0.0));
  }
  CHECK(!j["kappa"].is_null());
  CHECK(j.contains("wall_ms"));

  const auto cfg = write_text("constant.json", R"({"seed": 4, "samples": 5000, "metric": {"family": "constant", "points": [[0.0], [1.0]]}})");
  r = run({"--config", cfg.string(), "metric"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["kappa"].is_null());
  for (const auto& p : j["points"]) CHECK(p["analytic"]["components"][0][0].get<double>() == 0.0);

  const auto h = write_text("h.json", R"({"dim":2,"re":[[1,0.3],[0.3,-1]],"im":[[0,0.2],[-0.2,0]]})");
  const auto rho = write_text("rho.json", R"({"dim":2,"re":[[0.7,0.1],[0.1,0.3]],"im":[[0,0],[0,0]]})");
  r = run({"--seed", "5", "--samples", "5000", "metric", "--family", "unitary-curve", "--hamiltonian",
           h.string(), "--initial", rho.string()});
  CHECK(r.code == 0);
  CHECK(run({"--seed", "5", "metric", "--family", "nope"}).code == 2);
}

TEST_CASE("flags override the config file") {
  const auto cfg = write_text("override.json", R"({"seed": 1, "samples": 4000, "dim": 2, "metric": {"points": [[0.5, 0.5]]}})");
  const json a = json::parse(run({"--config", cfg.string(), "metric"}).out);
  const json b = json::parse(run({"--config", cfg.string(), "--seed", "2", "metric"}).out);
  CHECK(a["seed"] == 1);
  CHECK(b["seed"] == 2);
  CHECK(a["samples"] == 4000);
}

TEST_CASE("bounds command") {
  const fs::path out = scratch() / "bounds.jsonl";
  const fs::path summary = scratch() / "bounds.csv";
  Result r = run({"--seed", "9", "--dim", "2", "--out", out.string(), "bounds", "--count", "200",
                  "--pure-fraction", "0.3", "--summary", summary.string()});
  REQUIRE(r.code == 0);
  const json meta = json::parse(r.out);
  CHECK(meta["violations"] == 0);
  CHECK(meta["instances"] == 200);

  std::ifstream lines(out);
  std::string line;
  std::size_t count = 0, pure_saturating = 0;
  while (std::getline(lines, line)) {
    const json j = json::parse(line);
    ++count;
    CHECK(!j.contains("violation"));
    if (j["pure"].get<bool>() && j["saturating"].get<bool>()) {
      const double product = j["var_T"].get<double>() * j["var_H"].get<double>();
      CHECK(std::abs(product - 0.25) <= 1e-9);
      ++pure_saturating;
    }
  }
  CHECK(count == 200);
  CHECK(pure_saturating > 0);
  const std::string csv = read_text(summary);
  CHECK(csv.rfind("dim,instances,violations", 0) == 0);
  CHECK(csv.find("\nall,200,0,") != std::string::npos);

  r = run({"--seed", "9", "--samples", "2000", "--out", out.string(), "bounds", "--count", "4",
           "--calibrate", "--calibration-points", "2"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).contains("calibration"));

  CHECK(run({"--out", out.string(), "bounds"}).code == 2);
  CHECK(run({"--seed", "1", "bounds"}).code == 2);
}

TEST_CASE("calibrate command") {
  Result r = run({"--seed", "4", "--samples", "20000", "--dim", "2", "calibrate", "--points", "3",
                  "--validation-points", "3"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["kappa"]["fit"]["kappa"].get<double>() == doctest::Approx(0.25).epsilon(0.05));
  CHECK(j["dual"]["constant"].get<double>() == doctest::Approx(10.0).epsilon(0.2));
}

TEST_CASE("same seed gives identical reports") {
  const std::vector<std::vector<std::string>> commands{
      {"--seed", "11", "--samples", "5000", "metric", "--family", "qubit-mixed"},
      {"--seed", "11", "--samples", "5000", "--threads", "3", "metric", "--family", "qubit-mixed"},
      {"--seed", "11", "--samples", "5000", "calibrate", "--points", "2", "--validation-points", "2"},
      {"preimages", "0.1", "-0.2", "0.3"},
  };
  std::string first_metric;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const Result a = run(commands[i]), b = run(commands[i]);
    REQUIRE(a.code == 0);
    const std::string sa = qig::strip_timing(json::parse(a.out)).dump();
    const std::string sb = qig::strip_timing(json::parse(b.out)).dump();
    CHECK(sa == sb);
    if (i == 0) first_metric = sa;
    if (i == 1) CHECK(sa == first_metric);  // thread count does not change results
  }
  const fs::path o1 = scratch() / "det1.jsonl", o2 = scratch() / "det2.jsonl";
  REQUIRE(run({"--seed", "2", "--out", o1.string(), "--threads", "1", "bounds", "--count", "50"}).code == 0);
  REQUIRE(run({"--seed", "2", "--out", o2.string(), "--threads", "4", "bounds", "--count", "50"}).code == 0);
  CHECK(read_text(o1) == read_text(o2));
}

TEST_CASE("--dim overrides a config dims list") {
  const auto cfg = write_text("dims.json", R"({"seed": 3, "bounds": {"dims": [2, 3], "count": 5}})");
  const fs::path out = scratch() / "dims.jsonl";
  json meta = json::parse(run({"--config", cfg.string(), "--out", out.string(), "bounds"}).out);
  CHECK(meta["dims"] == json::array({2, 3}));
  meta = json::parse(run({"--config", cfg.string(), "--dim", "4", "--out", out.string(), "bounds"}).out);
  CHECK(meta["dims"] == json::array({4}));
}
