#include "qig/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <thread>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qig/bloch2x2.hpp"
#include "qig/estimation.hpp"
#include "qig/geometry.hpp"
#include "qig/matrix_io.hpp"
#include "qig/random.hpp"
#include "qig/report.hpp"

namespace qig::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Global settings: defaults, then the --config file, then explicit flags.
struct ExperimentConfig {
  std::size_t dim = 2;
  bool dim_explicit = false;  // set by --dim or a top-level "dim" field
  std::optional<std::uint64_t> seed;
  std::size_t samples = 100'000;
  unsigned threads = 1;
  std::string output;
  json file = json::object();

  std::uint64_t require_seed(const std::string& command) const {
    if (!seed) {
      throw InvalidInput(fmt::format("{}: --seed is required for stochastic commands", command));
    }
    return *seed;
  }
  McConfig mc() const {
    McConfig c;
    c.samples = samples;
    c.seed = seed.value_or(0);
    c.threads = threads;
    if (file.contains("batches")) c.batches = file.at("batches").get<std::size_t>();
    return c;
  }
  template <class T>
  T get(const std::string& key, T fallback) const {
    return file.contains(key) ? file.at(key).get<T>() : fallback;
  }
};

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t dim = 0;
  unsigned threads = 1;
  std::string out;
  std::string config;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

ExperimentConfig resolve(const GlobalFlags& g) {
  ExperimentConfig cfg;
  if (!g.config.empty()) {
    std::ifstream in(g.config);
    if (!in) throw InvalidInput(fmt::format("cannot open config {}", g.config));
    try {
      in >> cfg.file;
    } catch (const json::exception& e) {
      throw InvalidInput(fmt::format("config {}: malformed JSON ({})", g.config, e.what()));
    }
    if (!cfg.file.is_object()) throw InvalidInput("config must be a JSON object");
    cfg.dim = cfg.get<std::size_t>("dim", cfg.dim);
    if (cfg.file.contains("seed")) cfg.seed = cfg.file.at("seed").get<std::uint64_t>();
    cfg.samples = cfg.get<std::size_t>("samples", cfg.samples);
    cfg.threads = cfg.get<unsigned>("threads", cfg.threads);
    cfg.output = cfg.get<std::string>("out", cfg.output);
  }
  if (g.seed_opt->count()) cfg.seed = g.seed;
  if (g.samples_opt->count()) cfg.samples = g.samples;
  if (g.dim_opt->count()) cfg.dim = g.dim;
  cfg.dim_explicit = g.dim_opt->count() > 0 || cfg.file.contains("dim");
  if (g.threads_opt->count()) cfg.threads = g.threads;
  if (g.out_opt->count()) cfg.output = g.out;
  if (cfg.threads == 0) cfg.threads = 1;
  return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", cfg.output));
  f << text << '\n';
}

CMatrix matrix_arg(const json& section, const std::string& key, const std::string& path_flag) {
  if (!path_flag.empty()) return read_matrix_file(path_flag);
  if (section.contains(key)) return matrix_from_json(section.at(key));
  throw InvalidInput(fmt::format("missing matrix '{}' (config key or file flag)", key));
}

// ---------------------------------------------------------------- sqrt

struct SqrtArgs {
  std::string input;
};

int cmd_sqrt(const ExperimentConfig& cfg, const SqrtArgs& args, std::ostream& out,
             std::ostream& err) {
  std::string in = args.input.empty() ? cfg.get<std::string>("in", "") : args.input;
  if (in.empty()) throw InvalidInput("sqrt: input matrix file is required");
  const HermitianMatrix h = HermitianMatrix::checked(read_matrix_file(in), 1e-9);
  const DensityMatrix rho = DensityMatrix::from(h);
  const SqrtState xi = principal_sqrt(rho);
  const double residual = hs_norm(square(xi.hermitian()) - rho.hermitian());
  const std::string text = matrix_to_json(xi.matrix());
  emit(cfg, text, out);
  (cfg.output.empty() ? err : out) << fmt::format("residual ||xi^2 - rho||_HS = {:.3e}\n", residual);
  return kSuccess;
}

// ---------------------------------------------------------------- metric

struct MetricArgs {
  std::string family;
  std::string hamiltonian;
  std::string initial;
};

struct FamilyChoice {
  ParamFamily family;
  std::vector<std::vector<double>> points;
  std::size_t dim;
};

std::vector<std::vector<double>> default_points(const std::string& name) {
  std::vector<std::vector<double>> pts;
  if (name == "qubit-pure") {
    for (int k = 0; k < 20; ++k) pts.push_back({0.3 + 2.5 * k / 19.0, 0.37 * k});
  } else if (name == "qubit-mixed") {
    for (int k = 0; k < 20; ++k) pts.push_back({0.05 + 0.6 * k / 19.0, 0.3 + 2.5 * k / 19.0, 0.37 * k});
  } else {
    for (int k = 0; k < 20; ++k) pts.push_back({0.1 * k});
  }
  return pts;
}

FamilyChoice choose_family(const ExperimentConfig& cfg, const MetricArgs& args) {
  const json section = cfg.file.value("metric", json::object());
  const std::string name =
      !args.family.empty() ? args.family : section.value("family", std::string("qubit-pure"));
  std::vector<std::vector<double>> points = section.contains("points")
                                                ? section.at("points").get<std::vector<std::vector<double>>>()
                                                : default_points(name);
  if (points.empty()) throw InvalidInput("metric: no parameter points");
  if (name == "qubit-pure") return {qubit_pure_family(), points, 2};
  if (name == "qubit-mixed") return {qubit_mixed_family(), points, 2};
  if (name == "unitary-curve") {
    const HermitianMatrix h =
        HermitianMatrix::checked(matrix_arg(section, "hamiltonian", args.hamiltonian), 1e-9);
    const DensityMatrix rho =
        DensityMatrix::from(HermitianMatrix::checked(matrix_arg(section, "initial", args.initial), 1e-9));
    return {unitary_curve_family(principal_sqrt(rho), h), points, h.dim()};
  }
  if (name == "constant") {
    const std::size_t dim = cfg.dim;
    const DensityMatrix rho =
        section.contains("initial") || !args.initial.empty()
            ? DensityMatrix::from(HermitianMatrix::checked(matrix_arg(section, "initial", args.initial), 1e-9))
            : DensityMatrix::maximally_mixed(dim);
    return {constant_family(principal_sqrt(rho), 1), points, rho.dim()};
  }
  throw InvalidInput(fmt::format(
      "metric: unknown family '{}' (qubit-pure, qubit-mixed, unitary-curve, constant)", name));
}

int cmd_metric(const ExperimentConfig& cfg, const MetricArgs& args, std::ostream& out) {
  const std::uint64_t seed = cfg.require_seed("metric");
  const auto start = Clock::now();
  FamilyChoice choice = choose_family(cfg, args);
  const double z_max = cfg.file.value("metric", json::object()).value("z_max", 3.0);

  std::vector<MetricEstimate> mc, an;
  std::vector<std::uint64_t> seeds;
  std::vector<double> wall;
  for (std::size_t k = 0; k < choice.points.size(); ++k) {
    McConfig mcfg = cfg.mc();
    mcfg.seed = derive_seed(seed, k);
    const auto t0 = Clock::now();
    mc.push_back(fisher_rao_mc(choice.family, choice.points[k], mcfg));
    wall.push_back(elapsed_ms(t0));
    an.push_back(fisher_rao_analytic(choice.family, choice.points[k]));
    seeds.push_back(mcfg.seed);
  }

  json kappa = nullptr;
  double kappa_value = 0.0;
  try {
    const ProportionalityFit fit = fit_proportionality(mc, an);
    kappa = to_json(fit);
    kappa_value = fit.kappa;
  } catch (const InvalidInput&) {
    // All analytic components vanish (e.g. constant family): nothing to fit.
  }

  json points = json::array();
  double worst_z = 0.0;
  for (std::size_t k = 0; k < mc.size(); ++k) {
    const RMatrix z = z_scores(mc[k], an[k], kappa_value);
    for (Eigen::Index i = 0; i < z.size(); ++i)
      if (std::isfinite(z(i))) worst_z = std::max(worst_z, std::abs(z(i)));
    points.push_back({{"theta", choice.points[k]},
                      {"analytic", to_json(an[k], 0, 0.0)},
                      {"mc", to_json(mc[k], seeds[k], wall[k])},
                      {"z_scores", real_matrix_json(z)}});
  }
  const json report = {{"command", "metric"},
                       {"derivatives", choice.family.mode() == DerivativeMode::exact ? "exact" : "finite-difference"},
                       {"family", args.family.empty()
                                           ? cfg.file.value("metric", json::object()).value("family", std::string("qubit-pure"))
                                           : args.family},
                       {"dim", choice.dim},
                       {"seed", seed},
                       {"samples", cfg.samples},
                       {"points", points},
                       {"kappa", kappa},
                       {"max_abs_z", worst_z},
                       {"z_max", z_max},
                       {"healthy", worst_z <= z_max},
                       {"wall_ms", elapsed_ms(start)}};
  emit(cfg, report.dump(2), out);
  return kSuccess;
}

// ---------------------------------------------------------------- preimages

struct PreimageArgs {
  std::vector<double> abc;
  std::string mesh;
  int resolution = 16;
};

int cmd_preimages(const ExperimentConfig& cfg, const PreimageArgs& args, std::ostream& out,
                  std::ostream& err) {
  if (args.abc.size() != 3) throw InvalidInput("preimages: expected three numbers a b c");
  const QubitDensityParams q = QubitDensityParams::make(args.abc[0], args.abc[1], args.abc[2]);
  const PreimageSet set = sqrt_preimages(q);
  json report = to_json(set, q);
  if (!args.mesh.empty()) {
    const auto rows = figure1_mesh(args.resolution);
    write_mesh_csv(args.mesh, rows);
    report["mesh"] = {{"path", args.mesh}, {"rows", rows.size()}, {"resolution", args.resolution}};
    err << fmt::format("wrote {} mesh rows to {}\n", rows.size(), args.mesh);
  }
  emit(cfg, report.dump(2), out);
  return kSuccess;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::size_t count = 1000;
  double pure_fraction = 0.1;
  int max_order = 3;
  std::string summary;
  bool calibrate = false;
  std::size_t calibration_points = 20;
  CLI::Option* count_opt = nullptr;
  CLI::Option* pure_opt = nullptr;
  CLI::Option* order_opt = nullptr;
};

struct InstanceResult {
  std::size_t dim = 0;
  std::size_t index = 0;
  bool pure = false;
  bool saturating = false;
  std::optional<HigherOrderBound> bound;
  std::string violation;
  std::string skipped;
};

InstanceResult run_instance(std::size_t dim, std::size_t index, std::uint64_t seed,
                            double pure_fraction, int max_order) {
  InstanceResult r;
  r.dim = dim;
  r.index = index;
  Rng rng = Rng::stream(derive_seed(seed, dim), index);
  r.pure = rng.uniform() < pure_fraction;
  r.saturating = index % 2 == 0;
  const HermitianMatrix h = random_hermitian(dim, rng);
  const SqrtState xi = r.pure ? SqrtState::from(random_pure(dim, rng).projector())
                              : principal_sqrt(random_density_hs(dim, rng));
  const HermitianMatrix perturbation = random_hermitian(dim, rng);
  try {
    EstimatorT t = make_locally_unbiased(xi, h);
    if (!r.saturating) t = perturb_estimator(t, xi, h, perturbation);
    r.bound = higher_order_bound(xi, h, t, max_order);
  } catch (const NumericalError& e) {
    r.violation = e.what();
  } catch (const InvalidInput& e) {
    r.skipped = e.what();
  }
  return r;
}

struct DimSummary {
  std::size_t instances = 0, violations = 0, skipped = 0, pure = 0, saturating = 0;
  double min_crb_gap = std::numeric_limits<double>::infinity(), sum_crb_gap = 0.0;
  double min_luo_gap = std::numeric_limits<double>::infinity(), sum_luo_gap = 0.0;
  double min_sym_gap = std::numeric_limits<double>::infinity(), sum_sym_gap = 0.0;
  double max_saturation_residual = 0.0;
  double pure_min_product = std::numeric_limits<double>::infinity(), pure_sum_product = 0.0;
  std::size_t pure_reported = 0, reported = 0;

  void add(const InstanceResult& r) {
    ++instances;
    if (!r.violation.empty()) ++violations;
    if (!r.skipped.empty()) ++skipped;
    if (!r.bound) return;
    ++reported;
    const BoundReport& b = r.bound->base;
    const double crb = b.var_T + b.delta_T2 - b.crb_rhs;
    const double luo = b.var_T - b.luo_rhs;
    const double sym = b.symmetric_lhs - b.symmetric_rhs;
    min_crb_gap = std::min(min_crb_gap, crb);
    sum_crb_gap += crb;
    min_luo_gap = std::min(min_luo_gap, luo);
    sum_luo_gap += luo;
    min_sym_gap = std::min(min_sym_gap, sym);
    sum_sym_gap += sym;
    if (r.saturating) {
      ++saturating;
      max_saturation_residual = std::max(max_saturation_residual, std::abs(crb));
    }
    if (r.pure) {
      ++pure;
      ++pure_reported;
      const double product = b.var_T * b.var_H;
      pure_min_product = std::min(pure_min_product, product);
      pure_sum_product += product;
    }
  }

  std::string csv_row(const std::string& label) const {
    auto mean = [](double s, std::size_t n) { return n ? s / static_cast<double>(n) : 0.0; };
    auto fin = [](double v) { return std::isfinite(v) ? v : 0.0; };
    return fmt::format("{},{},{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}",
                       label, instances, violations, skipped, pure, saturating, fin(min_crb_gap),
                       mean(sum_crb_gap, reported), fin(min_luo_gap), mean(sum_luo_gap, reported),
                       fin(min_sym_gap), mean(sum_sym_gap, reported), max_saturation_residual,
                       fin(pure_min_product), mean(pure_sum_product, pure_reported));
  }
};

int cmd_bounds(const ExperimentConfig& cfg, const BoundsArgs& args, std::ostream& out,
               std::ostream& err) {
  const std::uint64_t seed = cfg.require_seed("bounds");
  const auto start = Clock::now();
  const json section = cfg.file.value("bounds", json::object());
  std::vector<std::size_t> dims{cfg.dim};
  if (section.contains("dims") && !cfg.dim_explicit) {
    dims = section.at("dims").get<std::vector<std::size_t>>();
  }
  const std::size_t count = args.count_opt->count() ? args.count : section.value("count", args.count);
  const double pure_fraction =
      args.pure_opt->count() ? args.pure_fraction : section.value("pure_fraction", args.pure_fraction);
  const int max_order = args.order_opt->count() ? args.max_order : section.value("max_order", args.max_order);
  if (cfg.output.empty()) throw InvalidInput("bounds: --out <file.jsonl> is required");
  std::string summary_path = args.summary;
  if (summary_path.empty()) {
    std::filesystem::path p(cfg.output);
    p.replace_extension(".csv");
    summary_path = p.string();
  }

  std::vector<std::vector<InstanceResult>> results;
  for (std::size_t dim : dims) {
    if (dim < 2) throw InvalidInput("bounds: dim must be >= 2");
    std::vector<InstanceResult> rs(count);
    const unsigned nthreads = std::max(1u, cfg.threads);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < nthreads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += nthreads) {
          rs[i] = run_instance(dim, i, seed, pure_fraction, max_order);
        }
      });
    }
    for (auto& t : workers) t.join();
    results.push_back(std::move(rs));
  }

  std::ofstream jsonl(cfg.output);
  if (!jsonl) throw std::runtime_error(fmt::format("cannot write {}", cfg.output));
  DimSummary total;
  std::vector<DimSummary> per_dim;
  for (const auto& rs : results) {
    DimSummary s;
    for (const auto& r : rs) {
      s.add(r);
      total.add(r);
      json line = {{"instance", r.index}, {"dim", r.dim}, {"pure", r.pure}, {"saturating", r.saturating}};
      if (r.bound) {
        const json base = to_json(r.bound->base);
        for (auto& [k, v] : base.items()) line[k] = v;
        json higher = to_json(*r.bound);
        higher.erase("report");
        line["higher_order"] = higher;
      }
      if (!r.violation.empty()) line["violation"] = r.violation;
      if (!r.skipped.empty()) line["skipped"] = r.skipped;
      jsonl << line.dump() << '\n';
    }
    per_dim.push_back(s);
  }

  std::ofstream csv(summary_path);
  if (!csv) throw std::runtime_error(fmt::format("cannot write {}", summary_path));
  csv << "dim,instances,violations,skipped,pure_instances,saturating_instances,min_crb_gap,"
         "mean_crb_gap,min_luo_gap,mean_luo_gap,min_symmetric_gap,mean_symmetric_gap,"
         "max_saturation_residual,pure_min_product,pure_mean_product\n";
  for (std::size_t k = 0; k < dims.size(); ++k) csv << per_dim[k].csv_row(std::to_string(dims[k])) << '\n';
  csv << total.csv_row("all") << '\n';

  json meta = {{"command", "bounds"},
               {"seed", seed},
               {"dims", dims},
               {"count", count},
               {"pure_fraction", pure_fraction},
               {"max_order", max_order},
               {"instances", total.instances},
               {"violations", total.violations},
               {"skipped", total.skipped},
               {"jsonl", cfg.output},
               {"summary", summary_path}};
  if (args.calibrate) {
    json cal = json::array();
    for (std::size_t dim : dims) {
      McConfig mcfg = cfg.mc();
      mcfg.seed = derive_seed(seed, 0xC0FFEEu + dim);
      cal.push_back({{"kappa", to_json(calibrate_kappa(dim, args.calibration_points, mcfg))},
                     {"dual", to_json(calibrate_dual(dim, args.calibration_points, mcfg))}});
    }
    meta["calibration"] = cal;
  }
  meta["wall_ms"] = elapsed_ms(start);
  out << meta.dump(2) << '\n';
  if (total.violations > 0) {
    err << fmt::format("bounds: {} violation(s) detected\n", total.violations);
    return kNumericalFailure;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  std::size_t points = 20;
  std::size_t validation_points = 20;
};

int cmd_calibrate(const ExperimentConfig& cfg, const CalibrateArgs& args, std::ostream& out) {
  const std::uint64_t seed = cfg.require_seed("calibrate");
  const auto start = Clock::now();
  McConfig mcfg = cfg.mc();
  mcfg.seed = seed;
  const KappaCalibration kappa = calibrate_kappa(cfg.dim, args.points, mcfg);
  mcfg.seed = derive_seed(seed, 1);
  const DualCalibration dual = calibrate_dual(cfg.dim, args.validation_points, mcfg);
  const json report = {{"command", "calibrate"},
                       {"dim", cfg.dim},
                       {"seed", seed},
                       {"samples", cfg.samples},
                       {"kappa", to_json(kappa)},
                       {"dual", to_json(dual)},
                       {"wall_ms", elapsed_ms(start)}};
  emit(cfg, report.dump(2), out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information geometry of density matrices via Hermitian square roots", "qig"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  g.seed_opt = app.add_option("--seed", g.seed, "RNG seed (required for stochastic commands)");
  g.samples_opt = app.add_option("--samples", g.samples, "Monte-Carlo sample count");
  g.dim_opt = app.add_option("--dim", g.dim, "Hilbert-space dimension");
  g.out_opt = app.add_option("--out", g.out, "Output path (default: stdout)");
  app.add_option("--config", g.config, "JSON config file; flags override its fields");
  g.threads_opt = app.add_option("--threads", g.threads, "Worker threads");

  SqrtArgs sqrt_args;
  auto* sqrt_cmd = app.add_subcommand("sqrt", "Principal square root of a density matrix file");
  sqrt_cmd->add_option("input", sqrt_args.input, "Density matrix JSON file");

  MetricArgs metric_args;
  auto* metric_cmd = app.add_subcommand("metric", "Monte-Carlo vs analytic Fisher-Rao metric");
  metric_cmd->add_option("--family", metric_args.family,
                         "qubit-pure | qubit-mixed | unitary-curve | constant");
  metric_cmd->add_option("--hamiltonian", metric_args.hamiltonian, "Hamiltonian matrix file");
  metric_cmd->add_option("--initial", metric_args.initial, "Initial density matrix file");

  PreimageArgs pre_args;
  auto* pre_cmd = app.add_subcommand("preimages", "All Hermitian square roots of a qubit density");
  pre_cmd->add_option("abc", pre_args.abc, "Density parameters a b c")->expected(3);
  pre_cmd->add_option("--mesh", pre_args.mesh, "Also write the S^3 covering mesh CSV here");
  pre_cmd->add_option("--resolution", pre_args.resolution, "Mesh resolution (>= 8)");

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Uncertainty-bound theorem suite");
  bounds_args.count_opt = bounds_cmd->add_option("--count", bounds_args.count, "Instances per dimension");
  bounds_args.pure_opt =
      bounds_cmd->add_option("--pure-fraction", bounds_args.pure_fraction, "Fraction of pure states");
  bounds_args.order_opt =
      bounds_cmd->add_option("--max-order", bounds_args.max_order, "Highest derivative order (1..3)");
  bounds_cmd->add_option("--summary", bounds_args.summary, "Summary CSV path");
  bounds_cmd->add_flag("--calibrate", bounds_args.calibrate, "Include kappa/dual calibration metadata");
  bounds_cmd->add_option("--calibration-points", bounds_args.calibration_points,
                         "Points per calibration");

  CalibrateArgs cal_args;
  auto* cal_cmd = app.add_subcommand("calibrate", "Measure the Monte-Carlo proportionality constants");
  cal_cmd->add_option("--points", cal_args.points, "Random pure-state families for kappa");
  cal_cmd->add_option("--validation-points", cal_args.validation_points,
                      "Random (A, x) pairs for the dual constant");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "qig: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    const ExperimentConfig cfg = resolve(g);
    if (*sqrt_cmd) return cmd_sqrt(cfg, sqrt_args, out, err);
    if (*metric_cmd) return cmd_metric(cfg, metric_args, out);
    if (*pre_cmd) return cmd_preimages(cfg, pre_args, out, err);
    if (*bounds_cmd) return cmd_bounds(cfg, bounds_args, out, err);
    if (*cal_cmd) return cmd_calibrate(cfg, cal_args, out);
  } catch (const InvalidInput& e) {
    err << "qig: invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "qig: invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NumericalError& e) {
    err << "qig: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "qig: error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kInvalidInput;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qig::cli
