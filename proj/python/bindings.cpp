#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qig/bloch2x2.hpp"
#include "qig/commands.hpp"
#include "qig/estimation.hpp"
#include "qig/geometry.hpp"
#include "qig/random.hpp"
#include "qig/report.hpp"

namespace py = pybind11;

namespace {

using namespace qig;

HermitianMatrix herm(const CMatrix& m) { return HermitianMatrix::checked(m, 1e-9); }
DensityMatrix density(const CMatrix& m) { return DensityMatrix::from(herm(m)); }
SqrtState sqrt_state(const CMatrix& m) { return SqrtState::from(herm(m)); }

ParamFamily family_by_name(const std::string& name) {
  if (name == "qubit-pure") return qubit_pure_family();
  if (name == "qubit-mixed") return qubit_mixed_family();
  throw InvalidInput("unknown family '" + name + "' (qubit-pure, qubit-mixed)");
}

std::pair<RMatrix, RMatrix> metric_pair(const MetricEstimate& m) { return {m.components, m.std_error}; }

McConfig mc_config(std::size_t samples, std::uint64_t seed, unsigned threads) {
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_qig, m) {
  m.doc() = "Square-root state geometry and uncertainty bounds";

  m.def("principal_sqrt", [](const CMatrix& rho) { return principal_sqrt(density(rho)).matrix(); },
        py::arg("rho"));
  m.def("commutator", [](const CMatrix& a, const CMatrix& b) { return commutator(herm(a), herm(b)).matrix(); },
        "i[A, B]", py::arg("a"), py::arg("b"));
  m.def("anticommutator",
        [](const CMatrix& a, const CMatrix& b) { return anticommutator(herm(a), herm(b)).matrix(); });
  m.def("unitary_evolve",
        [](const CMatrix& xi, const CMatrix& h, double t) {
          return unitary_evolve(sqrt_state(xi), herm(h), t).matrix();
        },
        py::arg("xi"), py::arg("h"), py::arg("t"));
  m.def("derivative",
        [](const CMatrix& xi, const CMatrix& h, int order) {
          return derivatives_unitary(herm(xi), herm(h), order).matrix();
        },
        py::arg("xi"), py::arg("h"), py::arg("order") = 1);

  m.def("variance", [](const CMatrix& rho, const CMatrix& h) { return variance(density(rho), herm(h)); },
        py::arg("rho"), py::arg("h"));
  m.def("skew_information",
        [](const CMatrix& rho, const CMatrix& h) { return skew_information(density(rho), herm(h)); },
        py::arg("rho"), py::arg("h"));
  m.def("skew_second", [](const CMatrix& rho, const CMatrix& h) { return skew_second(density(rho), herm(h)); },
        py::arg("rho"), py::arg("h"));
  m.def("velocity_sq", [](const CMatrix& xi, const CMatrix& h) { return velocity_sq(sqrt_state(xi), herm(h)); },
        py::arg("xi"), py::arg("h"));
  m.def("skew_moment", [](const CMatrix& xi, const CMatrix& h, int k) {
    return skew_moment(sqrt_state(xi), herm(h), k);
  });

  m.def("make_locally_unbiased",
        [](const CMatrix& xi, const CMatrix& h, double reference_time) {
          return make_locally_unbiased(sqrt_state(xi), herm(h), reference_time).matrix.matrix();
        },
        py::arg("xi"), py::arg("h"), py::arg("reference_time") = 0.0);
  m.def("_bound_report_json",
        [](const CMatrix& xi, const CMatrix& h, const CMatrix& t, double reference_time) {
          return to_json(bound_report(sqrt_state(xi), herm(h), EstimatorT{herm(t), reference_time})).dump();
        },
        py::arg("xi"), py::arg("h"), py::arg("t"), py::arg("reference_time") = 0.0);
  m.def("_higher_order_bound_json",
        [](const CMatrix& xi, const CMatrix& h, const CMatrix& t, int max_order, double reference_time) {
          return to_json(higher_order_bound(sqrt_state(xi), herm(h), EstimatorT{herm(t), reference_time},
                                            max_order))
              .dump();
        },
        py::arg("xi"), py::arg("h"), py::arg("t"), py::arg("max_order") = 3,
        py::arg("reference_time") = 0.0);

  m.def("_sqrt_preimages_json", [](double a, double b, double c) {
    const QubitDensityParams q = QubitDensityParams::make(a, b, c);
    return to_json(sqrt_preimages(q), q).dump();
  });

  m.def("fisher_rao_analytic",
        [](const std::string& family, const std::vector<double>& theta) {
          return fisher_rao_analytic(family_by_name(family), theta).components;
        },
        py::arg("family"), py::arg("theta"));
  m.def("fisher_rao_mc",
        [](const std::string& family, const std::vector<double>& theta, std::size_t samples,
           std::uint64_t seed, unsigned threads) {
          const ParamFamily f = family_by_name(family);
          py::gil_scoped_release release;
          return metric_pair(fisher_rao_mc(f, theta, mc_config(samples, seed, threads)));
        },
        "Returns (components, stderr).", py::arg("family"), py::arg("theta"),
        py::arg("samples") = 100000, py::arg("seed") = 0, py::arg("threads") = 1);
  m.def("haar_moment",
        [](const CMatrix& a, const CMatrix& b, std::size_t samples, std::uint64_t seed) {
          const Estimate e = haar_moment(herm(a), herm(b), mc_config(samples, seed, 1));
          return std::pair{e.value, e.std_error};
        },
        py::arg("a"), py::arg("b"), py::arg("samples") = 100000, py::arg("seed") = 0);
  m.def("gibbons_expectation",
        [](const CMatrix& a, const CMatrix& rho, std::size_t samples, std::uint64_t seed) {
          const Estimate e = gibbons_expectation(herm(a), density(rho), mc_config(samples, seed, 1));
          return std::pair{e.value, e.std_error};
        },
        py::arg("a"), py::arg("rho"), py::arg("samples") = 100000, py::arg("seed") = 0);

  m.def("random_density", [](std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_density_hs(dim, rng).matrix();
  });
  m.def("random_hermitian", [](std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_hermitian(dim, rng).matrix();
  });

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code = 0;
          {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        "Runs the qig command line in-process; returns (exit_code, stdout, stderr).");
}
