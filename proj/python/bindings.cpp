#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "maxiset/besov.hpp"
#include "maxiset/chisq.hpp"
#include "maxiset/cvm.hpp"
#include "maxiset/error.hpp"
#include "maxiset/experiments.hpp"
#include "maxiset/io.hpp"
#include "maxiset/kernel.hpp"
#include "maxiset/minimax.hpp"
#include "maxiset/quadratic.hpp"
#include "maxiset/sampling.hpp"

namespace py = pybind11;
using namespace maxiset;

namespace {

Spectrum make_spectrum(const std::string& basis, std::vector<std::complex<double>> values) {
  return Spectrum(basis_from_string(basis), std::move(values));
}

// Tables cross the boundary as their JSON text; the Python side parses it.
std::string table_json(const Table& t) {
  std::ostringstream os;
  write_json(os, t);
  return os.str();
}

ExperimentConfig config_from_text(const std::string& text) {
  return resolve_config(nlohmann::json::parse(text));
}

py::dict report_dict(const TestReport& r) {
  py::dict d;
  d["family"] = r.family;
  d["statistic"] = r.statistic;
  d["centering"] = r.centering;
  d["scale"] = r.scale;
  d["standardized"] = r.standardized;
  d["threshold"] = r.threshold;
  d["reject"] = r.reject;
  d["alpha"] = r.alpha;
  d["predicted_type2"] = r.predicted_type2 ? py::cast(*r.predicted_type2) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_maxiset, m) {
  m.doc() = "Signal-detection tests, Besov-ball geometry and minimax designs";

  const auto& base = py::register_exception<Error>(m, "MaxisetError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base);
  py::register_exception<InfeasibleDesign>(m, "InfeasibleDesign", base);
  py::register_exception<NumericFailure>(m, "NumericFailure", base);
  py::register_exception<IoFailure>(m, "IoFailure", base);

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init(&make_spectrum), py::arg("basis"), py::arg("values"))
      .def_property_readonly("basis", [](const Spectrum& s) { return std::string(to_string(s.basis())); })
      .def_property_readonly("values", [](const Spectrum& s) {
        return std::vector<std::complex<double>>(s.values().begin(), s.values().end());
      })
      .def("energy", &Spectrum::energy)
      .def("__len__", &Spectrum::size);

  m.def("besov_seminorm", [](const Spectrum& theta, double s) { return besov_seminorm(theta, s).value; },
        py::arg("theta"), py::arg("s"));
  m.def(
      "project_besov",
      [](const Spectrum& theta, double s, double P0, double tol) {
        return project_besov(theta, BesovBall{s, P0, theta.basis()}, tol);
      },
      py::arg("theta"), py::arg("s"), py::arg("P0"), py::arg("tol") = 1e-13);
  m.def(
      "sample_sequence_model",
      [](const Spectrum& theta, std::int64_t n, double sigma, std::uint64_t seed) {
        return sample_sequence_model(theta, n, sigma, seed).y;
      },
      py::arg("theta"), py::arg("n"), py::arg("sigma"), py::arg("seed"));

  m.def(
      "quadratic_test",
      [](const Spectrum& y, std::int64_t n, double gamma, double alpha, double sigma) {
        const auto c = example_coefficients(n, gamma, y.size(), sigma);
        return report_dict(quadratic_test(SequenceObservation{y, n, sigma}, c, alpha));
      },
      py::arg("y"), py::arg("n"), py::arg("gamma") = 2.0, py::arg("alpha") = 0.05,
      py::arg("sigma") = 1.0);
  m.def(
      "kernel_kappa2", [](const std::string& name) { return kernel_constants(Kernel::by_name(name)).kappa2; },
      py::arg("kernel"));

  m.def(
      "chisq_statistic", [](std::vector<double> x, int k) { return chisq_statistic(Sample(std::move(x)), k); },
      py::arg("sample"), py::arg("k"));
  m.def(
      "haar_statistic", [](std::vector<double> x, int l) { return haar_statistic(Sample(std::move(x)), l); },
      py::arg("sample"), py::arg("l"));
  m.def(
      "cvm_statistic", [](std::vector<double> x) { return cvm_statistic(Sample(std::move(x))); },
      py::arg("sample"));
  m.def("cvm_population", &cvm_population, py::arg("theta"));

  m.def(
      "solve_design",
      [](double s, double P0, double rho, std::int64_t n, double sigma, std::size_t J) {
        const Design d = solve_design(s, P0, rho, n, sigma, J);
        py::dict out;
        out["k"] = d.k;
        out["k_real"] = d.k_real;
        out["kappa2_plateau"] = d.kappa2_plateau;
        out["kappa2"] = d.kappa2;
        out["A_n"] = d.A_n;
        out["C_n"] = d.C_n;
        out["null_mean"] = d.null_mean;
        out["residual_i2"] = d.residual_i2;
        out["residual_i3"] = d.residual_i3;
        return out;
      },
      py::arg("s"), py::arg("P0"), py::arg("rho"), py::arg("n"), py::arg("sigma") = 1.0,
      py::arg("J") = 0);

  m.def(
      "_simulate",
      [](const std::string& config) {
        const auto c = config_from_text(config);
        py::gil_scoped_release release;
        return table_json(simulation_table(c, run_monte_carlo(c)));
      },
      py::arg("config"));
  m.def(
      "_power_curve",
      [](const std::string& config) {
        const auto c = config_from_text(config);
        py::gil_scoped_release release;
        return table_json(power_curve(c));
      },
      py::arg("config"));
  m.def(
      "_config_hash", [](const std::string& config) { return config_from_text(config).hash_hex(); },
      py::arg("config"));
}
