#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "betaspec/continuity.hpp"
#include "betaspec/errors.hpp"
#include "betaspec/functional.hpp"
#include "betaspec/quartic.hpp"
#include "betaspec/report.hpp"
#include "betaspec/spectra.hpp"
#include "betaspec/transfer.hpp"

namespace py = pybind11;
using namespace betaspec;

namespace {

// Reports cross the boundary as JSON text; the package decodes them into dicts.
std::string text(const report::json& j) { return j.dump(); }

SpectrumOptions spectrum_options(double tol, double ceiling) {
  SpectrumOptions o;
  o.tol = tol;
  o.ceiling = ceiling;
  return o;
}

StepFunction centered_indicator(const BetaSpec& beta, double x) {
  const Point p = beta.point(x);
  return combine(beta, 1.0, indicator(beta, p), -x, constant(beta));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectra of beta-transformation transfer operators";

  static py::exception<Error> error(m, "BetaspecError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object kind = py::str(std::string(to_string(e.kind())));
      PyErr_SetObject(error.ptr(), py::make_tuple(kind, e.what()).ptr());
    }
  });

  py::class_<BetaSpec>(m, "Beta")
      .def(py::init([](const std::string& spec, int horizon) { return BetaSpec::parse(spec, horizon); }),
           py::arg("spec"), py::arg("horizon") = BetaSpec::kDefaultHorizon)
      .def_property_readonly("value", &BetaSpec::value)
      .def_property_readonly("definition", &BetaSpec::definition)
      .def_property_readonly("floor", &BetaSpec::floor)
      .def_property_readonly("horizon", &BetaSpec::horizon)
      .def("__repr__", [](const BetaSpec& b) { return "Beta('" + b.definition() + "')"; });

  py::class_<Eigenvalue>(m, "Eigenvalue")
      .def_readonly("lam", &Eigenvalue::lambda)
      .def_readonly("z", &Eigenvalue::z)
      .def_readonly("multiplicity", &Eigenvalue::multiplicity)
      .def_readonly("residual", &Eigenvalue::residual)
      .def_property_readonly("leading", [](const Eigenvalue& e) { return e.kind == EigenKind::Leading; })
      .def("__repr__", [](const Eigenvalue& e) { return "Eigenvalue(" + py::repr(py::cast(e.lambda)).cast<std::string>() + ")"; });

  m.def("eigenvalues",
        [](const BetaSpec& b, double tol, double ceiling) {
          return locate_eigenvalues(b, spectrum_options(tol, ceiling)).eigenvalues;
        },
        py::arg("beta"), py::arg("tol") = 0.0, py::arg("ceiling") = 0.95);

  m.def("_spectrum",
        [](const BetaSpec& b, double tol, double ceiling) {
          return text(report::to_json(locate_eigenvalues(b, spectrum_options(tol, ceiling))));
        },
        py::arg("beta"), py::arg("tol") = 0.0, py::arg("ceiling") = 0.95);

  m.def("greedy_digits",
        [](const BetaSpec& b, const std::string& x, int n) { return greedy_digits(b, parse_decimal(x), n).greedy; },
        py::arg("beta"), py::arg("x"), py::arg("n"));

  m.def("quasi_greedy_digits",
        [](const BetaSpec& b, const std::string& x, int n) {
          return quasi_greedy_digits(b, parse_decimal(x), n).quasi_greedy;
        },
        py::arg("beta"), py::arg("x"), py::arg("n"));

  m.def("eigenfunctional",
        [](const BetaSpec& b, cplx lambda, double x, double tol) { return eval_F(b, lambda, x, tol).value; },
        py::arg("beta"), py::arg("lam"), py::arg("x"), py::arg("tol") = 1e-12);

  m.def("continuity_residual", &continuity_residual, py::arg("beta"), py::arg("lam"), py::arg("tol") = 1e-12);

  m.def("_track",
        [](const BetaSpec& b, cplx lambda, double window, int steps) {
          return text(report::to_json(track(b, lambda, b.value() - window, b.value() + window, steps)));
        },
        py::arg("beta"), py::arg("lam"), py::arg("window"), py::arg("steps"));

  m.def("_holder",
        [](const BetaSpec& b, cplx lambda) { return text(report::to_json(holder_constants(b, lambda))); },
        py::arg("beta"), py::arg("lam"));

  m.def("_decay",
        [](const BetaSpec& b, bool construct, int n_max, int n_lo, double x) {
          StepFunction f;
          if (construct) {
            const auto sub = subleading(b);
            const std::vector<Eigenvalue> ev = sub ? sub->eigenvalues : std::vector<Eigenvalue>{};
            f = good_decay_construct(b, ev);
          } else {
            f = centered_indicator(b, x);
          }
          return text(report::to_json(decay_fit(b, f, n_max, n_lo)));
        },
        py::arg("beta"), py::arg("construct") = false, py::arg("n_max") = 40, py::arg("n_lo") = -1,
        py::arg("x") = 0.37);

  m.def("_verify",
        [](const std::string& family, int n, double tol) {
          return text(report::to_json(verify_example(QuarticFamily(parse_family(family), n), tol)));
        },
        py::arg("family"), py::arg("n"), py::arg("tol") = 1e-9);

  m.def("_scan",
        [](const std::string& lo, const std::string& hi, int grid, int threads) {
          py::gil_scoped_release release;
          return text(report::to_json(scan_beta_range(parse_decimal(lo), parse_decimal(hi), grid, threads)));
        },
        py::arg("lo"), py::arg("hi"), py::arg("grid"), py::arg("threads") = 1);
}
