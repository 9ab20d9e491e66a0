#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pgcl/errors.h"
#include "pgcl/harness.h"
#include "pgcl/serialize.h"

namespace py = pybind11;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
std::string report_json(const std::string& expr, std::size_t homology_bound, std::size_t max_order, bool strict) {
  pgcl::ReportOptions o;
  o.homology_bound = homology_bound;
  o.max_order = max_order;
  o.strict = strict;
  return pgcl::cmd_report(expr, o).dump();
}

std::vector<std::uint64_t> multiplier(const std::string& expr, std::size_t homology_bound) {
  const pgcl::Group g = pgcl::build(*pgcl::parse_expr(expr));
  return pgcl::schur_multiplier_brute(g, homology_bound).invariants.factors();
}

std::string group_json(const std::string& expr, std::size_t max_order) {
  return pgcl::group_to_json(pgcl::build(*pgcl::parse_expr(expr), max_order)).dump();
}

py::tuple sweep(const std::vector<std::uint64_t>& primes, std::size_t max_order, std::size_t homology_bound,
                unsigned workers) {
  pgcl::SweepManifest m;
  m.primes = primes;
  m.max_order = max_order;
  m.homology_bound = homology_bound;
  m.workers = workers;
  m.validate();
  pgcl::SweepResult r;
  {
    py::gil_scoped_release release;
    r = pgcl::run_sweep(m);
  }
  return py::make_tuple(pgcl::sweep_csv(r), pgcl::sweep_json(m, r).dump(), r.exit_code());
}

}  // namespace

PYBIND11_MODULE(_pgcl, m) {
  m.doc() = "p-group capability toolkit";

  static py::exception<pgcl::Error> error(m, "Error");
  static py::exception<pgcl::ParseError> parse_error(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const pgcl::ParseError& e) {
      PyErr_SetString(parse_error.ptr(), e.what());
    } catch (const pgcl::Error& e) {
      PyErr_SetString(error.ptr(), (std::string(e.kind()) + ": " + e.what()).c_str());
    }
  });

  m.attr("SCHEMA") = pgcl::kSchema;
  m.attr("DEFAULT_HOMOLOGY_BOUND") = pgcl::kDefaultHomologyBound;
  m.attr("MAX_HOMOLOGY_BOUND") = pgcl::kMaxHomologyBound;

  m.def(
      "canonical", [](const std::string& expr) { return pgcl::to_string(*pgcl::parse_expr(expr)); }, py::arg("expr"),
      "Canonical text of a group expression.");
  m.def(
      "order", [](const std::string& expr) { return pgcl::expr_order(*pgcl::parse_expr(expr)); }, py::arg("expr"));
  m.def("report_json", &report_json, py::arg("expr"), py::arg("homology_bound") = pgcl::kDefaultHomologyBound,
        py::arg("max_order") = pgcl::kDefaultMaxOrder, py::arg("strict") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("multiplier", &multiplier, py::arg("expr"), py::arg("homology_bound") = pgcl::kDefaultHomologyBound,
        py::call_guard<py::gil_scoped_release>(), "Invariant factors of H2(G; Z) by brute force.");
  m.def("group_json", &group_json, py::arg("expr"), py::arg("max_order") = pgcl::kDefaultMaxOrder);
  m.def("sweep", &sweep, py::arg("primes"), py::arg("max_order") = 64,
        py::arg("homology_bound") = pgcl::kDefaultHomologyBound, py::arg("workers") = 1,
        "Returns (csv, json, exit_code).");
}
