#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bcinv/banach/banach.hpp"
#include "bcinv/cli/job.hpp"

namespace py = pybind11;
using namespace bcinv;
using banach::Mat;

namespace {

// JSON crosses the boundary as text; the python side decodes it.
std::pair<int, std::string> run_job(const std::string& text) {
  const auto job = cli::parse_job(Json::parse(text));
  const auto res = cli::run(job);
  return {res.status, res.report.dump()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "(b,c)-inverses over rings and Banach-algebra representations";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("run_job", &run_job, py::arg("job_json"));
  m.def("csv", [](const std::string& report) { return cli::to_csv(Json::parse(report)); }, py::arg("report_json"));
  m.def("summary", [](const std::string& report) { return cli::summary(Json::parse(report)); },
        py::arg("report_json"));
  m.def("exit_status", [](const std::string& kind) {
    for (int k = 0; k <= static_cast<int>(ErrorKind::PropertyRefuted); ++k)
      if (to_string(static_cast<ErrorKind>(k)) == kind) return cli::exit_status(static_cast<ErrorKind>(k));
    throw py::value_error("unknown error kind " + kind);
  });

  m.def("bc_inverse", &banach::bc_inverse, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("corner_v", &banach::corner_v, py::arg("b"), py::arg("c"));
  m.def("spectral_radius", [](const Mat& x) { return banach::spectrum(x).spectral_radius; }, py::arg("x"));
  m.def("integral", [](const Mat& a, const Mat& v, double tol) {
    return banach::integral_representation(a, v, {.tol = tol}).value;
  }, py::arg("a"), py::arg("v"), py::arg("tol") = 1e-12);
  m.def("series", [](const Mat& a, const Mat& v, std::optional<double> beta) {
    const double b = beta ? *beta : banach::choose_beta(a, v).beta;
    return banach::series_representation(a, v, b).value;
  }, py::arg("a"), py::arg("v"), py::arg("beta") = py::none());
  m.def("limit", [](const Mat& a, const Mat& v) { return banach::limit_representation(a, v).value; }, py::arg("a"),
        py::arg("v"));
  m.def("perturbation_bound", [](const Mat& a, const Mat& b, const Mat& c, double lambda) {
    const auto d = banach::bc_data(a, b, c);
    const auto r = banach::perturbation_bound(a, d.v, d.p, lambda);
    return py::dict(py::arg("measured") = r.measured, py::arg("bound") = r.bound, py::arg("radius") = r.radius,
                    py::arg("holds") = r.holds);
  }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("lambda_"));
}
