#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "report.hpp"

namespace py = pybind11;
using namespace hfk;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object run(const Diagram& d, const std::string& ring, bool interleaved, int threads) {
  PipelineOptions opt;
  opt.ring = Ring::parse(ring);
  opt.interleaved = interleaved;
  opt.threads = threads;
  KnotReport r;
  {
    py::gil_scoped_release release;
    r = compute_report(d, opt);
  }
  return to_python(report_json(r, false));
}

}  // namespace

PYBIND11_MODULE(hfkpy, m) {
  m.doc() = "Knot Floer homology of bridge-position diagrams";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DiagramError>(m, "DiagramError", PyExc_ValueError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);

  m.def(
      "compute",
      [](const std::string& text, const std::string& ring, bool interleaved, int threads, const std::string& name) {
        return run(parse_diagram(text, name), ring, interleaved, threads);
      },
      py::arg("text"), py::arg("ring") = "f2", py::arg("interleaved") = true, py::arg("threads") = 1,
      py::arg("name") = "", "Compute homology and invariants of a diagram given as text");
  m.def(
      "compute_file",
      [](const std::string& path, const std::string& ring, bool interleaved, int threads) {
        return run(load_diagram(path), ring, interleaved, threads);
      },
      py::arg("path"), py::arg("ring") = "f2", py::arg("interleaved") = true, py::arg("threads") = 1,
      "Compute homology and invariants of a diagram file");
  m.def(
      "braid_closure",
      [](int strands, const std::vector<int>& word) { return to_text(braid_closure(strands, word)); },
      py::arg("strands"), py::arg("word"), "Diagram text of the plat closure of a braid word");
  m.attr("__version__") = HFK_VERSION;
}
