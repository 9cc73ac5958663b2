#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rfm/classify.hpp"
#include "rfm/cli.hpp"
#include "rfm/constructions.hpp"
#include "rfm/dsl.hpp"
#include "rfm/presets.hpp"
#include "rfm/report.hpp"
#include "rfm/surgery.hpp"

namespace py = pybind11;
using namespace rfm;

namespace {

// Structured results cross the boundary as JSON text; the Python side
// decodes them.

Descriptor load_descriptor(const std::string& text) {
  const ParsedFile f = parse(text);
  if (!f.diagnostics.empty()) throw Error(ErrorKind::Parse, format_diagnostic(f.diagnostics.front()));
  if (f.descriptor()) return *f.descriptor();
  throw Error(ErrorKind::Parse, "expected a roundfold block");
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Round fold map descriptors, Reeb homology and classification.";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::reinterpret_borrow<py::object>(error.ptr());
      const std::string kind(to_string(e.kind()));
      const std::string what = e.what();
      py::object exc = type(what.rfind(kind, 0) == 0 ? what : kind + ": " + what);
      py::setattr(exc, "kind", py::str(kind));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("check", [](const std::string& text) {
    const ParsedFile f = parse(text);
    Json diags = Json::array();
    for (const auto& d : f.diagnostics) diags.push_back(to_json(d));
    return dump(diags);
  }, py::arg("text"), "Diagnostics of a .rfm document as JSON.");

  m.def("normalize", [](const std::string& text) { return to_text(normalize(parse_manifold(text))); },
        py::arg("expr"));

  m.def("validate", [](const std::string& text) { return dump(to_json(validate(load_descriptor(text)))); },
        py::arg("text"));
  m.def("homology", [](const std::string& text) {
    return dump(to_json(homology(build_reeb(load_descriptor(text)).complex)));
  }, py::arg("text"));
  m.def("reeb", [](const std::string& text) { return dump(to_json(build_reeb(load_descriptor(text)))); },
        py::arg("text"));
  m.def("reeb_dot", [](const std::string& text) {
    const Descriptor d = load_descriptor(text);
    return forest_dot(d, component_forest(d));
  }, py::arg("text"));
  m.def("euler", [](const std::string& text) { return euler_characteristic(load_descriptor(text)); },
        py::arg("text"));
  m.def("prop1", [](const std::string& text) { return dump(to_json(prop1_report(load_descriptor(text)))); },
        py::arg("text"));
  m.def("classify", [](const std::string& text) { return dump(to_json(classify(load_descriptor(text)))); },
        py::arg("text"));
  m.def("dim5", [](const std::string& expr) { return dump(to_json(dim5_recognize(parse_manifold(expr)))); },
        py::arg("expr"));

  m.def("synthesize", [](const std::string& expr, std::optional<int> n) {
    return print(synthesize(parse_manifold(expr), n));
  }, py::arg("expr"), py::arg("n") = py::none());
  m.def("combine", [](const std::string& f1, const std::string& site, const std::string& f2, bool assume) {
    return print(combine(load_descriptor(f1), site, load_descriptor(f2), assume).descriptor);
  }, py::arg("f1"), py::arg("site"), py::arg("f2"), py::arg("assume_null_homotopic") = false);
  m.def("decompose", [](const std::string& text, std::size_t region, const std::string& site) {
    const DecomposeResult r = decompose(load_descriptor(text), region, site);
    return py::make_tuple(print(r.f1), print(r.f2));
  }, py::arg("text"), py::arg("region"), py::arg("site"));

  m.def("preset", [](const std::string& call) { return print(preset(call).descriptor); }, py::arg("call"));
  m.def("list_presets", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : preset_catalog()) out.emplace_back(e.signature, e.description);
    return out;
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the rfm command line; returns (exit code, stdout, stderr).");
}
