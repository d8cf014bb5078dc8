#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "brdkit/casefile.hpp"
#include "brdkit/error.hpp"
#include "brdkit/evaluator.hpp"
#include "brdkit/gatecrasher.hpp"
#include "brdkit/report.hpp"

namespace py = pybind11;
using namespace brdkit;

namespace {

ReportFormat format_of(const std::string& text) {
  const auto f = parse_report_format(text);
  if (!f) throw PreconditionError("format must be 'text' or 'json'");
  return *f;
}

template <typename T>
T parse_or_throw(std::optional<T> value, const std::string& what, const std::string& text) {
  if (!value) throw PreconditionError("unknown " + what + " '" + text + "'");
  return *value;
}

CaseModel read_case(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CaseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_case(ss.str());
}

py::list diagnostics_list(const Diagnostics& d) {
  py::list out;
  for (const auto& item : d.items) {
    out.append(py::make_tuple(item.severity == Diagnostic::Severity::kError ? "error" : "warning", item.code,
                              item.message));
  }
  return out;
}

std::string credence(const CaseModel& c, const std::string& formula, const std::string& bundle,
                     const std::optional<std::string>& narration, const std::vector<std::string>& extra) {
  const ParseContext ctx = c.parse_context();
  const BundleTag tag = parse_or_throw(parse_bundle_tag(bundle), "bundle", bundle);
  std::optional<std::size_t> index;
  if (narration) {
    index = c.narration_index(*narration);
    if (!index) throw PreconditionError("unknown narration '" + *narration + "'");
  }
  FormulaSet more;
  for (const auto& e : extra) more.insert(parse_formula(e, ctx));
  return Evaluator(c).p_variant(tag, parse_formula(formula, ctx), more, index).to_string();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact partial-credence evaluation of legal narrations";

  py::register_exception<Error>(m, "BrdkitError", PyExc_ValueError);

  py::class_<CaseModel>(m, "Case")
      .def_static("from_json", &load_case, py::arg("document"), "Parse and validate a case document.")
      .def_static("from_file", &read_case, py::arg("path"))
      .def("to_json", &to_document)
      .def_property_readonly("atoms", [](const CaseModel& c) { return c.atoms; })
      .def_property_readonly("narrations", [](const CaseModel& c) {
        std::vector<std::string> ids;
        for (const auto& n : c.narrations) ids.push_back(n.id);
        return ids;
      })
      .def("validate", [](const CaseModel& c) { return diagnostics_list(validate_case(c)); },
           "List of (severity, code, message).")
      .def("evaluate", [](const CaseModel& c, const std::string& format) {
             return format_report(Evaluator(c).evaluate(), format_of(format));
           }, py::arg("format") = "json")
      .def("audit", [](const CaseModel& c, const std::string& format) {
             return format_report(audit_case(c), format_of(format));
           }, py::arg("format") = "json")
      .def("credence", &credence, py::arg("formula"), py::arg("bundle") = "evidential",
           py::arg("narration") = std::nullopt, py::arg("extra") = std::vector<std::string>{},
           "Credence as \"p/q\" or an \"undefined\" marker.")
      .def("commitment_closure", [](const CaseModel& c, const std::string& narration) {
             const auto i = c.narration_index(narration);
             if (!i) throw PreconditionError("unknown narration '" + narration + "'");
             std::vector<std::string> out;
             for (const auto& f : Evaluator(c).commitment_closure(*i).content) out.push_back(f.key());
             return out;
           }, py::arg("narration"));

  m.def("gatecrasher_case", [](long long n, const std::string& variant) {
          GatecrasherSpec spec;
          spec.n = n;
          spec.variant = parse_or_throw(parse_gatecrasher_variant(variant), "variant", variant);
          const auto problems = spec.problems();
          if (!problems.empty()) throw PreconditionError(problems.front());
          return generate_case(spec);
        }, py::arg("n"), py::arg("variant") = "v1");
  m.def("gatecrasher_analytic", [](long long n, const std::string& query) {
          return to_string(analytic_gatecrasher(n, parse_or_throw(parse_analytic_query(query), "query", query)));
        }, py::arg("n"), py::arg("query") = "posterior");
  m.def("gatecrasher_suite", [](long long n, const std::string& mode, const std::string& format) {
          const auto md = parse_or_throw(parse_gatecrasher_mode(mode), "mode", mode);
          return format_report(run_gatecrasher_suite(n, {}, md), format_of(format));
        }, py::arg("n"), py::arg("mode") = "enumerate", py::arg("format") = "json");
  m.def("parse_formula", [](const std::string& text) { return parse_formula(text).key(); }, py::arg("text"),
        "Canonical rendering of a formula.");
}
