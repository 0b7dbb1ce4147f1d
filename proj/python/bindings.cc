// Thin pybind11 layer. Structured results cross the boundary as the same JSON
// documents the CLI emits; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aeadlint/diagnostics.h"
#include "aeadlint/errors.h"
#include "aeadlint/report.h"
#include "aeadlint/rules.h"
#include "aeadlint/source.h"
#include "aeadlint/stats.h"
#include "aeadlint/validation.h"

namespace py = pybind11;
using namespace aeadlint;

namespace {

std::string ScanText(const std::string& text, const std::string& path) {
  return RenderScanJson({Scan(SourceUnit::FromText(path, text))});
}

std::string ScanPaths(const std::vector<std::string>& paths) {
  std::vector<ScanReport> reports;
  for (const std::string& p : paths) reports.push_back(Scan(LoadSource(p)));
  return RenderScanJson(reports);
}

std::string Sarif(const std::vector<std::string>& paths) {
  std::vector<ScanReport> reports;
  for (const std::string& p : paths) reports.push_back(Scan(LoadSource(p)));
  return RenderSarif(reports);
}

std::string Validate(const std::string& corpus, const std::string& suite) {
  auto cases = BuildCorpusManifest(corpus);
  if (suite != "all") cases = SelectSuite(cases, suite);
  return RenderValidationJson(RunValidation(cases));
}

std::pair<double, double> Wilson(std::int64_t successes, std::int64_t trials,
                                 double confidence) {
  const Interval ci = WilsonInterval({successes, trials}, confidence);
  return {ci.lower, ci.upper};
}

py::dict ChiSquareDict(const std::vector<std::vector<std::int64_t>>& counts,
                       std::optional<bool> yates) {
  ContingencyTable t;
  t.counts = counts;
  const ChiSquareResult r = yates ? ChiSquare(t, *yates) : ChiSquareDefault(t);
  py::dict d;
  d["statistic"] = r.statistic;
  d["df"] = r.df;
  d["p_value"] = r.p_value;
  d["cramers_v"] = r.cramers_v;
  d["yates_applied"] = r.yates_applied;
  d["low_expected_warning"] = r.low_expected_warning;
  return d;
}

std::string Classify(const std::string& stream) {
  return std::string(ErrorClassName(DominantClass(ParseDiagnostics(stream))));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the aeadlint package.";
  m.attr("__version__") = std::string(kToolVersion);
  static py::exception<Error> error(m, "AeadlintError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("scan_text_json", &ScanText, py::arg("text"), py::arg("path") = "input.rs");
  m.def("scan_paths_json", &ScanPaths, py::arg("paths"));
  m.def("sarif", &Sarif, py::arg("paths"));
  m.def("validate_json", &Validate, py::arg("corpus"), py::arg("suite") = "benchmark");
  m.def("wilson", &Wilson, py::arg("successes"), py::arg("trials"),
        py::arg("confidence") = 0.95);
  m.def("chi_square", &ChiSquareDict, py::arg("counts"), py::arg("yates") = py::none());
  m.def("classify", &Classify, py::arg("stream"));
}
