// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "aeadlint/diagnostics.h"
#include "aeadlint/errors.h"
#include "aeadlint/experiment.h"
#include "aeadlint/report.h"
#include "aeadlint/rules.h"
#include "aeadlint/stats.h"
#include "aeadlint/validation.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aeadlint;

namespace {

const fs::path kSource = AEADLINT_SOURCE_DIR;

// Collects the reasons a criterion failed.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <typename T>
  void Equal(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream s;
      s << what << ": got " << got << ", want " << want;
      failures_.push_back(s.str());
    }
  }
  void Near(double got, double want, double tol, const std::string& what) {
    if (!(std::fabs(got - want) <= tol)) {
      std::ostringstream s;
      s << what << ": got " << got << ", want " << want << " +/- " << tol;
      failures_.push_back(s.str());
    }
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

double Seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

SubprocessResult Cli(std::vector<std::string> args) {
  args.insert(args.begin(), AEADLINT_CLI);
  return RunSubprocess(args, kSource, {}, std::chrono::seconds(300));
}

void ValidationScores(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = Cli({"validate", "corpus", "--json"});
  const double elapsed = Seconds(std::chrono::steady_clock::now() - start);
  c.Equal(r.exit_code, 0, "validate exit status");
  if (r.exit_code != 0) return;
  const json doc = json::parse(r.stdout_text);
  c.Equal(doc["tp"].get<int>(), 14, "TP");
  c.Equal(doc["fp"].get<int>(), 0, "FP");
  c.Equal(doc["fn"].get<int>(), 4, "FN");
  c.Equal(doc["tn"].get<int>(), 2, "TN");
  c.Near(doc["precision"].get<double>(), 1.0, 1e-12, "precision");
  c.Near(doc["recall"].get<double>(), 14.0 / 18.0, 1e-12, "recall");
  c.Near(doc["f1"].get<double>(), 28.0 / 32.0, 1e-12, "F1");
  c.Near(doc["accuracy"].get<double>(), 16.0 / 20.0, 1e-12, "accuracy");
  const std::map<std::string, std::pair<int, int>> per_cwe = {
      {"CWE-330", {6, 6}}, {"CWE-329", {4, 6}}, {"CWE-798", {4, 6}}};
  for (const auto& [cwe, want] : per_cwe) {
    const json& t = doc["per_cwe"][cwe];
    c.Equal(t["detected"].get<int>(), want.first, cwe + " detected");
    c.Equal(t["total"].get<int>(), want.second, cwe + " total");
  }
  c.Equal(doc["per_cwe"].size(), std::size_t{3}, "number of CWEs");
  c.Expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s exceeds 5 s");
}

void SyntheticSuite(Check& c) {
  const auto cases = SelectSuite(BuildCorpusManifest(kSource / "corpus"), "synthetic");
  c.Equal(cases.size(), std::size_t{6}, "synthetic cases");
  const ScoreReport report = RunValidation(cases);
  c.Equal(report.fp, 0, "false positives");
  int as_designed = 0;
  for (const CaseResult& r : report.cases) {
    as_designed += r.as_designed;
    c.Expect(r.as_designed, r.case_id + " not as designed");
  }
  c.Equal(as_designed, 6, "expected outcomes");
}

std::map<std::tuple<int, Severity>, int> Tally(const std::vector<Finding>& findings) {
  std::map<std::tuple<int, Severity>, int> out;
  for (const Finding& f : findings) ++out[{f.cwe, f.severity}];
  return out;
}

void SnippetRegression(Check& c) {
  const auto load = [](const char* name) {
    return Analyze(LoadSource(kSource / "corpus" / "regression" / name));
  };
  const auto multi = load("multi_call_reuse.rs");
  c.Equal(multi.size(), std::size_t{3}, "multi-call snippet finding count");
  const auto mt = Tally(multi);
  c.Equal(mt.count({329, Severity::kCritical}) ? mt.at({329, Severity::kCritical}) : 0, 1,
          "multi-call CWE-329 CRITICAL");
  c.Equal(mt.count({252, Severity::kMedium}) ? mt.at({252, Severity::kMedium}) : 0, 2,
          "multi-call CWE-252 MEDIUM");

  const auto key = load("byte_string_key.rs");
  c.Equal(key.size(), std::size_t{1}, "literal key finding count");
  if (key.size() == 1) {
    c.Equal(key[0].cwe, 798, "literal key CWE");
    c.Expect(key[0].severity == Severity::kCritical, "literal key severity");
  }
  c.Equal(load("initialize_then_fill.rs").size(), std::size_t{0},
          "initialize-then-fill finding count");
}

void StatisticsOracle(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  struct Ci {
    Proportion p;
    double lower, upper;  // percent
  };
  for (const Ci& ci : std::vector<Ci>{{{56, 240}, 18.4, 29.1},
                                      {{4, 60}, 2.6, 15.9},
                                      {{2, 56}, 1.0, 12.1},
                                      {{32, 56}, 44.1, 69.2},
                                      {{21, 60}, 24.2, 47.6},
                                      {{17, 60}, 18.5, 40.8},
                                      {{14, 60}, 14.4, 35.4},
                                      {{18, 80}, 14.7, 32.8},
                                      {{20, 80}, 16.8, 35.5},
                                      {{41, 120}, 26.3, 43.0},
                                      {{15, 120}, 7.7, 19.6}}) {
    const Interval got = WilsonInterval(ci.p);
    const std::string label = std::to_string(ci.p.successes) + "/" + std::to_string(ci.p.trials);
    c.Near(100 * got.lower, ci.lower, 0.1, label + " lower");
    c.Near(100 * got.upper, ci.upper, 0.1, label + " upper");
  }

  auto table = [](std::vector<std::pair<int, int>> groups) {
    std::vector<std::string> labels;
    std::vector<Proportion> props;
    for (auto [s, n] : groups) {
      labels.push_back(std::to_string(labels.size()));
      props.push_back({s, n});
    }
    return ContingencyTable::FromProportions(labels, props);
  };
  const auto prompt = ChiSquareDefault(table({{21, 60}, {17, 60}, {14, 60}, {4, 60}}));
  c.Near(prompt.statistic, 14.72, 0.02, "prompt chi-square");
  c.Equal(prompt.df, 3, "prompt df");
  c.Near(prompt.cramers_v, 0.248, 0.001, "prompt V");
  c.Near(prompt.p_value, 0.002, 0.002, "prompt p");

  const auto model = ChiSquareDefault(table({{18, 80}, {20, 80}, {18, 80}}));
  c.Near(model.statistic, 0.19, 0.02, "model chi-square");
  c.Equal(model.df, 2, "model df");
  c.Near(model.cramers_v, 0.028, 0.001, "model V");
  c.Near(model.p_value, 0.911, 0.002, "model p");

  const auto algo = ChiSquareDefault(table({{41, 120}, {15, 120}}));
  c.Expect(algo.yates_applied, "Yates not applied to the 2x2 table");
  c.Near(algo.statistic, 14.56, 0.02, "algorithm chi-square");
  c.Equal(algo.df, 1, "algorithm df");
  c.Near(algo.cramers_v, 0.246, 0.001, "algorithm V");

  const double elapsed = Seconds(std::chrono::steady_clock::now() - start);
  c.Expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s exceeds 1 s");
}

void ReplayExperiment(Check& c) {
  const fs::path dir = fs::temp_directory_path() /
                       ("aeadlint-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path results = dir / "replay.jsonl";
  const auto run = Cli({"experiment", "run", "--config", "configs/replay.json", "--mode",
                        "replay", "--results", results.string()});
  c.Equal(run.exit_code, 0, "experiment run exit status");

  const FixtureManifest manifest = LoadFixtureManifest(kSource / "fixtures" / "generations");
  c.Expect(manifest.samples.size() >= 48, "fewer than 48 fixtures");
  std::map<std::tuple<std::string, Algorithm, Strategy>, int> want, got;
  for (const FixtureSample& s : manifest.samples) {
    want[{s.key.model, s.key.algorithm, s.key.strategy}] += s.compiled;
  }
  c.Equal(want.size(), std::size_t{24}, "fixture cells");
  if (fs::exists(results)) {
    const ExperimentMatrix matrix = ReadResultsStore(results);
    for (const SampleResult& s : matrix.samples) {
      c.Expect(s.error.empty(), s.key.Id() + ": " + s.error);
      got[{s.key.model, s.key.algorithm, s.key.strategy}] += s.compilation.compiled;
    }
    c.Expect(got == want, "per-cell compiled counts differ from the fixture manifest");
    for (const std::string& line : CompareWithManifest(matrix, manifest)) c.Expect(false, line);
  } else {
    c.Expect(false, "no results store written");
  }

  const auto report = Cli({"experiment", "report", "--results", results.string(), "--fixtures",
                           (kSource / "fixtures" / "generations").string()});
  c.Equal(report.exit_code, 0, "experiment report exit status");
  for (const char* title : {"Compilation Success Rate by Model",
                            "Compilation Success Rate by Prompt Type",
                            "Compilation Success Rate by Algorithm"}) {
    c.Expect(report.stdout_text.find(title) != std::string::npos,
             std::string("report lacks table '") + title + "'");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
}

void PropertySuites(Check& c) {
  const auto r = RunSubprocess({AEADLINT_PROPERTY_TESTS, "--gtest_brief=1"}, kSource, {},
                               std::chrono::seconds(540));
  c.Equal(r.exit_code, 0, "property suite exit status");
  if (r.exit_code != 0) c.Expect(false, r.stdout_text);
}

void DiagnosticsTaxonomy(Check& c) {
  c.Expect(ClassForCode("E0599") == ErrorClass::kAPIHallucination, "E0599");
  c.Expect(ClassForCode("E0432") == ErrorClass::kUnresolvedImport, "E0432");
  c.Expect(ClassForCode("E0277") == ErrorClass::kTraitError, "E0277");
  c.Expect(ClassForCode("E0308") == ErrorClass::kTypeError, "E0308");

  const fs::path dir = kSource / "fixtures" / "diagnostics";
  std::ifstream in(dir / "labels.json");
  const json labels = json::parse(in);
  std::map<ErrorClass, int> per_class;
  int matched = 0;
  for (const auto& [id, label] : labels.items()) {
    std::ifstream stream(dir / (id + ".jsonl"));
    std::stringstream ss;
    ss << stream.rdbuf();
    const ErrorClass got = DominantClass(ParseDiagnostics(ss.str()));
    const auto want = ParseErrorClass(label.get<std::string>());
    c.Expect(want.has_value(), id + ": bad label");
    if (want) ++per_class[*want];
    if (want && got == *want) {
      ++matched;
    } else {
      c.Expect(false, id + ": got " + std::string(ErrorClassName(got)));
    }
  }
  c.Expect(labels.size() >= 12, "fewer than 12 streams");
  c.Equal(matched, static_cast<int>(labels.size()), "streams matching labels");
  for (ErrorClass cls : kAllErrorClasses) {
    if (cls == ErrorClass::kNoError) continue;
    c.Expect(per_class[cls] >= 3, std::string(ErrorClassName(cls)) + " has fewer than 3 streams");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"validation scores on the benchmark corpus", ValidationScores},
      {"synthetic suite", SyntheticSuite},
      {"snippet regressions", SnippetRegression},
      {"statistics oracle", StatisticsOracle},
      {"replay-mode experiment", ReplayExperiment},
      {"property suites", PropertySuites},
      {"diagnostics taxonomy", DiagnosticsTaxonomy},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = check.failures().empty();
    failed += !ok;
    std::printf("%s criterion %zu: %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const std::string& f : check.failures()) std::printf("    %s\n", f.c_str());
  }
  std::fflush(stdout);
  return failed;
}
