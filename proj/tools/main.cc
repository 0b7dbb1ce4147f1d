#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "aeadlint/errors.h"
#include "aeadlint/report.h"

namespace fs = std::filesystem;
using namespace aeadlint;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

int SeverityRank(Severity s) {
  switch (s) {
    case Severity::kCritical: return 3;
    case Severity::kHigh: return 2;
    case Severity::kMedium: return 1;
  }
  return 1;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Files given directly are taken as-is; directories contribute their *.rs
// (or `ext`) files recursively, in sorted order.
std::vector<fs::path> ExpandInputs(const std::vector<std::string>& inputs,
                                   const std::string& ext) {
  std::vector<fs::path> out;
  for (const std::string& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && name.size() >= ext.size() &&
            name.compare(name.size() - ext.size(), ext.size(), ext) == 0) {
          found.push_back(e.path());
        }
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      out.push_back(p);
    } else {
      throw IoError(in + ": no such file or directory");
    }
  }
  return out;
}

ReportFormat FormatOrThrow(const std::string& name, bool allow_sarif) {
  const auto f = ParseReportFormat(name);
  if (!f || (*f == ReportFormat::kSarif && !allow_sarif)) {
    throw ConfigError("unsupported --format " + name + " for this command");
  }
  return *f;
}

// ---- scan ----

struct ScanOptions {
  std::vector<std::string> paths;
  std::string format = "text";
  std::string min_severity = "MEDIUM";
  int jobs = 0;
};

int CmdScan(const ScanOptions& o) {
  const ReportFormat format = FormatOrThrow(o.format, true);
  const auto threshold = ParseSeverity(o.min_severity);
  if (!threshold) throw ConfigError("unknown severity " + o.min_severity);
  const std::vector<fs::path> files = ExpandInputs(o.paths, ".rs");

  std::vector<ScanReport> reports(files.size());
  std::vector<std::string> errors(files.size());
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_workers = std::min<std::size_t>(
      files.size(), o.jobs > 0 ? static_cast<std::size_t>(o.jobs) : hw);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
        try {
          reports[i] = Scan(LoadSource(files[i]));
        } catch (const Error& e) {
          errors[i] = e.what();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();

  bool failed = false;
  std::vector<ScanReport> ok;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "aeadlint: " << errors[i] << "\n";
      failed = true;
    } else {
      ok.push_back(std::move(reports[i]));
    }
  }
  switch (format) {
    case ReportFormat::kText: std::cout << RenderScanText(ok); break;
    case ReportFormat::kJson: std::cout << RenderScanJson(ok); break;
    case ReportFormat::kSarif: std::cout << RenderSarif(ok); break;
  }
  if (failed) return kExitError;
  for (const ScanReport& r : ok) {
    for (const Finding& f : r.findings) {
      if (SeverityRank(f.severity) >= SeverityRank(*threshold)) return kExitFindings;
    }
  }
  return kExitClean;
}

// ---- validate ----

int CmdValidate(const std::string& corpus, const std::string& suite,
                const std::string& format_name) {
  const ReportFormat format = FormatOrThrow(format_name, false);
  const auto all = BuildCorpusManifest(corpus);
  const auto cases = suite == "all" ? all : SelectSuite(all, suite);
  if (cases.empty()) throw ConfigError("no cases in suite " + suite);

  std::vector<ValidationCase> scored;
  std::vector<ValidationCase> exact;
  for (const ValidationCase& c : cases) {
    (c.exact_findings ? exact : scored).push_back(c);
  }
  bool ok = true;
  if (!scored.empty()) {
    const ScoreReport report = RunValidation(scored);
    std::cout << (format == ReportFormat::kJson ? RenderValidationJson(report)
                                                : RenderValidationText(report));
    ok = std::all_of(report.cases.begin(), report.cases.end(),
                     [](const CaseResult& r) { return r.as_designed; });
  }
  if (!exact.empty()) {
    const auto results = RunRegression(exact);
    if (format == ReportFormat::kJson) {
      nlohmann::json arr = nlohmann::json::array();
      for (const RegressionResult& r : results) {
        nlohmann::json expected = nlohmann::json::object();
        nlohmann::json actual = nlohmann::json::object();
        for (const auto& [rule, n] : r.expected) expected[std::string(RuleName(rule))] = n;
        for (const auto& [rule, n] : r.actual) actual[std::string(RuleName(rule))] = n;
        arr.push_back({{"case_id", r.case_id},
                       {"passed", r.passed},
                       {"expected", expected},
                       {"actual", actual}});
      }
      std::cout << nlohmann::json{{"kind", "regression"}, {"cases", arr}}.dump(2)
                << "\n";
    } else {
      std::cout << "Regression: " << results.size() << " snippets\n";
      for (const RegressionResult& r : results) {
        std::cout << "  " << (r.passed ? "ok   " : "FAIL ") << r.case_id << ":";
        for (const auto& [rule, n] : r.actual) std::cout << " " << RuleName(rule) << "=" << n;
        if (r.actual.empty()) std::cout << " no findings";
        std::cout << "\n";
      }
    }
    ok = ok && std::all_of(results.begin(), results.end(),
                           [](const RegressionResult& r) { return r.passed; });
  }
  return ok ? kExitClean : kExitFindings;
}

// ---- classify-errors ----

int CmdClassify(const std::vector<std::string>& inputs, const std::string& labels_path,
                const std::string& format_name) {
  const ReportFormat format = FormatOrThrow(format_name, false);
  std::vector<CompilationOutcome> outcomes;
  for (const fs::path& file : ExpandInputs(inputs, ".jsonl")) {
    const ParsedDiagnostics parsed = ParseDiagnosticStream(ReadFile(file));
    for (const auto& [line, reason] : parsed.malformed) {
      std::cerr << "aeadlint: " << file.string() << ":" << line
                << ": skipped malformed line (" << reason << ")\n";
    }
    std::string id = file.filename().string();
    id = id.substr(0, id.find('.'));
    outcomes.push_back(MakeCompilationOutcome(id, parsed.diagnostics));
  }
  const TaxonomyReport report = BuildTaxonomy(outcomes);
  std::cout << (format == ReportFormat::kJson ? RenderTaxonomyJson(report)
                                              : RenderTaxonomyText(report));
  if (labels_path.empty()) return kExitClean;

  const auto labels = nlohmann::json::parse(ReadFile(labels_path));
  int matched = 0;
  int total = 0;
  for (const TaxonomyEntry& e : report.entries) {
    if (!labels.contains(e.sample_id)) continue;
    ++total;
    const std::string want = labels[e.sample_id].get<std::string>();
    if (want == ErrorClassName(e.dominant_class)) {
      ++matched;
    } else {
      std::cerr << "label mismatch: " << e.sample_id << " labelled " << want
                << ", classified " << ErrorClassName(e.dominant_class) << "\n";
    }
  }
  std::cerr << "labels matched " << matched << "/" << total << "\n";
  return matched == total ? kExitClean : kExitFindings;
}

// ---- stats ----

int CmdStats(const std::string& counts, const std::string& results,
             const std::string& format_name) {
  const ReportFormat format = FormatOrThrow(format_name, false);
  if (counts.empty() == results.empty()) {
    throw ConfigError("stats needs exactly one of --counts or --results");
  }
  const StatsReport report = counts.empty()
                                 ? BuildExperimentReport(ReadResultsStore(results)).stats
                                 : BuildStatsFromCounts(ReadFile(counts));
  std::cout << (format == ReportFormat::kJson ? RenderStatsJson(report)
                                              : RenderStatsText(report));
  return kExitClean;
}

// ---- experiment ----

struct ExperimentOptions {
  std::string config;
  std::string mode;
  std::string compiler;
  std::string fixtures;
  std::string results;
  std::string format = "text";
  int workers = 0;
};

int Compare(const ExperimentMatrix& matrix, const fs::path& fixture_dir) {
  if (!fs::exists(fixture_dir / "manifest.json")) return kExitClean;
  const auto mismatches = CompareWithManifest(matrix, LoadFixtureManifest(fixture_dir));
  for (const std::string& m : mismatches) std::cerr << "mismatch: " << m << "\n";
  std::cerr << "per-cell compiled counts "
            << (mismatches.empty() ? "match" : "differ from")
            << " the fixture manifest\n";
  return mismatches.empty() ? kExitClean : kExitFindings;
}

int CmdExperimentRun(const ExperimentOptions& o) {
  const ReportFormat format = FormatOrThrow(o.format, false);
  ExperimentConfig config = LoadExperimentConfig(o.config);
  if (!o.mode.empty()) {
    const auto m = ParseRunMode(o.mode);
    if (!m) throw ConfigError("unknown --mode " + o.mode);
    config.mode = *m;
    if (o.compiler.empty() && *m != RunMode::kReplay &&
        config.compiler == CompilerMode::kReplay) {
      config.compiler = CompilerMode::kCargo;
    }
  }
  if (!o.compiler.empty()) {
    const auto c = ParseCompilerMode(o.compiler);
    if (!c) throw ConfigError("unknown --compiler " + o.compiler);
    config.compiler = *c;
  }
  if (!o.fixtures.empty()) config.fixture_dir = o.fixtures;
  if (!o.results.empty()) config.results_path = o.results;
  if (o.workers > 0) config.workers = o.workers;
  ValidateConfig(config);

  ExperimentHooks hooks;
  std::atomic<int> done{0};
  hooks.on_sample = [&](const SampleResult& r) {
    const int n = ++done;
    if (!r.error.empty()) std::cerr << "[" << n << "] " << r.key.Id() << ": " << r.error << "\n";
  };
  const ExperimentMatrix matrix = RunExperiment(config, hooks);
  const ExperimentReport report = BuildExperimentReport(matrix);
  std::cout << (format == ReportFormat::kJson ? RenderExperimentJson(report)
                                              : RenderExperimentText(report));
  if (!config.results_path.empty()) {
    std::cerr << "results written to " << config.results_path.string() << "\n";
  }
  if (report.sample_errors > 0) return kExitError;
  if (config.mode == RunMode::kReplay && config.compiler == CompilerMode::kReplay) {
    return Compare(matrix, config.fixture_dir);
  }
  return kExitClean;
}

int CmdExperimentReport(const ExperimentOptions& o) {
  const ReportFormat format = FormatOrThrow(o.format, false);
  fs::path results = o.results;
  fs::path fixtures = o.fixtures;
  if (!o.config.empty()) {
    const ExperimentConfig config = LoadExperimentConfig(o.config);
    if (results.empty()) results = config.results_path;
    if (fixtures.empty()) fixtures = config.fixture_dir;
  }
  if (results.empty()) throw ConfigError("experiment report needs --results or --config");
  const ExperimentMatrix matrix = ReadResultsStore(results);
  const ExperimentReport report = BuildExperimentReport(matrix);
  std::cout << (format == ReportFormat::kJson ? RenderExperimentJson(report)
                                              : RenderExperimentText(report));
  return fixtures.empty() ? kExitClean : Compare(matrix, fixtures);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static analysis for AEAD misuse in Rust sources, plus the "
               "evaluation harness around it."};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Analyze Rust files or directories");
  scan_cmd->add_option("paths", scan.paths, "Files or directories")->required();
  scan_cmd->add_option("--format", scan.format, "text, json or sarif")
      ->check(CLI::IsMember({"text", "json", "sarif"}));
  scan_cmd->add_option("--min-severity", scan.min_severity,
                       "Lowest severity that makes the exit status 1")
      ->check(CLI::IsMember({"CRITICAL", "HIGH", "MEDIUM"}, CLI::ignore_case));
  scan_cmd->add_option("-j,--jobs", scan.jobs, "Worker threads (default: cores)");

  std::string corpus;
  std::string suite = "benchmark";
  std::string validate_format = "text";
  bool validate_json = false;
  auto* validate_cmd = app.add_subcommand("validate", "Score the analyzer on a labelled corpus");
  validate_cmd->add_option("corpus", corpus, "Corpus directory holding manifest.json")
      ->required();
  validate_cmd->add_option("--suite", suite, "synthetic, benchmark, regression or all");
  validate_cmd->add_option("--format", validate_format, "text or json");
  validate_cmd->add_flag("--json", validate_json, "Same as --format json");

  std::vector<std::string> diag_inputs;
  std::string labels;
  std::string classify_format = "text";
  auto* classify_cmd = app.add_subcommand(
      "classify-errors", "Classify captured clippy/rustc JSON diagnostic streams");
  classify_cmd->add_option("inputs", diag_inputs, ".jsonl files or directories")->required();
  classify_cmd->add_option("--labels", labels, "JSON object of sample id to expected class");
  classify_cmd->add_option("--format", classify_format, "text or json");

  std::string counts;
  std::string stats_results;
  std::string stats_format = "text";
  auto* stats_cmd = app.add_subcommand("stats", "Rate tables with Wilson CIs and chi-square");
  stats_cmd->add_option("--counts", counts, "Inline counts JSON file");
  stats_cmd->add_option("--results", stats_results, "Experiment results store (.jsonl)");
  stats_cmd->add_option("--format", stats_format, "text or json");

  ExperimentOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run or report the generation experiment");
  exp_cmd->require_subcommand(1);
  auto* run_cmd = exp_cmd->add_subcommand("run", "Generate, compile and analyze samples");
  run_cmd->add_option("--config", exp.config, "Experiment config (JSON)")->required();
  run_cmd->add_option("--mode", exp.mode, "live, record or replay");
  run_cmd->add_option("--compiler", exp.compiler, "cargo, record or replay");
  run_cmd->add_option("--fixtures", exp.fixtures, "Fixture directory");
  run_cmd->add_option("--results", exp.results, "Results store to write");
  run_cmd->add_option("--workers", exp.workers, "Parallel samples");
  run_cmd->add_option("--format", exp.format, "text or json");
  auto* report_cmd = exp_cmd->add_subcommand("report", "Render tables from a results store");
  report_cmd->add_option("--config", exp.config, "Experiment config (JSON)");
  report_cmd->add_option("--results", exp.results, "Results store (.jsonl)");
  report_cmd->add_option("--fixtures", exp.fixtures,
                         "Fixture directory whose manifest.json is compared");
  report_cmd->add_option("--format", exp.format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitClean : kExitError;
  }

  try {
    if (*scan_cmd) return CmdScan(scan);
    if (*validate_cmd) {
      return CmdValidate(corpus, suite, validate_json ? "json" : validate_format);
    }
    if (*classify_cmd) return CmdClassify(diag_inputs, labels, classify_format);
    if (*stats_cmd) return CmdStats(counts, stats_results, stats_format);
    if (*run_cmd) return CmdExperimentRun(exp);
    if (*report_cmd) return CmdExperimentReport(exp);
  } catch (const Error& e) {
    std::cerr << "aeadlint: " << e.what() << "\n";
    return kExitError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "aeadlint: bad JSON: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "aeadlint: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
