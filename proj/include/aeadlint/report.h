#ifndef AEADLINT_REPORT_H_
#define AEADLINT_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aeadlint/diagnostics.h"
#include "aeadlint/experiment.h"
#include "aeadlint/rules.h"
#include "aeadlint/stats.h"
#include "aeadlint/validation.h"

namespace aeadlint {

inline constexpr std::string_view kToolName = "aeadlint";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class ReportFormat { kText, kJson, kSarif };
std::optional<ReportFormat> ParseReportFormat(std::string_view name);

// ---- scan ----
std::string RenderScanText(const std::vector<ScanReport>& reports);
std::string RenderScanJson(const std::vector<ScanReport>& reports);
std::vector<ScanReport> ParseScanJson(std::string_view text);
// SARIF 2.1.0: one run, one result per finding.
std::string RenderSarif(const std::vector<ScanReport>& reports);
std::string_view SarifLevel(Severity s);

// ---- validation ----
std::string RenderValidationText(const ScoreReport& report);
std::string RenderValidationJson(const ScoreReport& report);
ScoreReport ParseValidationJson(std::string_view text);

// ---- taxonomy ----
struct TaxonomyEntry {
  std::string sample_id;
  ErrorClass dominant_class = ErrorClass::kNoError;
  std::size_t error_count = 0;

  friend bool operator==(const TaxonomyEntry&, const TaxonomyEntry&) = default;
};

struct TaxonomyReport {
  std::vector<TaxonomyEntry> entries;
  // Over non-compiling samples only; NoError is never a key.
  std::map<ErrorClass, int> class_counts;
  int failing = 0;
  int extraction_failures = 0;

  // Percentage of failing samples in class `c`; 0 when nothing failed.
  double Share(ErrorClass c) const;

  friend bool operator==(const TaxonomyReport&, const TaxonomyReport&) = default;
};

TaxonomyReport BuildTaxonomy(const std::vector<CompilationOutcome>& outcomes);
std::string RenderTaxonomyText(const TaxonomyReport& report);
std::string RenderTaxonomyJson(const TaxonomyReport& report);
TaxonomyReport ParseTaxonomyJson(std::string_view text);

// ---- stats ----
struct GroupRate {
  std::string label;
  Proportion counts;
  Interval ci;

  friend bool operator==(const GroupRate&, const GroupRate&) = default;
};

struct RateTable {
  std::string title;
  std::vector<GroupRate> rows;
  std::optional<GroupRate> overall;
  std::optional<ChiSquareResult> chi;
  std::string chi_error;  // set instead of `chi` when the test is undefined

  friend bool operator==(const RateTable&, const RateTable&) = default;
};

struct CrossTab {
  std::string title;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<Proportion>> cells;

  friend bool operator==(const CrossTab&, const CrossTab&) = default;
};

struct StatsReport {
  std::vector<RateTable> tables;
  std::vector<CrossTab> crosstabs;
  // Single proportions reported with an interval only.
  std::vector<GroupRate> intervals;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

struct LabeledCount {
  std::string label;
  Proportion counts;
};

// Groups rendered as a success/failure table with Wilson intervals and a
// chi-square footnote (Yates for two groups). Fewer than two groups gives
// a chi_error.
RateTable BuildRateTable(const std::string& title,
                         const std::vector<LabeledCount>& groups,
                         bool with_overall);

// Inline counts file: {"tables": [{"title", "groups": [{"label",
// "successes", "trials"}], "overall": bool}], "crosstabs": [...]}.
StatsReport BuildStatsFromCounts(std::string_view counts_json);

std::string RenderStatsText(const StatsReport& report);
std::string RenderStatsJson(const StatsReport& report);
StatsReport ParseStatsJson(std::string_view text);

// ---- experiment ----
struct DetectionRow {
  RuleId rule = RuleId::kHardcodedSecret;
  int samples = 0;  // compiled samples with at least one such finding

  friend bool operator==(const DetectionRow&, const DetectionRow&) = default;
};

struct DetectionTable {
  int compiled = 0;
  std::vector<DetectionRow> rows;  // every rule, in rule order
  int any_critical = 0;
  int any_finding = 0;

  friend bool operator==(const DetectionTable&, const DetectionTable&) = default;
};

struct ExperimentReport {
  int samples = 0;
  int sample_errors = 0;
  StatsReport stats;
  TaxonomyReport taxonomy;
  DetectionTable detections;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

ExperimentReport BuildExperimentReport(const ExperimentMatrix& matrix);
std::string RenderExperimentText(const ExperimentReport& report);
std::string RenderExperimentJson(const ExperimentReport& report);
ExperimentReport ParseExperimentJson(std::string_view text);

// Compares per-cell compiled counts with the fixture manifest. Returns one
// line per mismatch; empty when they agree.
std::vector<std::string> CompareWithManifest(const ExperimentMatrix& matrix,
                                             const FixtureManifest& manifest);

}  // namespace aeadlint

#endif  // AEADLINT_REPORT_H_
