#ifndef AEADLINT_VALIDATION_H_
#define AEADLINT_VALIDATION_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aeadlint/rules.h"

namespace aeadlint {

enum class CaseKind { kSynthetic, kBenchmark, kSecureControl, kBlindSpot };
std::string_view CaseKindName(CaseKind kind);
std::optional<CaseKind> ParseCaseKind(std::string_view name);

// One expected detection: a rule, or any rule reporting the CWE.
struct Expectation {
  std::optional<RuleId> rule;
  int cwe = 0;

  bool Matches(const Finding& f) const {
    return rule ? f.rule_id == *rule : f.cwe == cwe;
  }
  int Cwe() const { return rule ? RuleCwe(*rule) : cwe; }
};

// Parses "CWE-798" or a rule name such as "static_nonce".
std::optional<Expectation> ParseExpectation(std::string_view text);
std::string ExpectationName(const Expectation& e);

struct ValidationCase {
  std::string case_id;
  std::filesystem::path source_path;
  std::vector<Expectation> expected;
  CaseKind kind = CaseKind::kSynthetic;
  // Blind spots only: the real defect the analyzer is expected to miss.
  std::optional<int> latent_cwe;
  // "synthetic", "benchmark" or "regression".
  std::string suite;
  // Regression cases: the exact number of findings per rule. Rules that are
  // not listed must not fire.
  std::optional<std::map<RuleId, int>> exact_findings;
  std::string note;
};

enum class Outcome { kTP, kFP, kFN, kTN };
std::string_view OutcomeName(Outcome o);

struct CaseResult {
  std::string case_id;
  CaseKind kind = CaseKind::kSynthetic;
  Outcome outcome = Outcome::kTN;
  // True when the outcome is the one the case was written to produce:
  // TP/TN for ordinary cases, FN for blind spots.
  bool as_designed = false;
  std::vector<Finding> findings;

  friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

struct CweTally {
  int detected = 0;
  int total = 0;

  friend bool operator==(const CweTally&, const CweTally&) = default;
};

struct ScoreReport {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;
  double precision = 1.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::map<int, CweTally> per_cwe;
  std::vector<CaseResult> cases;  // sorted by case id

  int Total() const { return tp + fp + fn + tn; }

  friend bool operator==(const ScoreReport&, const ScoreReport&) = default;
};

// Reads `<directory>/manifest.json`. Paths are resolved against the
// directory. Throws ManifestSchemaError or DuplicateCaseIdError.
std::vector<ValidationCase> BuildCorpusManifest(
    const std::filesystem::path& directory);

// Cases whose suite equals `suite`.
std::vector<ValidationCase> SelectSuite(const std::vector<ValidationCase>& cases,
                                        std::string_view suite);

// Case-level scoring. A case with expectations is TP when any expectation
// matches a finding, otherwise FN. A blind spot is scored against its latent
// CWE the same way, so a miss counts as FN. A secure control is FP when
// anything fires, otherwise TN. Throws MissingCaseError when a source file
// cannot be loaded.
ScoreReport RunValidation(const std::vector<ValidationCase>& cases);

struct RegressionResult {
  std::string case_id;
  bool passed = false;
  std::map<RuleId, int> expected;
  std::map<RuleId, int> actual;
};

// Checks cases that carry exact_findings.
std::vector<RegressionResult> RunRegression(
    const std::vector<ValidationCase>& cases);

}  // namespace aeadlint

#endif  // AEADLINT_VALIDATION_H_
