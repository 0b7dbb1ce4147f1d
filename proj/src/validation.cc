#include "aeadlint/validation.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "aeadlint/errors.h"
#include "json.hpp"

namespace aeadlint {
namespace {

using nlohmann::json;

std::string RequireString(const json& obj, const char* field,
                          const std::string& where) {
  const auto it = obj.find(field);
  if (it == obj.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw ManifestSchemaError(where + ": missing string field `" + field + "`");
  }
  return it->get<std::string>();
}

ValidationCase ParseCase(const json& entry, const std::filesystem::path& dir,
                         std::size_t index) {
  const std::string where = "case #" + std::to_string(index);
  if (!entry.is_object()) throw ManifestSchemaError(where + ": not an object");

  ValidationCase c;
  c.case_id = RequireString(entry, "id", where);
  const std::string at = "case `" + c.case_id + "`";
  c.source_path = dir / RequireString(entry, "path", at);
  c.suite = RequireString(entry, "suite", at);
  const std::string kind = RequireString(entry, "kind", at);
  const auto parsed_kind = ParseCaseKind(kind);
  if (!parsed_kind) throw ManifestSchemaError(at + ": unknown kind `" + kind + "`");
  c.kind = *parsed_kind;
  c.note = entry.value("note", "");

  if (const auto it = entry.find("expected"); it != entry.end()) {
    if (!it->is_array()) throw ManifestSchemaError(at + ": expected must be a list");
    for (const json& e : *it) {
      const auto exp = e.is_string() ? ParseExpectation(e.get<std::string>())
                                     : std::nullopt;
      if (!exp) {
        throw ManifestSchemaError(at + ": bad expectation " + e.dump());
      }
      c.expected.push_back(*exp);
    }
  }
  if (const auto it = entry.find("latent_cwe"); it != entry.end()) {
    const auto exp = it->is_string() ? ParseExpectation(it->get<std::string>())
                                     : std::nullopt;
    if (!exp || exp->rule) {
      throw ManifestSchemaError(at + ": latent_cwe must look like \"CWE-329\"");
    }
    c.latent_cwe = exp->cwe;
  }
  if (const auto it = entry.find("exact_findings"); it != entry.end()) {
    if (!it->is_object()) {
      throw ManifestSchemaError(at + ": exact_findings must be an object");
    }
    std::map<RuleId, int> exact;
    for (const auto& [name, count] : it->items()) {
      const auto rule = ParseRuleId(name);
      if (!rule || !count.is_number_integer() || count.get<int>() < 0) {
        throw ManifestSchemaError(at + ": bad exact_findings entry `" + name + "`");
      }
      exact[*rule] = count.get<int>();
    }
    c.exact_findings = std::move(exact);
  }

  switch (c.kind) {
    case CaseKind::kSecureControl:
      if (!c.expected.empty() || c.latent_cwe) {
        throw ManifestSchemaError(at + ": secure_control must not expect findings");
      }
      break;
    case CaseKind::kBlindSpot:
      if (!c.expected.empty() || !c.latent_cwe) {
        throw ManifestSchemaError(
            at + ": documented_blind_spot needs empty expected and a latent_cwe");
      }
      break;
    case CaseKind::kSynthetic:
    case CaseKind::kBenchmark:
      if (c.expected.empty() || c.latent_cwe) {
        throw ManifestSchemaError(at + ": " + kind +
                                  " case needs a non-empty expected list");
      }
      break;
  }
  return c;
}

}  // namespace

std::string_view CaseKindName(CaseKind kind) {
  switch (kind) {
    case CaseKind::kSynthetic: return "synthetic";
    case CaseKind::kBenchmark: return "benchmark";
    case CaseKind::kSecureControl: return "secure_control";
    case CaseKind::kBlindSpot: return "documented_blind_spot";
  }
  return "synthetic";
}

std::optional<CaseKind> ParseCaseKind(std::string_view name) {
  for (CaseKind k : {CaseKind::kSynthetic, CaseKind::kBenchmark,
                     CaseKind::kSecureControl, CaseKind::kBlindSpot}) {
    if (CaseKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::optional<Expectation> ParseExpectation(std::string_view text) {
  if (auto rule = ParseRuleId(text)) return Expectation{*rule, RuleCwe(*rule)};
  if (text.size() > 4 && text.substr(0, 4) == "CWE-") {
    int cwe = 0;
    for (char ch : text.substr(4)) {
      if (ch < '0' || ch > '9') return std::nullopt;
      cwe = cwe * 10 + (ch - '0');
      if (cwe > 100000) return std::nullopt;
    }
    return Expectation{std::nullopt, cwe};
  }
  return std::nullopt;
}

std::string ExpectationName(const Expectation& e) {
  if (e.rule) return std::string(RuleName(*e.rule));
  return "CWE-" + std::to_string(e.cwe);
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kTP: return "TP";
    case Outcome::kFP: return "FP";
    case Outcome::kFN: return "FN";
    case Outcome::kTN: return "TN";
  }
  return "TN";
}

std::vector<ValidationCase> BuildCorpusManifest(
    const std::filesystem::path& directory) {
  const auto manifest_path = directory / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) {
    throw ManifestSchemaError("cannot open " + manifest_path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ManifestSchemaError(manifest_path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array()) {
    throw ManifestSchemaError(manifest_path.string() +
                              ": top level must be {\"cases\": [...]}");
  }
  std::vector<ValidationCase> cases;
  std::set<std::string> ids;
  std::size_t index = 0;
  for (const json& entry : doc["cases"]) {
    ValidationCase c = ParseCase(entry, directory, index++);
    if (!ids.insert(c.case_id).second) {
      throw DuplicateCaseIdError("duplicate case id `" + c.case_id + "` in " +
                                 manifest_path.string());
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

std::vector<ValidationCase> SelectSuite(const std::vector<ValidationCase>& cases,
                                        std::string_view suite) {
  std::vector<ValidationCase> out;
  std::copy_if(cases.begin(), cases.end(), std::back_inserter(out),
               [&](const ValidationCase& c) { return c.suite == suite; });
  return out;
}

namespace {

std::vector<Finding> AnalyzeCase(const ValidationCase& c) {
  try {
    return Analyze(LoadSource(c.source_path));
  } catch (const IoError& e) {
    throw MissingCaseError("case `" + c.case_id + "`: " + e.what());
  }
}

}  // namespace

ScoreReport RunValidation(const std::vector<ValidationCase>& cases) {
  ScoreReport report;
  for (const ValidationCase& c : cases) {
    CaseResult r;
    r.case_id = c.case_id;
    r.kind = c.kind;
    r.findings = AnalyzeCase(c);

    std::vector<Expectation> targets = c.expected;
    if (c.kind == CaseKind::kBlindSpot) {
      targets.push_back({std::nullopt, *c.latent_cwe});
    }
    if (c.kind == CaseKind::kSecureControl) {
      r.outcome = r.findings.empty() ? Outcome::kTN : Outcome::kFP;
      r.as_designed = r.outcome == Outcome::kTN;
    } else {
      const bool hit = std::any_of(
          targets.begin(), targets.end(), [&](const Expectation& e) {
            return std::any_of(r.findings.begin(), r.findings.end(),
                               [&](const Finding& f) { return e.Matches(f); });
          });
      r.outcome = hit ? Outcome::kTP : Outcome::kFN;
      r.as_designed = (c.kind == CaseKind::kBlindSpot) != hit;

      std::set<int> cwes;
      for (const Expectation& e : targets) cwes.insert(e.Cwe());
      for (int cwe : cwes) {
        CweTally& t = report.per_cwe[cwe];
        ++t.total;
        const bool cwe_hit = std::any_of(
            r.findings.begin(), r.findings.end(),
            [&](const Finding& f) { return f.cwe == cwe; });
        if (cwe_hit) ++t.detected;
      }
    }
    switch (r.outcome) {
      case Outcome::kTP: ++report.tp; break;
      case Outcome::kFP: ++report.fp; break;
      case Outcome::kFN: ++report.fn; break;
      case Outcome::kTN: ++report.tn; break;
    }
    report.cases.push_back(std::move(r));
  }
  std::sort(report.cases.begin(), report.cases.end(),
            [](const CaseResult& a, const CaseResult& b) {
              return a.case_id < b.case_id;
            });

  const int predicted = report.tp + report.fp;
  const int actual = report.tp + report.fn;
  report.precision = predicted == 0 ? 1.0 : double(report.tp) / predicted;
  report.recall = actual == 0 ? 0.0 : double(report.tp) / actual;
  report.f1 = report.precision + report.recall == 0.0
                  ? 0.0
                  : 2.0 * report.precision * report.recall /
                        (report.precision + report.recall);
  report.accuracy = report.Total() == 0
                        ? 0.0
                        : double(report.tp + report.tn) / report.Total();
  return report;
}

std::vector<RegressionResult> RunRegression(
    const std::vector<ValidationCase>& cases) {
  std::vector<RegressionResult> out;
  for (const ValidationCase& c : cases) {
    if (!c.exact_findings) continue;
    RegressionResult r;
    r.case_id = c.case_id;
    r.expected = *c.exact_findings;
    for (const Finding& f : AnalyzeCase(c)) ++r.actual[f.rule_id];
    r.passed = true;
    for (RuleId rule : kAllRules) {
      const auto e = r.expected.find(rule);
      const auto a = r.actual.find(rule);
      const int want = e == r.expected.end() ? 0 : e->second;
      const int got = a == r.actual.end() ? 0 : a->second;
      if (want != got) r.passed = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace aeadlint
