#include <algorithm>
#include <set>
#include <utility>

#include "aeadlint/errors.h"
#include "aeadlint/rules.h"
#include "rules/unit_index.h"

namespace aeadlint {
namespace {

struct RuleInfo {
  RuleId id;
  std::string_view name;
  int cwe;
  Severity severity;
};

constexpr RuleInfo kRuleTable[] = {
    {RuleId::kHardcodedSecret, "hardcoded_secret", 798, Severity::kCritical},
    {RuleId::kNonceReuseInLoop, "nonce_reuse_in_loop", 329,
     Severity::kCritical},
    {RuleId::kNonceReuseMultiCall, "nonce_reuse_multi_call", 329,
     Severity::kCritical},
    {RuleId::kStaticNonce, "static_nonce", 329, Severity::kCritical},
    {RuleId::kWeakRandomness, "weak_randomness", 330, Severity::kHigh},
    {RuleId::kUnsafeErrorHandling, "unsafe_error_handling", 252,
     Severity::kMedium},
    {RuleId::kKeyFromExternalInput, "key_from_external_input", 326,
     Severity::kHigh},
    {RuleId::kDeprecatedApi, "deprecated_api", 327, Severity::kMedium},
    {RuleId::kMissingSecureGeneration, "missing_secure_generation", 330,
     Severity::kHigh},
};

const RuleInfo& Info(RuleId rule) {
  return kRuleTable[static_cast<int>(rule)];
}

std::string SnippetAt(const SourceUnit& unit, std::size_t offset) {
  const SourceLocation loc = unit.OffsetToLocation(offset);
  const std::size_t begin = unit.line_starts()[loc.line - 1];
  const std::size_t end = loc.line < unit.line_starts().size()
                              ? unit.line_starts()[loc.line] - 1
                              : unit.size();
  std::string line(internal::Trim(
      std::string_view(unit.raw_text()).substr(begin, end - begin)));
  constexpr std::size_t kMaxSnippet = 160;
  if (line.size() > kMaxSnippet) {
    // Do not cut a UTF-8 sequence in half.
    std::size_t cut = kMaxSnippet;
    while (cut > 0 && (static_cast<unsigned char>(line[cut]) & 0xC0) == 0x80) {
      --cut;
    }
    line = line.substr(0, cut) + "...";
  }
  return line;
}

}  // namespace

std::string_view RuleName(RuleId rule) { return Info(rule).name; }

std::optional<RuleId> ParseRuleId(std::string_view name) {
  for (const RuleInfo& info : kRuleTable) {
    if (info.name == name) return info.id;
  }
  return std::nullopt;
}

int RuleCwe(RuleId rule) { return Info(rule).cwe; }

Severity RuleSeverity(RuleId rule) { return Info(rule).severity; }

std::string_view SeverityName(Severity severity) {
  switch (severity) {
    case Severity::kCritical: return "CRITICAL";
    case Severity::kHigh: return "HIGH";
    case Severity::kMedium: return "MEDIUM";
  }
  return "MEDIUM";
}

std::optional<Severity> ParseSeverity(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "CRITICAL") return Severity::kCritical;
  if (upper == "HIGH") return Severity::kHigh;
  if (upper == "MEDIUM") return Severity::kMedium;
  return std::nullopt;
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kLiteralOnly: return "LiteralOnly";
    case Provenance::kRandomizedBeforeUse: return "RandomizedBeforeUse";
    case Provenance::kNonLiteral: return "NonLiteral";
  }
  return "NonLiteral";
}

Finding MakeFinding(const SourceUnit& unit, RuleId rule, std::size_t offset,
                    std::string message) {
  Finding f;
  f.rule_id = rule;
  f.cwe = RuleCwe(rule);
  f.severity = RuleSeverity(rule);
  f.location = unit.OffsetToLocation(offset);
  f.message = std::move(message);
  f.snippet = SnippetAt(unit, offset);
  return f;
}

ProvenanceState TrackProvenance(const SourceUnit& unit,
                                std::string_view variable,
                                std::size_t use_offset) {
  const internal::UnitIndex index(unit);
  auto state = index.Provenance(variable, use_offset);
  if (!state) {
    throw UnknownVariableError(unit.path() + ": no declaration of `" +
                               std::string(variable) + "` before offset " +
                               std::to_string(use_offset));
  }
  return *state;
}

std::vector<NonceUse> CaptureNonceUses(const SourceUnit& unit) {
  const internal::UnitIndex index(unit);
  std::vector<NonceUse> uses;
  const auto& calls = index.encrypt_calls();
  for (std::size_t i = 0; i < calls.size(); ++i) {
    if (calls[i].nonce_var.empty()) continue;
    uses.push_back(
        {calls[i].nonce_var, unit.OffsetToLocation(calls[i].dot), i});
  }
  return uses;
}

namespace {

using Detector = std::vector<Finding> (*)(const internal::UnitIndex&);

Detector DetectorFor(RuleId rule) {
  switch (rule) {
    case RuleId::kHardcodedSecret: return internal::DetectHardcodedSecret;
    case RuleId::kNonceReuseInLoop: return internal::DetectNonceReuseInLoop;
    case RuleId::kNonceReuseMultiCall:
      return internal::DetectNonceReuseMultiCall;
    case RuleId::kStaticNonce: return internal::DetectStaticNonce;
    case RuleId::kWeakRandomness: return internal::DetectWeakRandomness;
    case RuleId::kUnsafeErrorHandling:
      return internal::DetectUnsafeErrorHandling;
    case RuleId::kKeyFromExternalInput:
      return internal::DetectKeyFromExternalInput;
    case RuleId::kDeprecatedApi: return internal::DetectDeprecatedApi;
    case RuleId::kMissingSecureGeneration:
      return internal::DetectMissingSecureGeneration;
  }
  return internal::DetectHardcodedSecret;
}

std::vector<Finding> Run(const SourceUnit& unit, RuleId rule) {
  const internal::UnitIndex index(unit);
  return DetectorFor(rule)(index);
}

}  // namespace

std::vector<Finding> RunRule(const SourceUnit& unit, RuleId rule) {
  return Run(unit, rule);
}

std::vector<Finding> DetectHardcodedSecret(const SourceUnit& unit) {
  return Run(unit, RuleId::kHardcodedSecret);
}
std::vector<Finding> DetectNonceReuseInLoop(const SourceUnit& unit) {
  return Run(unit, RuleId::kNonceReuseInLoop);
}
std::vector<Finding> DetectNonceReuseMultiCall(const SourceUnit& unit) {
  return Run(unit, RuleId::kNonceReuseMultiCall);
}
std::vector<Finding> DetectStaticNonce(const SourceUnit& unit) {
  return Run(unit, RuleId::kStaticNonce);
}
std::vector<Finding> DetectWeakRandomness(const SourceUnit& unit) {
  return Run(unit, RuleId::kWeakRandomness);
}
std::vector<Finding> DetectUnsafeErrorHandling(const SourceUnit& unit) {
  return Run(unit, RuleId::kUnsafeErrorHandling);
}
std::vector<Finding> DetectKeyFromExternalInput(const SourceUnit& unit) {
  return Run(unit, RuleId::kKeyFromExternalInput);
}
std::vector<Finding> DetectDeprecatedApi(const SourceUnit& unit) {
  return Run(unit, RuleId::kDeprecatedApi);
}
std::vector<Finding> DetectMissingSecureGeneration(const SourceUnit& unit) {
  return Run(unit, RuleId::kMissingSecureGeneration);
}

ScanReport Scan(const SourceUnit& unit) {
  const internal::UnitIndex index(unit);
  ScanReport report;
  report.path = unit.path();
  report.notes = index.loops().notes;

  std::set<std::pair<RuleId, std::size_t>> seen;
  for (RuleId rule : kAllRules) {
    for (Finding& f : DetectorFor(rule)(index)) {
      if (seen.emplace(f.rule_id, f.location.byte_offset).second) {
        report.findings.push_back(std::move(f));
      }
    }
  }
  std::stable_sort(report.findings.begin(), report.findings.end(),
                   [](const Finding& a, const Finding& b) {
                     return std::tie(a.location.line, a.location.column,
                                     a.rule_id) <
                            std::tie(b.location.line, b.location.column,
                                     b.rule_id);
                   });
  return report;
}

std::vector<Finding> Analyze(const SourceUnit& unit) {
  return Scan(unit).findings;
}

}  // namespace aeadlint
