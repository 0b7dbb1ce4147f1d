#ifndef AEADLINT_RULES_H_
#define AEADLINT_RULES_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aeadlint/source.h"

namespace aeadlint {

// Declaration order is the tie-break order used when sorting findings that
// share a location.
enum class RuleId {
  kHardcodedSecret,
  kNonceReuseInLoop,
  kNonceReuseMultiCall,
  kStaticNonce,
  kWeakRandomness,
  kUnsafeErrorHandling,
  kKeyFromExternalInput,
  kDeprecatedApi,
  kMissingSecureGeneration,
};

inline constexpr std::array<RuleId, 9> kAllRules = {
    RuleId::kHardcodedSecret,       RuleId::kNonceReuseInLoop,
    RuleId::kNonceReuseMultiCall,   RuleId::kStaticNonce,
    RuleId::kWeakRandomness,        RuleId::kUnsafeErrorHandling,
    RuleId::kKeyFromExternalInput,  RuleId::kDeprecatedApi,
    RuleId::kMissingSecureGeneration,
};

enum class Severity { kMedium, kHigh, kCritical };

// Snake-case identifiers, e.g. "nonce_reuse_in_loop".
std::string_view RuleName(RuleId rule);
std::optional<RuleId> ParseRuleId(std::string_view name);
int RuleCwe(RuleId rule);
Severity RuleSeverity(RuleId rule);
// "CRITICAL", "HIGH", "MEDIUM".
std::string_view SeverityName(Severity severity);
std::optional<Severity> ParseSeverity(std::string_view name);

struct Finding {
  RuleId rule_id = RuleId::kHardcodedSecret;
  int cwe = 0;
  Severity severity = Severity::kMedium;
  SourceLocation location;
  std::string message;
  std::string snippet;

  friend bool operator==(const Finding&, const Finding&) = default;
};

// Builds a finding with the CWE, severity and snippet derived from the rule
// and the unit.
Finding MakeFinding(const SourceUnit& unit, RuleId rule, std::size_t offset,
                    std::string message);

enum class Provenance { kLiteralOnly, kRandomizedBeforeUse, kNonLiteral };
std::string_view ProvenanceName(Provenance p);

struct ProvenanceState {
  std::string variable;
  SourceLocation declared_at;
  Provenance classification = Provenance::kNonLiteral;
};

enum class LoopKind { kFor, kWhile, kLoop };

struct LoopBody {
  LoopKind header_kind = LoopKind::kLoop;
  // Text strictly between the opening and the matching closing brace, taken
  // from the comment-blanked scan text.
  std::string body_text;
  SourceLocation header;      // the `for` / `while` / `loop` keyword
  SourceLocation body_start;  // first byte after the opening brace
  std::size_t body_end = 0;   // offset of the closing brace
};

struct ScanNote {
  SourceLocation location;
  std::string message;

  friend bool operator==(const ScanNote&, const ScanNote&) = default;
};

struct LoopExtraction {
  std::vector<LoopBody> bodies;
  // One note per loop whose body runs past the end of the file.
  std::vector<ScanNote> notes;
};

LoopExtraction ExtractLoopBodies(const SourceUnit& unit);

// Classifies the value held by `variable` at `use_offset`, binding to the
// nearest preceding `let` (or fn parameter) of that name. Throws
// UnknownVariableError when there is no such declaration.
ProvenanceState TrackProvenance(const SourceUnit& unit,
                                std::string_view variable,
                                std::size_t use_offset);

struct NonceUse {
  std::string variable;
  SourceLocation call_site;  // the `.encrypt…` token
  std::size_t call_index = 0;
};

// Nonce argument of every encrypt-family call, in file order. Calls whose
// nonce argument is a literal rather than a variable are omitted.
std::vector<NonceUse> CaptureNonceUses(const SourceUnit& unit);

std::vector<Finding> DetectHardcodedSecret(const SourceUnit& unit);
std::vector<Finding> DetectNonceReuseInLoop(const SourceUnit& unit);
std::vector<Finding> DetectNonceReuseMultiCall(const SourceUnit& unit);
std::vector<Finding> DetectStaticNonce(const SourceUnit& unit);
std::vector<Finding> DetectWeakRandomness(const SourceUnit& unit);
std::vector<Finding> DetectUnsafeErrorHandling(const SourceUnit& unit);
std::vector<Finding> DetectKeyFromExternalInput(const SourceUnit& unit);
std::vector<Finding> DetectDeprecatedApi(const SourceUnit& unit);
std::vector<Finding> DetectMissingSecureGeneration(const SourceUnit& unit);

std::vector<Finding> RunRule(const SourceUnit& unit, RuleId rule);

struct ScanReport {
  std::string path;
  std::vector<Finding> findings;
  std::vector<ScanNote> notes;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

// All nine detectors, deduplicated by (rule, location) and ordered by
// (line, column, rule).
ScanReport Scan(const SourceUnit& unit);
std::vector<Finding> Analyze(const SourceUnit& unit);

// Literal message emitted by the loop rule.
inline constexpr std::string_view kLoopNoEntropyMessage =
    "encrypt() called inside a loop with no entropy source.";

}  // namespace aeadlint

#endif  // AEADLINT_RULES_H_
