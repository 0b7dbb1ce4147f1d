#ifndef AEADLINT_DIAGNOSTICS_H_
#define AEADLINT_DIAGNOSTICS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aeadlint {

enum class DiagnosticLevel { kError, kWarning, kNote };
std::string_view LevelName(DiagnosticLevel level);

struct DiagnosticSpan {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const DiagnosticSpan&, const DiagnosticSpan&) = default;
};

struct Diagnostic {
  DiagnosticLevel level = DiagnosticLevel::kError;
  std::optional<std::string> code;  // e.g. "E0599"
  std::string message;              // verbatim from the stream
  std::optional<DiagnosticSpan> primary_span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Declaration order is the precedence order used by DominantClass.
enum class ErrorClass {
  kAPIHallucination,
  kUnresolvedImport,
  kTraitError,
  kTypeError,
  kNoError,
};

inline constexpr std::array<ErrorClass, 5> kAllErrorClasses = {
    ErrorClass::kAPIHallucination, ErrorClass::kUnresolvedImport,
    ErrorClass::kTraitError, ErrorClass::kTypeError, ErrorClass::kNoError};

std::string_view ErrorClassName(ErrorClass c);
std::optional<ErrorClass> ParseErrorClass(std::string_view name);

struct MalformedLine {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct ParsedDiagnostics {
  std::vector<Diagnostic> diagnostics;
  std::vector<MalformedLine> malformed;
};

// Parses a line-delimited `--message-format=json` stream. Records whose
// `reason` is not "compiler-message" are skipped; lines that are not JSON
// objects are reported in `malformed` and skipped.
ParsedDiagnostics ParseDiagnosticStream(std::string_view stream);

// Convenience wrapper returning only the diagnostics.
std::vector<Diagnostic> ParseDiagnostics(std::string_view stream);

// Error code -> class table; nullopt for codes outside the table.
std::optional<ErrorClass> ClassForCode(std::string_view code);

// Class of an error-level diagnostic: by code when the code is in the table,
// otherwise by message keywords, otherwise kTypeError. Never kNoError.
ErrorClass ClassifyError(const Diagnostic& d);

// kNoError when no diagnostic is error-level, otherwise the class of highest
// precedence among the error-level diagnostics.
ErrorClass DominantClass(const std::vector<Diagnostic>& diags);

std::size_t ErrorCount(const std::vector<Diagnostic>& diags);

struct CompilationOutcome {
  std::string sample_id;
  bool compiled = false;
  std::vector<Diagnostic> diagnostics;
  ErrorClass dominant_class = ErrorClass::kNoError;
  // Set when there was nothing to compile (no code block in the response).
  // Such samples are not compiled but carry no class.
  bool extraction_failure = false;
};

// compiled iff there is no error-level diagnostic.
CompilationOutcome MakeCompilationOutcome(std::string sample_id,
                                          std::vector<Diagnostic> diags);

// Human-readable rendering of the code table, for report output.
std::string DescribeCodeTable();

}  // namespace aeadlint

#endif  // AEADLINT_DIAGNOSTICS_H_
