#include "aeadlint/diagnostics.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace aeadlint {
namespace {

using nlohmann::json;

struct CodeEntry {
  std::string_view code;
  ErrorClass cls;
};

constexpr CodeEntry kCodeTable[] = {
    {"E0599", ErrorClass::kAPIHallucination},
    {"E0425", ErrorClass::kAPIHallucination},
    {"E0624", ErrorClass::kAPIHallucination},
    {"E0432", ErrorClass::kUnresolvedImport},
    {"E0433", ErrorClass::kUnresolvedImport},
    {"E0277", ErrorClass::kTraitError},
    {"E0283", ErrorClass::kTraitError},
    {"E0308", ErrorClass::kTypeError},
    {"E0106", ErrorClass::kTypeError},
    {"E0495", ErrorClass::kTypeError},
    {"E0621", ErrorClass::kTypeError},
};

struct KeywordEntry {
  std::string_view needle;
  ErrorClass cls;
};

// Checked in order; the first hit wins. "cannot find type" precedes the
// generic "cannot find" entries because a missing type is a missing import.
constexpr KeywordEntry kKeywords[] = {
    {"unresolved import", ErrorClass::kUnresolvedImport},
    {"failed to resolve", ErrorClass::kUnresolvedImport},
    {"use of undeclared crate", ErrorClass::kUnresolvedImport},
    {"could not find", ErrorClass::kUnresolvedImport},
    {"cannot find type", ErrorClass::kUnresolvedImport},
    {"cannot find trait", ErrorClass::kUnresolvedImport},
    {"cannot find macro", ErrorClass::kUnresolvedImport},
    {"no method named", ErrorClass::kAPIHallucination},
    {"no function or associated item", ErrorClass::kAPIHallucination},
    {"no associated item named", ErrorClass::kAPIHallucination},
    {"no associated function", ErrorClass::kAPIHallucination},
    {"no field", ErrorClass::kAPIHallucination},
    {"cannot find function", ErrorClass::kAPIHallucination},
    {"cannot find value", ErrorClass::kAPIHallucination},
    {"is private", ErrorClass::kAPIHallucination},
    {"the trait bound", ErrorClass::kTraitError},
    {"trait bounds were not satisfied", ErrorClass::kTraitError},
    {"doesn't implement", ErrorClass::kTraitError},
    {"type annotations needed", ErrorClass::kTraitError},
    {"mismatched types", ErrorClass::kTypeError},
};

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::optional<DiagnosticLevel> ParseLevel(std::string_view level) {
  if (level == "error" || level == "error: internal compiler error") {
    return DiagnosticLevel::kError;
  }
  if (level == "warning") return DiagnosticLevel::kWarning;
  if (level == "note" || level == "help" || level == "failure-note") {
    return DiagnosticLevel::kNote;
  }
  return std::nullopt;
}

std::optional<DiagnosticSpan> PrimarySpan(const json& message) {
  const auto spans = message.find("spans");
  if (spans == message.end() || !spans->is_array()) return std::nullopt;
  for (const json& span : *spans) {
    if (!span.is_object() || !span.value("is_primary", false)) continue;
    DiagnosticSpan out;
    out.file = span.value("file_name", "");
    out.line = span.value("line_start", std::size_t{0});
    out.column = span.value("column_start", std::size_t{0});
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::string_view LevelName(DiagnosticLevel level) {
  switch (level) {
    case DiagnosticLevel::kError: return "error";
    case DiagnosticLevel::kWarning: return "warning";
    case DiagnosticLevel::kNote: return "note";
  }
  return "note";
}

std::string_view ErrorClassName(ErrorClass c) {
  switch (c) {
    case ErrorClass::kAPIHallucination: return "APIHallucination";
    case ErrorClass::kUnresolvedImport: return "UnresolvedImport";
    case ErrorClass::kTraitError: return "TraitError";
    case ErrorClass::kTypeError: return "TypeError";
    case ErrorClass::kNoError: return "NoError";
  }
  return "NoError";
}

std::optional<ErrorClass> ParseErrorClass(std::string_view name) {
  for (ErrorClass c : kAllErrorClasses) {
    if (ErrorClassName(c) == name) return c;
  }
  return std::nullopt;
}

ParsedDiagnostics ParseDiagnosticStream(std::string_view stream) {
  ParsedDiagnostics out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < stream.size()) {
    std::size_t end = stream.find('\n', pos);
    if (end == std::string_view::npos) end = stream.size();
    std::string_view line = stream.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      out.malformed.push_back({line_no, e.what()});
      continue;
    }
    if (!record.is_object()) {
      out.malformed.push_back({line_no, "not a JSON object"});
      continue;
    }
    if (record.value("reason", "") != "compiler-message") continue;
    const auto message = record.find("message");
    if (message == record.end() || !message->is_object()) {
      out.malformed.push_back({line_no, "compiler-message without message"});
      continue;
    }
    const auto level = message->find("level");
    if (level == message->end() || !level->is_string()) {
      out.malformed.push_back({line_no, "message without level"});
      continue;
    }
    const auto parsed_level = ParseLevel(level->get<std::string>());
    if (!parsed_level) continue;

    Diagnostic d;
    d.level = *parsed_level;
    const auto code = message->find("code");
    if (code != message->end() && code->is_object()) {
      const auto inner = code->find("code");
      if (inner != code->end() && inner->is_string()) {
        d.code = inner->get<std::string>();
      }
    }
    const auto text = message->find("message");
    if (text != message->end() && text->is_string()) {
      d.message = text->get<std::string>();
    }
    d.primary_span = PrimarySpan(*message);
    out.diagnostics.push_back(std::move(d));
  }
  return out;
}

std::vector<Diagnostic> ParseDiagnostics(std::string_view stream) {
  return ParseDiagnosticStream(stream).diagnostics;
}

std::optional<ErrorClass> ClassForCode(std::string_view code) {
  for (const CodeEntry& e : kCodeTable) {
    if (e.code == code) return e.cls;
  }
  return std::nullopt;
}

ErrorClass ClassifyError(const Diagnostic& d) {
  if (d.code) {
    if (auto cls = ClassForCode(*d.code)) return *cls;
  }
  const std::string lower = Lower(d.message);
  for (const KeywordEntry& e : kKeywords) {
    if (lower.find(e.needle) != std::string::npos) return e.cls;
  }
  return ErrorClass::kTypeError;
}

ErrorClass DominantClass(const std::vector<Diagnostic>& diags) {
  ErrorClass best = ErrorClass::kNoError;
  for (const Diagnostic& d : diags) {
    if (d.level != DiagnosticLevel::kError) continue;
    best = std::min(best, ClassifyError(d));
  }
  return best;
}

std::size_t ErrorCount(const std::vector<Diagnostic>& diags) {
  return static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(), [](const Diagnostic& d) {
        return d.level == DiagnosticLevel::kError;
      }));
}

CompilationOutcome MakeCompilationOutcome(std::string sample_id,
                                          std::vector<Diagnostic> diags) {
  CompilationOutcome out;
  out.sample_id = std::move(sample_id);
  out.dominant_class = DominantClass(diags);
  out.compiled = out.dominant_class == ErrorClass::kNoError;
  out.diagnostics = std::move(diags);
  return out;
}

std::string DescribeCodeTable() {
  std::ostringstream out;
  for (ErrorClass c : kAllErrorClasses) {
    if (c == ErrorClass::kNoError) continue;
    out << ErrorClassName(c) << ":";
    for (const CodeEntry& e : kCodeTable) {
      if (e.cls == c) out << " " << e.code;
    }
    out << "\n";
  }
  out << "Unlisted codes are classified by message keywords; anything left is "
         "TypeError. Precedence: APIHallucination > UnresolvedImport > "
         "TraitError > TypeError.\n";
  return out.str();
}

}  // namespace aeadlint
