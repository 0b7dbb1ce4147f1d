#include "json_codec.h"

#include <stdexcept>

namespace aeadlint::codec {

json ToJson(const SourceLocation& loc) {
  return {{"line", loc.line}, {"column", loc.column},
          {"byte_offset", loc.byte_offset}};
}

SourceLocation LocationFromJson(const json& j) {
  SourceLocation loc;
  loc.line = Get<std::size_t>(j, "line");
  loc.column = Get<std::size_t>(j, "column");
  loc.byte_offset = Get<std::size_t>(j, "byte_offset");
  return loc;
}

json ToJson(const Finding& f) {
  return {{"rule_id", RuleName(f.rule_id)},
          {"cwe", f.cwe},
          {"severity", SeverityName(f.severity)},
          {"location", ToJson(f.location)},
          {"message", f.message},
          {"snippet", f.snippet}};
}

Finding FindingFromJson(const json& j) {
  Finding f;
  const auto rule = ParseRuleId(Get<std::string>(j, "rule_id"));
  if (!rule) throw std::runtime_error("unknown rule_id " + j["rule_id"].dump());
  f.rule_id = *rule;
  f.cwe = Get<int>(j, "cwe");
  const auto sev = ParseSeverity(Get<std::string>(j, "severity"));
  if (!sev) throw std::runtime_error("unknown severity " + j["severity"].dump());
  f.severity = *sev;
  f.location = LocationFromJson(Get<json>(j, "location"));
  f.message = Get<std::string>(j, "message");
  f.snippet = Get<std::string>(j, "snippet");
  return f;
}

json ToJson(const Diagnostic& d) {
  json j = {{"level", LevelName(d.level)}, {"message", d.message}};
  j["code"] = d.code ? json(*d.code) : json(nullptr);
  if (d.primary_span) {
    j["span"] = {{"file", d.primary_span->file},
                 {"line", d.primary_span->line},
                 {"column", d.primary_span->column}};
  } else {
    j["span"] = nullptr;
  }
  return j;
}

Diagnostic DiagnosticFromJson(const json& j) {
  Diagnostic d;
  const std::string level = Get<std::string>(j, "level");
  if (level == "error") d.level = DiagnosticLevel::kError;
  else if (level == "warning") d.level = DiagnosticLevel::kWarning;
  else if (level == "note") d.level = DiagnosticLevel::kNote;
  else throw std::runtime_error("unknown diagnostic level " + level);
  d.message = Get<std::string>(j, "message");
  if (j.contains("code") && j["code"].is_string()) d.code = j["code"].get<std::string>();
  if (j.contains("span") && j["span"].is_object()) {
    const json& s = j["span"];
    d.primary_span = DiagnosticSpan{Get<std::string>(s, "file"),
                                    Get<std::size_t>(s, "line"),
                                    Get<std::size_t>(s, "column")};
  }
  return d;
}

json ToJson(const SampleResult& s) {
  json findings = json::array();
  for (const Finding& f : s.findings) findings.push_back(ToJson(f));
  json diags = json::array();
  for (const Diagnostic& d : s.compilation.diagnostics) diags.push_back(ToJson(d));
  return {{"sample_id", s.key.Id()},
          {"model", s.key.model},
          {"algorithm", AlgorithmName(s.key.algorithm)},
          {"strategy", StrategyName(s.key.strategy)},
          {"replicate", s.key.replicate},
          {"compiled", s.compilation.compiled},
          {"dominant_class", ErrorClassName(s.compilation.dominant_class)},
          {"extraction_failed", s.compilation.extraction_failure},
          {"error_count", ErrorCount(s.compilation.diagnostics)},
          {"diagnostics", diags},
          {"findings", findings},
          {"error", s.error}};
}

SampleResult SampleFromJson(const json& j) {
  SampleResult s;
  s.key.model = Get<std::string>(j, "model");
  const auto algo = ParseAlgorithm(Get<std::string>(j, "algorithm"));
  const auto strat = ParseStrategy(Get<std::string>(j, "strategy"));
  if (!algo || !strat) throw std::runtime_error("bad cell key in results record");
  s.key.algorithm = *algo;
  s.key.strategy = *strat;
  s.key.replicate = Get<int>(j, "replicate");
  s.compilation.sample_id = Get<std::string>(j, "sample_id");
  s.compilation.compiled = Get<bool>(j, "compiled");
  const auto cls = ParseErrorClass(Get<std::string>(j, "dominant_class"));
  if (!cls) throw std::runtime_error("bad dominant_class in results record");
  s.compilation.dominant_class = *cls;
  s.compilation.extraction_failure = Get<bool>(j, "extraction_failed");
  for (const json& d : Get<json>(j, "diagnostics")) {
    s.compilation.diagnostics.push_back(DiagnosticFromJson(d));
  }
  for (const json& f : Get<json>(j, "findings")) {
    s.findings.push_back(FindingFromJson(f));
  }
  s.error = Get<std::string>(j, "error");
  return s;
}

}  // namespace aeadlint::codec
