#include "aeadlint/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "aeadlint/errors.h"
#include "json_codec.h"

namespace aeadlint {
namespace {

using nlohmann::json;
using codec::Get;

std::string Pct(double fraction, int decimals = 1) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f%%", decimals, 100.0 * fraction);
  return buf;
}

std::string Fixed(double v, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string FormatP(double p) {
  if (p < 0.001) return "p<0.001";
  return "p=" + Fixed(p, 3);
}

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string Fraction(const Proportion& p) {
  return std::to_string(p.successes) + "/" + std::to_string(p.trials);
}

std::string CiText(const Interval& ci) {
  return "[" + Pct(ci.lower) + ", " + Pct(ci.upper) + "]";
}

json ParseOrThrow(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

// ---- scan codec ----

json ScanToJson(const ScanReport& r) {
  json findings = json::array();
  for (const Finding& f : r.findings) findings.push_back(codec::ToJson(f));
  json notes = json::array();
  for (const ScanNote& n : r.notes) {
    notes.push_back({{"location", codec::ToJson(n.location)}, {"message", n.message}});
  }
  return {{"path", r.path}, {"findings", findings}, {"notes", notes}};
}

ScanReport ScanFromJson(const json& j) {
  ScanReport r;
  r.path = Get<std::string>(j, "path");
  for (const json& f : Get<json>(j, "findings")) {
    r.findings.push_back(codec::FindingFromJson(f));
  }
  for (const json& n : Get<json>(j, "notes")) {
    r.notes.push_back({codec::LocationFromJson(Get<json>(n, "location")),
                       Get<std::string>(n, "message")});
  }
  return r;
}

// ---- stats codec ----

json ToJson(const Proportion& p) {
  return {{"successes", p.successes}, {"trials", p.trials}};
}
Proportion ProportionFromJson(const json& j) {
  return {Get<std::int64_t>(j, "successes"), Get<std::int64_t>(j, "trials")};
}

json ToJson(const GroupRate& g) {
  return {{"label", g.label},
          {"counts", ToJson(g.counts)},
          {"rate", g.counts.trials ? g.counts.Rate() : 0.0},
          {"ci", {{"lower", g.ci.lower}, {"upper", g.ci.upper}}}};
}
GroupRate GroupFromJson(const json& j) {
  GroupRate g;
  g.label = Get<std::string>(j, "label");
  g.counts = ProportionFromJson(Get<json>(j, "counts"));
  const json ci = Get<json>(j, "ci");
  g.ci = {Get<double>(ci, "lower"), Get<double>(ci, "upper")};
  return g;
}

json ToJson(const ChiSquareResult& c) {
  return {{"statistic", c.statistic},     {"df", c.df},
          {"p_value", c.p_value},         {"cramers_v", c.cramers_v},
          {"yates_applied", c.yates_applied},
          {"low_expected_warning", c.low_expected_warning}};
}
ChiSquareResult ChiFromJson(const json& j) {
  ChiSquareResult c;
  c.statistic = Get<double>(j, "statistic");
  c.df = Get<int>(j, "df");
  c.p_value = Get<double>(j, "p_value");
  c.cramers_v = Get<double>(j, "cramers_v");
  c.yates_applied = Get<bool>(j, "yates_applied");
  c.low_expected_warning = Get<bool>(j, "low_expected_warning");
  return c;
}

json ToJson(const StatsReport& r) {
  json tables = json::array();
  for (const RateTable& t : r.tables) {
    json rows = json::array();
    for (const GroupRate& g : t.rows) rows.push_back(ToJson(g));
    tables.push_back({{"title", t.title},
                      {"rows", rows},
                      {"overall", t.overall ? ToJson(*t.overall) : json(nullptr)},
                      {"chi_square", t.chi ? ToJson(*t.chi) : json(nullptr)},
                      {"chi_error", t.chi_error}});
  }
  json crosstabs = json::array();
  for (const CrossTab& c : r.crosstabs) {
    json cells = json::array();
    for (const auto& row : c.cells) {
      json jrow = json::array();
      for (const Proportion& p : row) jrow.push_back(ToJson(p));
      cells.push_back(jrow);
    }
    crosstabs.push_back({{"title", c.title},
                         {"row_labels", c.row_labels},
                         {"col_labels", c.col_labels},
                         {"cells", cells}});
  }
  json intervals = json::array();
  for (const GroupRate& g : r.intervals) intervals.push_back(ToJson(g));
  return {{"tables", tables}, {"crosstabs", crosstabs}, {"intervals", intervals}};
}

StatsReport StatsFromJson(const json& j) {
  StatsReport r;
  for (const json& t : Get<json>(j, "tables")) {
    RateTable table;
    table.title = Get<std::string>(t, "title");
    for (const json& g : Get<json>(t, "rows")) table.rows.push_back(GroupFromJson(g));
    if (t.contains("overall") && !t["overall"].is_null()) {
      table.overall = GroupFromJson(t["overall"]);
    }
    if (t.contains("chi_square") && !t["chi_square"].is_null()) {
      table.chi = ChiFromJson(t["chi_square"]);
    }
    table.chi_error = Get<std::string>(t, "chi_error");
    r.tables.push_back(std::move(table));
  }
  for (const json& c : Get<json>(j, "crosstabs")) {
    CrossTab tab;
    tab.title = Get<std::string>(c, "title");
    tab.row_labels = Get<std::vector<std::string>>(c, "row_labels");
    tab.col_labels = Get<std::vector<std::string>>(c, "col_labels");
    for (const json& row : Get<json>(c, "cells")) {
      std::vector<Proportion> cells;
      for (const json& p : row) cells.push_back(ProportionFromJson(p));
      tab.cells.push_back(std::move(cells));
    }
    r.crosstabs.push_back(std::move(tab));
  }
  for (const json& g : Get<json>(j, "intervals")) r.intervals.push_back(GroupFromJson(g));
  return r;
}

// ---- taxonomy codec ----

json ToJson(const TaxonomyReport& r) {
  json entries = json::array();
  for (const TaxonomyEntry& e : r.entries) {
    entries.push_back({{"sample_id", e.sample_id},
                       {"dominant_class", ErrorClassName(e.dominant_class)},
                       {"error_count", e.error_count}});
  }
  json counts = json::object();
  json shares = json::object();
  for (ErrorClass c : kAllErrorClasses) {
    if (c == ErrorClass::kNoError) continue;
    const auto it = r.class_counts.find(c);
    counts[std::string(ErrorClassName(c))] = it == r.class_counts.end() ? 0 : it->second;
    shares[std::string(ErrorClassName(c))] = r.Share(c);
  }
  return {{"entries", entries},
          {"class_counts", counts},
          {"shares_percent", shares},
          {"failing", r.failing},
          {"extraction_failures", r.extraction_failures},
          {"code_table", DescribeCodeTable()}};
}

TaxonomyReport TaxonomyFromJson(const json& j) {
  TaxonomyReport r;
  for (const json& e : Get<json>(j, "entries")) {
    const auto cls = ParseErrorClass(Get<std::string>(e, "dominant_class"));
    if (!cls) throw IoError("bad dominant_class in taxonomy report");
    r.entries.push_back({Get<std::string>(e, "sample_id"), *cls,
                         Get<std::size_t>(e, "error_count")});
  }
  const json class_counts = Get<json>(j, "class_counts");
  for (const auto& [name, count] : class_counts.items()) {
    const auto cls = ParseErrorClass(name);
    if (!cls) throw IoError("bad class in taxonomy report: " + name);
    if (count.get<int>() > 0) r.class_counts[*cls] = count.get<int>();
  }
  r.failing = Get<int>(j, "failing");
  r.extraction_failures = Get<int>(j, "extraction_failures");
  return r;
}

// ---- experiment helpers ----

json ToJson(const DetectionTable& d) {
  json rows = json::array();
  for (const DetectionRow& row : d.rows) {
    rows.push_back({{"rule_id", RuleName(row.rule)},
                    {"cwe", RuleCwe(row.rule)},
                    {"severity", SeverityName(RuleSeverity(row.rule))},
                    {"samples", row.samples}});
  }
  return {{"compiled", d.compiled},
          {"rows", rows},
          {"any_critical", d.any_critical},
          {"any_finding", d.any_finding}};
}

DetectionTable DetectionFromJson(const json& j) {
  DetectionTable d;
  d.compiled = Get<int>(j, "compiled");
  for (const json& row : Get<json>(j, "rows")) {
    const auto rule = ParseRuleId(Get<std::string>(row, "rule_id"));
    if (!rule) throw IoError("bad rule in detection table");
    d.rows.push_back({*rule, Get<int>(row, "samples")});
  }
  d.any_critical = Get<int>(j, "any_critical");
  d.any_finding = Get<int>(j, "any_finding");
  return d;
}

std::string RenderRateTable(const RateTable& t) {
  std::ostringstream out;
  out << t.title << "\n";
  std::size_t width = 8;
  for (const GroupRate& g : t.rows) width = std::max(width, g.label.size());
  if (t.overall) width = std::max(width, t.overall->label.size());
  width += 2;
  out << "  " << Pad("Group", width) << Pad("Rate", 9) << Pad("95% CI", 18) << "N\n";
  auto row = [&](const GroupRate& g) {
    const std::string rate = g.counts.trials ? Pct(g.counts.Rate()) : "n/a";
    const std::string ci = g.counts.trials ? CiText(g.ci) : "n/a";
    out << "  " << Pad(g.label, width) << Pad(rate, 9) << Pad(ci, 18)
        << Fraction(g.counts) << "\n";
  };
  for (const GroupRate& g : t.rows) row(g);
  if (t.overall) row(*t.overall);
  if (t.chi) {
    out << "  chi-square=" << Fixed(t.chi->statistic, 2) << ", df=" << t.chi->df
        << ", " << FormatP(t.chi->p_value)
        << ", Cramer's V=" << Fixed(t.chi->cramers_v, 3) << ".";
    if (t.chi->yates_applied) out << " (Yates continuity correction)";
    if (t.chi->low_expected_warning) out << " Warning: some expected counts < 5.";
    out << "\n";
  } else if (!t.chi_error.empty()) {
    out << "  chi-square not computed: " << t.chi_error << "\n";
  }
  return out.str();
}

std::string RenderCrossTab(const CrossTab& c) {
  std::ostringstream out;
  out << c.title << "\n";
  std::size_t width = 8;
  for (const std::string& l : c.row_labels) width = std::max(width, l.size());
  width += 2;
  out << "  " << Pad("", width);
  for (const std::string& l : c.col_labels) out << Pad(l, 22);
  out << "Total\n";
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    out << "  " << Pad(c.row_labels[i], width);
    Proportion total;
    for (const Proportion& p : c.cells[i]) {
      const std::string rate = p.trials ? " (" + Pct(p.Rate()) + ")" : "";
      out << Pad(Fraction(p) + rate, 22);
      total.successes += p.successes;
      total.trials += p.trials;
    }
    out << Fraction(total) << "\n";
  }
  return out.str();
}

GroupRate MakeGroup(const std::string& label, const Proportion& p) {
  GroupRate g{label, p, {}};
  if (p.trials > 0) g.ci = WilsonInterval(p);
  return g;
}

}  // namespace

std::optional<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "text") return ReportFormat::kText;
  if (name == "json") return ReportFormat::kJson;
  if (name == "sarif") return ReportFormat::kSarif;
  return std::nullopt;
}

// ---- scan ----

std::string RenderScanText(const std::vector<ScanReport>& reports) {
  std::ostringstream out;
  std::map<Severity, int> by_severity;
  std::size_t total = 0;
  for (const ScanReport& r : reports) {
    for (const ScanNote& n : r.notes) {
      out << r.path << ":" << n.location.line << ":" << n.location.column
          << ": note: " << n.message << "\n";
    }
    if (r.findings.empty()) {
      out << r.path << ": no findings\n";
      continue;
    }
    for (const Finding& f : r.findings) {
      out << r.path << ":" << f.location.line << ":" << f.location.column << ": "
          << SeverityName(f.severity) << " CWE-" << f.cwe << " "
          << RuleName(f.rule_id) << ": " << f.message << "\n";
      if (!f.snippet.empty()) out << "    " << f.snippet << "\n";
      ++by_severity[f.severity];
      ++total;
    }
  }
  out << total << (total == 1 ? " finding" : " findings");
  if (total > 0) {
    out << " (";
    bool first = true;
    for (Severity s : {Severity::kCritical, Severity::kHigh, Severity::kMedium}) {
      if (!by_severity[s]) continue;
      if (!first) out << ", ";
      out << by_severity[s] << " " << SeverityName(s);
      first = false;
    }
    out << ")";
  }
  out << " in " << reports.size() << (reports.size() == 1 ? " file" : " files")
      << "\n";
  return out.str();
}

std::string RenderScanJson(const std::vector<ScanReport>& reports) {
  json files = json::array();
  for (const ScanReport& r : reports) files.push_back(ScanToJson(r));
  return json{{"kind", "scan"}, {"files", files}}.dump(2) + "\n";
}

std::vector<ScanReport> ParseScanJson(std::string_view text) {
  const json doc = ParseOrThrow(text, "scan report");
  std::vector<ScanReport> out;
  for (const json& f : Get<json>(doc, "files")) out.push_back(ScanFromJson(f));
  return out;
}

std::string_view SarifLevel(Severity s) {
  return s == Severity::kMedium ? "warning" : "error";
}

std::string RenderSarif(const std::vector<ScanReport>& reports) {
  json rules = json::array();
  for (RuleId id : kAllRules) {
    rules.push_back(
        {{"id", RuleName(id)},
         {"name", RuleName(id)},
         {"shortDescription", {{"text", std::string(RuleName(id))}}},
         {"defaultConfiguration", {{"level", SarifLevel(RuleSeverity(id))}}},
         {"properties",
          {{"cwe", "CWE-" + std::to_string(RuleCwe(id))},
           {"severity", SeverityName(RuleSeverity(id))}}}});
  }
  json results = json::array();
  for (const ScanReport& r : reports) {
    for (const Finding& f : r.findings) {
      results.push_back(
          {{"ruleId", RuleName(f.rule_id)},
           {"ruleIndex", static_cast<int>(f.rule_id)},
           {"level", SarifLevel(f.severity)},
           {"message", {{"text", f.message}}},
           {"locations",
            json::array({{{"physicalLocation",
                           {{"artifactLocation", {{"uri", r.path}}},
                            {"region",
                             {{"startLine", f.location.line},
                              {"startColumn", f.location.column}}}}}}})},
           {"properties",
            {{"cwe", "CWE-" + std::to_string(f.cwe)},
             {"severity", SeverityName(f.severity)}}}});
    }
  }
  const json doc = {
      {"$schema", "https://json.schemastore.org/sarif-2.1.0.json"},
      {"version", "2.1.0"},
      {"runs",
       json::array({{{"tool",
                      {{"driver",
                        {{"name", kToolName},
                         {"version", kToolVersion},
                         {"informationUri", "https://cwe.mitre.org/"},
                         {"rules", rules}}}}},
                     {"results", results}}})}};
  return doc.dump(2) + "\n";
}

// ---- validation ----

std::string RenderValidationText(const ScoreReport& r) {
  std::ostringstream out;
  out << "Validation: " << r.Total() << " cases\n";
  out << "  TP " << r.tp << "  FP " << r.fp << "  FN " << r.fn << "  TN " << r.tn
      << "\n";
  out << "  precision " << Pct(r.precision) << " (" << r.tp << " TP, " << r.fp
      << " FP), recall " << Pct(r.recall) << " (" << r.tp << "/" << r.tp + r.fn
      << "), F1 " << Pct(r.f1) << ", accuracy " << Pct(r.accuracy) << " ("
      << r.tp + r.tn << "/" << r.Total() << ")\n";
  if (!r.per_cwe.empty()) {
    out << "  per-CWE detection:";
    bool first = true;
    for (const auto& [cwe, t] : r.per_cwe) {
      out << (first ? " " : ", ") << "CWE-" << cwe << " (" << t.detected << "/"
          << t.total << ")";
      first = false;
    }
    out << "\n";
  }
  out << "  cases:\n";
  std::size_t width = 10;
  for (const CaseResult& c : r.cases) width = std::max(width, c.case_id.size());
  for (const CaseResult& c : r.cases) {
    std::set<std::string> rules;
    for (const Finding& f : c.findings) rules.insert(std::string(RuleName(f.rule_id)));
    std::string fired;
    for (const std::string& name : rules) fired += (fired.empty() ? "" : ",") + name;
    out << "    " << Pad(c.case_id, width + 2) << Pad(std::string(CaseKindName(c.kind)), 24)
        << Pad(std::string(OutcomeName(c.outcome)), 4)
        << (c.as_designed ? "  " : "! ") << (fired.empty() ? "-" : fired) << "\n";
  }
  return out.str();
}

std::string RenderValidationJson(const ScoreReport& r) {
  json cases = json::array();
  for (const CaseResult& c : r.cases) {
    json findings = json::array();
    for (const Finding& f : c.findings) findings.push_back(codec::ToJson(f));
    cases.push_back({{"case_id", c.case_id},
                     {"kind", CaseKindName(c.kind)},
                     {"outcome", OutcomeName(c.outcome)},
                     {"as_designed", c.as_designed},
                     {"findings", findings}});
  }
  json per_cwe = json::object();
  for (const auto& [cwe, t] : r.per_cwe) {
    per_cwe["CWE-" + std::to_string(cwe)] = {{"detected", t.detected},
                                             {"total", t.total}};
  }
  const json doc = {{"kind", "validation"}, {"tp", r.tp},
                    {"fp", r.fp},           {"fn", r.fn},
                    {"tn", r.tn},           {"precision", r.precision},
                    {"recall", r.recall},   {"f1", r.f1},
                    {"accuracy", r.accuracy}, {"per_cwe", per_cwe},
                    {"cases", cases}};
  return doc.dump(2) + "\n";
}

ScoreReport ParseValidationJson(std::string_view text) {
  const json doc = ParseOrThrow(text, "validation report");
  ScoreReport r;
  r.tp = Get<int>(doc, "tp");
  r.fp = Get<int>(doc, "fp");
  r.fn = Get<int>(doc, "fn");
  r.tn = Get<int>(doc, "tn");
  r.precision = Get<double>(doc, "precision");
  r.recall = Get<double>(doc, "recall");
  r.f1 = Get<double>(doc, "f1");
  r.accuracy = Get<double>(doc, "accuracy");
  const json per_cwe = Get<json>(doc, "per_cwe");
  for (const auto& [name, t] : per_cwe.items()) {
    const auto e = ParseExpectation(name);
    if (!e || e->rule) throw IoError("bad per_cwe key " + name);
    r.per_cwe[e->cwe] = {Get<int>(t, "detected"), Get<int>(t, "total")};
  }
  for (const json& c : Get<json>(doc, "cases")) {
    CaseResult cr;
    cr.case_id = Get<std::string>(c, "case_id");
    const auto kind = ParseCaseKind(Get<std::string>(c, "kind"));
    if (!kind) throw IoError("bad case kind");
    cr.kind = *kind;
    const std::string o = Get<std::string>(c, "outcome");
    if (o == "TP") cr.outcome = Outcome::kTP;
    else if (o == "FP") cr.outcome = Outcome::kFP;
    else if (o == "FN") cr.outcome = Outcome::kFN;
    else if (o == "TN") cr.outcome = Outcome::kTN;
    else throw IoError("bad outcome " + o);
    cr.as_designed = Get<bool>(c, "as_designed");
    for (const json& f : Get<json>(c, "findings")) {
      cr.findings.push_back(codec::FindingFromJson(f));
    }
    r.cases.push_back(std::move(cr));
  }
  return r;
}

// ---- taxonomy ----

double TaxonomyReport::Share(ErrorClass c) const {
  if (failing == 0) return 0.0;
  const auto it = class_counts.find(c);
  return it == class_counts.end() ? 0.0 : 100.0 * it->second / failing;
}

TaxonomyReport BuildTaxonomy(const std::vector<CompilationOutcome>& outcomes) {
  TaxonomyReport r;
  for (const CompilationOutcome& o : outcomes) {
    r.entries.push_back({o.sample_id, o.dominant_class, ErrorCount(o.diagnostics)});
    if (o.compiled) continue;
    if (o.extraction_failure) {
      ++r.extraction_failures;
      continue;
    }
    ++r.failing;
    ++r.class_counts[o.dominant_class];
  }
  return r;
}

std::string RenderTaxonomyText(const TaxonomyReport& r) {
  std::ostringstream out;
  std::size_t width = 10;
  for (const TaxonomyEntry& e : r.entries) width = std::max(width, e.sample_id.size());
  for (const TaxonomyEntry& e : r.entries) {
    out << Pad(e.sample_id, width + 2) << Pad(std::string(ErrorClassName(e.dominant_class)), 18)
        << e.error_count << (e.error_count == 1 ? " error" : " errors") << "\n";
  }
  out << "Error classes over " << r.failing << " non-compiling samples:\n";
  for (ErrorClass c : kAllErrorClasses) {
    if (c == ErrorClass::kNoError) continue;
    const auto it = r.class_counts.find(c);
    const int n = it == r.class_counts.end() ? 0 : it->second;
    out << "  " << Pad(std::string(ErrorClassName(c)), 18) << Pad(std::to_string(n), 5)
        << Fixed(r.Share(c), 1) << "%\n";
  }
  if (r.extraction_failures > 0) {
    out << "  (" << r.extraction_failures
        << (r.extraction_failures == 1 ? " extraction failure: response has"
                                       : " extraction failures: responses have")
        << " no code block and are not classified)\n";
  }
  out << "Code table:\n";
  std::istringstream table(DescribeCodeTable());
  for (std::string line; std::getline(table, line);) out << "  " << line << "\n";
  return out.str();
}

std::string RenderTaxonomyJson(const TaxonomyReport& r) {
  json doc = ToJson(r);
  doc["kind"] = "taxonomy";
  return doc.dump(2) + "\n";
}

TaxonomyReport ParseTaxonomyJson(std::string_view text) {
  return TaxonomyFromJson(ParseOrThrow(text, "taxonomy report"));
}

// ---- stats ----

RateTable BuildRateTable(const std::string& title,
                         const std::vector<LabeledCount>& groups,
                         bool with_overall) {
  RateTable t;
  t.title = title;
  Proportion overall;
  for (const LabeledCount& g : groups) {
    t.rows.push_back(MakeGroup(g.label, g.counts));
    overall.successes += g.counts.successes;
    overall.trials += g.counts.trials;
  }
  if (with_overall) t.overall = MakeGroup("Overall", overall);
  if (groups.size() < 2) {
    t.chi_error = "chi-square needs at least 2 rows";
    return t;
  }
  std::vector<std::string> labels;
  std::vector<Proportion> props;
  for (const LabeledCount& g : groups) {
    labels.push_back(g.label);
    props.push_back(g.counts);
  }
  try {
    t.chi = ChiSquareDefault(ContingencyTable::FromProportions(labels, props));
  } catch (const DegenerateTableError& e) {
    t.chi_error = e.what();
  }
  return t;
}

StatsReport BuildStatsFromCounts(std::string_view counts_json) {
  const json doc = ParseOrThrow(counts_json, "counts file");
  StatsReport r;
  try {
    for (const json& t : doc.value("tables", json::array())) {
      std::vector<LabeledCount> groups;
      for (const json& g : t.at("groups")) {
        Proportion p{g.at("successes").get<std::int64_t>(),
                     g.at("trials").get<std::int64_t>()};
        if (p.trials < 1 || p.successes < 0 || p.successes > p.trials) {
          throw DegenerateTableError("bad counts for group " + g.dump());
        }
        groups.push_back({g.at("label").get<std::string>(), p});
      }
      const std::string title = t.at("title").get<std::string>();
      if (groups.size() < 2) {
        throw DegenerateTableError(title + ": chi-square needs at least 2 rows");
      }
      RateTable table = BuildRateTable(title, groups, t.value("overall", false));
      if (!table.chi) throw DegenerateTableError(title + ": " + table.chi_error);
      r.tables.push_back(std::move(table));
    }
    for (const json& c : doc.value("crosstabs", json::array())) {
      CrossTab tab;
      tab.title = c.at("title").get<std::string>();
      tab.row_labels = c.at("row_labels").get<std::vector<std::string>>();
      tab.col_labels = c.at("col_labels").get<std::vector<std::string>>();
      for (const json& row : c.at("cells")) {
        std::vector<Proportion> cells;
        for (const json& p : row) {
          cells.push_back({p.at("successes").get<std::int64_t>(),
                           p.at("trials").get<std::int64_t>()});
        }
        if (cells.size() != tab.col_labels.size()) {
          throw DegenerateTableError(tab.title + ": row width does not match columns");
        }
        tab.cells.push_back(std::move(cells));
      }
      if (tab.cells.size() != tab.row_labels.size()) {
        throw DegenerateTableError(tab.title + ": row count does not match labels");
      }
      r.crosstabs.push_back(std::move(tab));
    }
    for (const json& g : doc.value("intervals", json::array())) {
      const Proportion p{g.at("successes").get<std::int64_t>(),
                         g.at("trials").get<std::int64_t>()};
      r.intervals.push_back(MakeGroup(g.at("label").get<std::string>(), p));
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("counts file has an unexpected shape: ") + e.what());
  }
  return r;
}

std::string RenderStatsText(const StatsReport& r) {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << "\n";
    first = false;
  };
  for (const RateTable& t : r.tables) {
    sep();
    out << RenderRateTable(t);
  }
  for (const CrossTab& c : r.crosstabs) {
    sep();
    out << RenderCrossTab(c);
  }
  if (!r.intervals.empty()) {
    sep();
    out << "Proportions with 95% Wilson intervals\n";
    for (const GroupRate& g : r.intervals) {
      out << "  " << g.label << ": " << Fraction(g.counts) << " ("
          << Pct(g.counts.Rate()) << "), 95% CI " << CiText(g.ci) << "\n";
    }
  }
  return out.str();
}

std::string RenderStatsJson(const StatsReport& r) {
  json doc = ToJson(r);
  doc["kind"] = "stats";
  return doc.dump(2) + "\n";
}

StatsReport ParseStatsJson(std::string_view text) {
  return StatsFromJson(ParseOrThrow(text, "stats report"));
}

// ---- experiment ----

ExperimentReport BuildExperimentReport(const ExperimentMatrix& m) {
  ExperimentReport r;
  r.samples = static_cast<int>(m.samples.size());

  std::vector<std::string> models;
  std::vector<Algorithm> algorithms;
  std::vector<Strategy> strategies;
  std::map<std::string, Proportion> by_model;
  std::map<Algorithm, Proportion> by_algorithm;
  std::map<Strategy, Proportion> by_strategy;
  std::map<std::pair<std::string, Algorithm>, Proportion> by_model_algo;
  std::vector<CompilationOutcome> outcomes;

  for (const SampleResult& s : m.samples) {
    if (!s.error.empty()) ++r.sample_errors;
    if (std::find(models.begin(), models.end(), s.key.model) == models.end()) {
      models.push_back(s.key.model);
    }
    if (std::find(algorithms.begin(), algorithms.end(), s.key.algorithm) ==
        algorithms.end()) {
      algorithms.push_back(s.key.algorithm);
    }
    if (std::find(strategies.begin(), strategies.end(), s.key.strategy) ==
        strategies.end()) {
      strategies.push_back(s.key.strategy);
    }
    const int ok = s.compilation.compiled ? 1 : 0;
    for (Proportion* p : {&by_model[s.key.model], &by_algorithm[s.key.algorithm],
                          &by_strategy[s.key.strategy],
                          &by_model_algo[{s.key.model, s.key.algorithm}]}) {
      p->successes += ok;
      ++p->trials;
    }
    outcomes.push_back(s.compilation);

    if (!s.compilation.compiled) continue;
    ++r.detections.compiled;
    std::set<RuleId> fired;
    for (const Finding& f : s.findings) fired.insert(f.rule_id);
    if (!fired.empty()) ++r.detections.any_finding;
    if (std::any_of(fired.begin(), fired.end(), [](RuleId id) {
          return RuleSeverity(id) == Severity::kCritical;
        })) {
      ++r.detections.any_critical;
    }
    for (RuleId id : fired) {
      auto it = std::find_if(r.detections.rows.begin(), r.detections.rows.end(),
                             [&](const DetectionRow& row) { return row.rule == id; });
      if (it == r.detections.rows.end()) {
        r.detections.rows.push_back({id, 0});
        it = r.detections.rows.end() - 1;
      }
      ++it->samples;
    }
  }
  for (RuleId id : kAllRules) {
    if (std::none_of(r.detections.rows.begin(), r.detections.rows.end(),
                     [&](const DetectionRow& row) { return row.rule == id; })) {
      r.detections.rows.push_back({id, 0});
    }
  }
  std::sort(r.detections.rows.begin(), r.detections.rows.end(),
            [](const DetectionRow& a, const DetectionRow& b) { return a.rule < b.rule; });
  std::sort(algorithms.begin(), algorithms.end());
  std::sort(strategies.begin(), strategies.end());

  std::vector<LabeledCount> g;
  for (const std::string& model : models) g.push_back({model, by_model[model]});
  r.stats.tables.push_back(BuildRateTable("Compilation Success Rate by Model", g, false));
  g.clear();
  for (Strategy s : strategies) {
    g.push_back({std::string(StrategyLabel(s)), by_strategy[s]});
  }
  r.stats.tables.push_back(
      BuildRateTable("Compilation Success Rate by Prompt Type", g, true));
  g.clear();
  for (Algorithm a : algorithms) {
    g.push_back({std::string(AlgorithmLabel(a)), by_algorithm[a]});
  }
  r.stats.tables.push_back(
      BuildRateTable("Compilation Success Rate by Algorithm", g, false));

  CrossTab tab;
  tab.title = "Compilation Success Rate by Model and Algorithm";
  for (Algorithm a : algorithms) tab.col_labels.emplace_back(AlgorithmLabel(a));
  for (const std::string& model : models) {
    tab.row_labels.push_back(model);
    std::vector<Proportion> row;
    for (Algorithm a : algorithms) row.push_back(by_model_algo[{model, a}]);
    tab.cells.push_back(std::move(row));
  }
  r.stats.crosstabs.push_back(std::move(tab));

  if (r.detections.compiled > 0) {
    const auto n = static_cast<std::int64_t>(r.detections.compiled);
    r.stats.intervals.push_back(
        MakeGroup("Compiled samples with any finding", {r.detections.any_finding, n}));
    r.stats.intervals.push_back(
        MakeGroup("Compiled samples with a CRITICAL finding", {r.detections.any_critical, n}));
    for (const DetectionRow& row : r.detections.rows) {
      if (row.rule == RuleId::kUnsafeErrorHandling) {
        r.stats.intervals.push_back(
            MakeGroup("Compiled samples with unsafe error handling", {row.samples, n}));
      }
    }
  }
  r.taxonomy = BuildTaxonomy(outcomes);
  return r;
}

std::string RenderExperimentText(const ExperimentReport& r) {
  std::ostringstream out;
  out << "Samples: " << r.samples;
  if (r.sample_errors) out << " (" << r.sample_errors << " with operational errors)";
  out << "\n\n" << RenderStatsText(r.stats) << "\n";
  out << "Analyzer detections (n=" << r.detections.compiled << " compiled)\n";
  out << "  " << Pad("Rule", 28) << Pad("CWE", 6) << Pad("Sev.", 10) << "Count\n";
  for (const DetectionRow& row : r.detections.rows) {
    out << "  " << Pad(std::string(RuleName(row.rule)), 28)
        << Pad(std::to_string(RuleCwe(row.rule)), 6)
        << Pad(std::string(SeverityName(RuleSeverity(row.rule))), 10) << row.samples
        << "\n";
  }
  out << "  " << Pad("Any CRITICAL", 44) << r.detections.any_critical << "\n";
  out << "  " << Pad("Any finding", 44) << r.detections.any_finding << "\n\n";
  out << "Compilation error taxonomy\n";
  std::istringstream tax(RenderTaxonomyText(r.taxonomy));
  bool in_summary = false;
  for (std::string line; std::getline(tax, line);) {
    if (line.rfind("Error classes", 0) == 0) in_summary = true;
    if (in_summary) out << "  " << line << "\n";
  }
  return out.str();
}

std::string RenderExperimentJson(const ExperimentReport& r) {
  const json doc = {{"kind", "experiment"},
                    {"samples", r.samples},
                    {"sample_errors", r.sample_errors},
                    {"stats", ToJson(r.stats)},
                    {"taxonomy", ToJson(r.taxonomy)},
                    {"detections", ToJson(r.detections)}};
  return doc.dump(2) + "\n";
}

ExperimentReport ParseExperimentJson(std::string_view text) {
  const json doc = ParseOrThrow(text, "experiment report");
  ExperimentReport r;
  r.samples = Get<int>(doc, "samples");
  r.sample_errors = Get<int>(doc, "sample_errors");
  r.stats = StatsFromJson(Get<json>(doc, "stats"));
  r.taxonomy = TaxonomyFromJson(Get<json>(doc, "taxonomy"));
  r.detections = DetectionFromJson(Get<json>(doc, "detections"));
  return r;
}

std::vector<std::string> CompareWithManifest(const ExperimentMatrix& matrix,
                                             const FixtureManifest& manifest) {
  using Cell = std::tuple<std::string, Algorithm, Strategy>;
  std::map<Cell, std::pair<int, int>> expected;  // compiled, samples
  std::map<Cell, std::pair<int, int>> actual;
  for (const FixtureSample& f : manifest.samples) {
    auto& e = expected[{f.key.model, f.key.algorithm, f.key.strategy}];
    e.first += f.compiled ? 1 : 0;
    ++e.second;
  }
  for (const SampleResult& s : matrix.samples) {
    auto& a = actual[{s.key.model, s.key.algorithm, s.key.strategy}];
    a.first += s.compilation.compiled ? 1 : 0;
    ++a.second;
  }
  std::vector<std::string> mismatches;
  std::set<Cell> cells;
  for (const auto& [c, _] : expected) cells.insert(c);
  for (const auto& [c, _] : actual) cells.insert(c);
  for (const Cell& c : cells) {
    const auto e = expected[c];
    const auto a = actual[c];
    if (e != a) {
      mismatches.push_back(std::get<0>(c) + "/" +
                           std::string(AlgorithmName(std::get<1>(c))) + "/" +
                           std::string(StrategyName(std::get<2>(c))) + ": manifest " +
                           std::to_string(e.first) + "/" + std::to_string(e.second) +
                           " compiled, results " + std::to_string(a.first) + "/" +
                           std::to_string(a.second));
    }
  }
  return mismatches;
}

}  // namespace aeadlint
