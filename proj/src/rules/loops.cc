#include <regex>

#include "aeadlint/rules.h"
#include "rules/unit_index.h"

namespace aeadlint {

LoopExtraction ExtractLoopBodies(const SourceUnit& unit) {
  using internal::MatchClose;
  static const std::regex keyword_re(R"(\b(for|while|loop)\b)");
  static const std::regex in_re(R"(\bin\b)");

  const std::string& s = unit.structure_text();
  LoopExtraction out;
  internal::ForEachMatch(s, keyword_re, [&](const std::smatch& m) {
    const std::string kw = m[1].str();
    const auto kw_pos = static_cast<std::size_t>(m.position(0));
    std::size_t i = kw_pos + kw.size();

    // Locate the body's opening brace outside parentheses and brackets.
    std::size_t open = std::string::npos;
    int depth = 0;
    for (std::size_t j = i; j < s.size(); ++j) {
      const char c = s[j];
      if (c == '(' || c == '[') {
        ++depth;
      } else if (c == ')' || c == ']') {
        if (--depth < 0) break;
      } else if (depth == 0 && (c == ';' || c == '}')) {
        break;
      } else if (depth == 0 && c == '{') {
        open = j;
        break;
      }
    }
    if (open == std::string::npos) return;

    const std::string header = s.substr(i, open - i);
    LoopKind kind;
    if (kw == "for") {
      // `impl Trait for Type {` and `for<'a>` bounds are not loops.
      const std::string_view h = internal::Trim(header);
      if (h.empty() || h.front() == '<' || !std::regex_search(header, in_re)) {
        return;
      }
      kind = LoopKind::kFor;
    } else if (kw == "while") {
      if (internal::Trim(header).empty()) return;
      kind = LoopKind::kWhile;
    } else {
      if (!internal::Trim(header).empty()) return;
      kind = LoopKind::kLoop;
    }

    const auto close = MatchClose(s, open);
    if (!close) {
      const SourceLocation where = unit.OffsetToLocation(kw_pos);
      out.notes.push_back(
          {where, "unbalanced braces: `" + kw + "` body starting at line " +
                      std::to_string(where.line) +
                      " runs past end of file; loop skipped"});
      return;
    }
    LoopBody body;
    body.header_kind = kind;
    body.header = unit.OffsetToLocation(kw_pos);
    body.body_start = unit.OffsetToLocation(open + 1);
    body.body_end = *close;
    body.body_text = unit.scan_text().substr(open + 1, *close - open - 1);
    out.bodies.push_back(std::move(body));
  });
  return out;
}

}  // namespace aeadlint
