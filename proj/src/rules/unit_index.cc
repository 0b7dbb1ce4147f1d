#include "rules/unit_index.h"

#include <algorithm>
#include <cctype>

#include "aeadlint/errors.h"

namespace aeadlint::internal {
namespace {

char ClosingFor(char open) {
  switch (open) {
    case '(': return ')';
    case '[': return ']';
    case '{': return '}';
    case '<': return '>';
    default: return '\0';
  }
}

char OpeningFor(char close) {
  switch (close) {
    case ')': return '(';
    case ']': return '[';
    case '}': return '{';
    case '>': return '<';
    default: return '\0';
  }
}

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Decoded length of the body of a byte-string literal.
std::optional<std::size_t> ByteStringLength(std::string_view body) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '\\') {
      ++n;
      continue;
    }
    if (i + 1 >= body.size()) return std::nullopt;
    const char e = body[i + 1];
    if (e == 'x') {
      i += 3;
      ++n;
    } else if (e == '\n' || e == '\r') {
      // Line continuation: skip the newline and leading whitespace.
      ++i;
      while (i + 1 < body.size() && IsSpace(body[i + 1])) ++i;
    } else {
      ++i;
      ++n;
    }
  }
  return n;
}

const std::regex& IntLiteral() {
  static const std::regex re(
      R"(\s*(?:0x[0-9a-fA-F_]+|0o[0-7_]+|0b[01_]+|\d[\d_]*|b'(?:[^'\\]|\\[^']{1,4})')(?:u8|i8|u16|u32|u64|usize)?\s*)");
  return re;
}

}  // namespace

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::optional<std::size_t> MatchClose(std::string_view text,
                                      std::size_t open) {
  if (open >= text.size()) return std::nullopt;
  const char o = text[open];
  const char c = ClosingFor(o);
  if (c == '\0') return std::nullopt;
  int depth = 0;
  for (std::size_t i = open; i < text.size(); ++i) {
    if (text[i] == o) {
      ++depth;
    } else if (text[i] == c) {
      // `->` and `=>` are not closing angle brackets.
      if (c == '>' && i > 0 && (text[i - 1] == '-' || text[i - 1] == '=')) {
        continue;
      }
      if (--depth == 0) return i;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> MatchOpen(std::string_view text,
                                     std::size_t close) {
  if (close >= text.size()) return std::nullopt;
  const char c = text[close];
  const char o = OpeningFor(c);
  if (o == '\0') return std::nullopt;
  int depth = 0;
  for (std::size_t i = close + 1; i-- > 0;) {
    if (text[i] == c) {
      if (c == '>' && i > 0 && (text[i - 1] == '-' || text[i - 1] == '=')) {
        continue;
      }
      ++depth;
    } else if (text[i] == o) {
      if (--depth == 0) return i;
    }
  }
  return std::nullopt;
}

Span FirstArgument(std::string_view structure, std::size_t open_paren) {
  int depth = 0;
  for (std::size_t i = open_paren + 1; i < structure.size(); ++i) {
    const char c = structure[i];
    if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      if (depth == 0) return {open_paren + 1, i};
      --depth;
    } else if (c == ',' && depth == 0) {
      return {open_paren + 1, i};
    }
  }
  return {open_paren + 1, structure.size()};
}

Span StatementAround(std::string_view structure, std::size_t pos) {
  pos = std::min(pos, structure.size());
  std::size_t begin = 0;
  int depth = 0;
  for (std::size_t i = pos; i-- > 0;) {
    const char c = structure[i];
    if (c == ')' || c == ']') {
      ++depth;
    } else if (c == '(' || c == '[') {
      --depth;
    } else if ((c == ';' || c == '{' || c == '}') && depth <= 0) {
      begin = i + 1;
      break;
    }
  }
  std::size_t end = structure.size();
  depth = 0;
  for (std::size_t i = pos; i < structure.size(); ++i) {
    const char c = structure[i];
    if (c == '(' || c == '[') {
      ++depth;
    } else if (c == ')' || c == ']') {
      --depth;
    } else if ((c == ';' || c == '{' || c == '}') && depth <= 0) {
      end = i;
      break;
    }
  }
  return {begin, end};
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view StripBorrow(std::string_view expr) {
  expr = Trim(expr);
  for (;;) {
    if (StartsWith(expr, "&")) {
      expr = Trim(expr.substr(1));
    } else if (StartsWith(expr, "*")) {
      expr = Trim(expr.substr(1));
    } else if (StartsWith(expr, "mut") && expr.size() > 3 &&
               IsSpace(expr[3])) {
      expr = Trim(expr.substr(3));
    } else {
      return expr;
    }
  }
}

std::optional<std::size_t> LiteralMaterialSize(std::string_view expr) {
  std::string_view s = StripBorrow(expr);
  static constexpr std::string_view kSuffixes[] = {
      ".into()", ".as_ref()", ".as_slice()", "[..]"};
  for (bool stripped = true; stripped;) {
    stripped = false;
    s = Trim(s);
    for (std::string_view suffix : kSuffixes) {
      if (EndsWith(s, suffix)) {
        s.remove_suffix(suffix.size());
        stripped = true;
      }
    }
  }
  s = StripBorrow(s);
  if (s.size() >= 3 && StartsWith(s, "b\"") && s.back() == '"') {
    return ByteStringLength(s.substr(2, s.size() - 3));
  }
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
  const std::string inner(s.substr(1, s.size() - 2));

  const auto semi = inner.find(';');
  if (semi != std::string::npos) {
    const std::string value = inner.substr(0, semi);
    const std::string count(Trim(std::string_view(inner).substr(semi + 1)));
    if (!std::regex_match(value, IntLiteral())) return std::nullopt;
    if (count.empty() ||
        !std::all_of(count.begin(), count.end(),
                     [](char c) { return std::isdigit(c) || c == '_'; })) {
      return std::nullopt;
    }
    std::string digits;
    std::copy_if(count.begin(), count.end(), std::back_inserter(digits),
                 [](char c) { return c != '_'; });
    return static_cast<std::size_t>(std::stoul(digits));
  }

  std::size_t n = 0;
  std::size_t start = 0;
  while (start <= inner.size()) {
    std::size_t comma = inner.find(',', start);
    if (comma == std::string::npos) comma = inner.size();
    const std::string item = inner.substr(start, comma - start);
    if (Trim(item).empty()) {
      // Only a trailing comma may leave an empty item.
      if (comma != inner.size() || n == 0) return std::nullopt;
    } else {
      if (!std::regex_match(item, IntLiteral())) return std::nullopt;
      ++n;
    }
    start = comma + 1;
  }
  return n == 0 ? std::nullopt : std::optional<std::size_t>(n);
}

std::string RootIdentifier(std::string_view expr) {
  std::string_view s = StripBorrow(expr);
  std::size_t n = 0;
  while (n < s.size() && IsIdentChar(s[n])) ++n;
  if (n == 0 || std::isdigit(static_cast<unsigned char>(s[0]))) return {};
  return std::string(s.substr(0, n));
}

bool ContainsWord(std::string_view text, std::string_view word) {
  if (word.empty()) return false;
  for (std::size_t pos = text.find(word); pos != std::string_view::npos;
       pos = text.find(word, pos + 1)) {
    const bool left = pos == 0 || !IsIdentChar(text[pos - 1]);
    const std::size_t end = pos + word.size();
    const bool right = end >= text.size() || !IsIdentChar(text[end]);
    if (left && right) return true;
  }
  return false;
}

const std::regex& EntropyPattern() {
  static const std::regex re(
      R"(\b(?:OsRng|fill_bytes|try_fill_bytes|generate_nonce|generate_key)\b)");
  return re;
}

const std::regex& EncryptCallPattern() {
  static const std::regex re(R"(\.encrypt(?:_in_place(?:_detached)?)?\s*\()");
  return re;
}

UnitIndex::UnitIndex(const SourceUnit& unit)
    : unit_(&unit), loops_(ExtractLoopBodies(unit)) {
  IndexDeclarations();
  IndexEncryptCalls();
  IndexConstructors();
}

bool UnitIndex::InCode(std::size_t pos) const {
  return pos < structure().size() && structure()[pos] == scan()[pos] &&
         !IsSpace(scan()[pos]);
}

void UnitIndex::IndexDeclarations() {
  const std::string& s = structure();
  static const std::regex let_re(R"(\blet\s+(?:mut\s+)?([A-Za-z_]\w*)\b)");
  ForEachMatch(s, let_re, [&](const std::smatch& m) {
    Declaration d;
    d.name = m[1].str();
    d.offset = static_cast<std::size_t>(m.position(0));
    std::size_t i = static_cast<std::size_t>(m.position(0) + m.length(0));
    // Optional type annotation, then `=`.
    int depth = 0;
    for (; i < s.size(); ++i) {
      const char c = s[i];
      if (c == '(' || c == '[' || c == '<') ++depth;
      if (c == ')' || c == ']' || (c == '>' && s[i - 1] != '-')) --depth;
      if (depth <= 0 && (c == ';' || c == '{' || c == '}')) break;
      if (depth <= 0 && c == '=' && (i + 1 >= s.size() || s[i + 1] != '=')) {
        break;
      }
    }
    if (i < s.size() && s[i] == '=') {
      const std::size_t begin = i + 1;
      depth = 0;
      std::size_t end = s.size();
      for (std::size_t j = begin; j < s.size(); ++j) {
        const char c = s[j];
        if (c == '(' || c == '[' || c == '{') {
          ++depth;
        } else if (c == ')' || c == ']' || c == '}') {
          if (depth == 0) {
            end = j;
            break;
          }
          --depth;
        } else if (c == ';' && depth == 0) {
          end = j;
          break;
        }
      }
      d.init = {begin, end};
    }
    decls_.push_back(std::move(d));
  });

  static const std::regex fn_re(R"(\bfn\s+\w+\s*(?:<[^{;(]*>)?\s*\()");
  static const std::regex param_re(R"(^\s*(?:mut\s+)?([A-Za-z_]\w*)\s*:)");
  ForEachMatch(s, fn_re, [&](const std::smatch& m) {
    const std::size_t open =
        static_cast<std::size_t>(m.position(0) + m.length(0)) - 1;
    const auto close = MatchClose(s, open);
    if (!close) return;
    std::size_t start = open + 1;
    int depth = 0;
    for (std::size_t i = open + 1; i <= *close; ++i) {
      const char c = s[i];
      if (c == '(' || c == '[' || c == '<' || c == '{') ++depth;
      if ((c == ')' || c == ']' || c == '}' || (c == '>' && s[i - 1] != '-')) &&
          i != *close) {
        --depth;
      }
      if ((c == ',' && depth == 0) || i == *close) {
        const std::string param = s.substr(start, i - start);
        std::smatch pm;
        if (std::regex_search(param, pm, param_re) && pm[1].str() != "self") {
          Declaration d;
          d.name = pm[1].str();
          d.offset = start + static_cast<std::size_t>(pm.position(1));
          d.is_param = true;
          decls_.push_back(std::move(d));
        }
        start = i + 1;
      }
    }
  });

  std::stable_sort(decls_.begin(), decls_.end(),
                   [](const Declaration& a, const Declaration& b) {
                     return a.offset < b.offset;
                   });
}

void UnitIndex::IndexEncryptCalls() {
  // The lifecycle capture pattern: first identifier argument, optionally
  // behind `&` or `&mut`.
  static const std::regex capture_re(
      R"(\.encrypt(?:_in_place(?:_detached)?)?\s*\(\s*(?:&(?:mut\s+)?)?(\w+))");
  const std::string& s = structure();
  ForEachMatch(s, EncryptCallPattern(), [&](const std::smatch& m) {
    const auto dot = static_cast<std::size_t>(m.position(0));
    if (!InCode(dot)) return;
    EncryptCall call;
    call.dot = dot;
    call.open_paren = dot + static_cast<std::size_t>(m.length(0)) - 1;
    call.close_paren = MatchClose(s, call.open_paren).value_or(s.size());
    call.first_arg = FirstArgument(s, call.open_paren);

    const std::string_view arg = Text(call.first_arg);
    std::smatch cm;
    const std::string tail = scan().substr(dot, call.first_arg.end - dot);
    if (std::regex_search(tail, cm, capture_re,
                          std::regex_constants::match_continuous)) {
      call.captured = cm[1].str();
    }
    if (LiteralMaterialSize(arg)) {
      encrypts_.push_back(std::move(call));
      return;
    }
    // Look through `Nonce::from_slice(&v)`, `GenericArray::from_slice(&v)`
    // and similar constructor wrappers to the variable they borrow.
    const std::string_view stripped = StripBorrow(arg);
    const std::size_t ident_len = call.captured.size();
    std::string_view after = stripped.substr(std::min(ident_len, stripped.size()));
    after = Trim(after);
    if (StartsWith(after, "::") || StartsWith(after, "<")) {
      const std::size_t rel = arg.find('(');
      if (rel != std::string_view::npos) {
        const std::size_t inner_open = call.first_arg.begin + rel;
        const Span inner = FirstArgument(s, inner_open);
        const std::string_view inner_text = Text(inner);
        if (!LiteralMaterialSize(inner_text)) {
          call.nonce_var = RootIdentifier(inner_text);
        }
      }
    } else if (StartsWith(after, "(")) {
      // A function call produces a fresh value per call.
    } else {
      call.nonce_var = call.captured;
    }
    encrypts_.push_back(std::move(call));
  });
}

void UnitIndex::IndexConstructors() {
  struct Pattern {
    std::regex re;
    MaterialKind kind;  // kAmbiguous here means "decide from group 1"
  };
  static const std::vector<Pattern> patterns = [] {
    std::vector<Pattern> p;
    p.push_back({std::regex(
                     R"(\b(Key|Nonce|XNonce|GenericArray)\s*(?:::\s*<[^;(){}]*?>\s*)?::\s*(from_slice|clone_from_slice|from)\s*\()"),
                 MaterialKind::kAmbiguous});
    p.push_back({std::regex(
                     R"(\b(\w+)\s*(?:::\s*<[^;(){}]*?>\s*)?::\s*(new_from_slice)\s*\()"),
                 MaterialKind::kKey});
    p.push_back({std::regex(
                     R"(\b(Aes128Gcm|Aes256Gcm|Aes128GcmSiv|Aes256GcmSiv|AesGcm|ChaCha20Poly1305|XChaCha20Poly1305|ChaCha8Poly1305|ChaCha12Poly1305)\s*(?:::\s*<[^;(){}]*?>\s*)?::\s*(new)\s*\()"),
                 MaterialKind::kKey});
    return p;
  }();
  const std::string& s = scan();
  for (const Pattern& pattern : patterns) {
    ForEachMatch(s, pattern.re, [&](const std::smatch& m) {
      ConstructorCall call;
      call.offset = static_cast<std::size_t>(m.position(0));
      if (!InCode(call.offset)) return;
      call.open_paren =
          static_cast<std::size_t>(m.position(0) + m.length(0)) - 1;
      call.arg = FirstArgument(structure(), call.open_paren);
      call.callee = m[1].str() + "::" + m[2].str();
      call.kind = pattern.kind;
      if (pattern.kind == MaterialKind::kAmbiguous) {
        const std::string type = m[1].str();
        if (type == "Key") {
          call.kind = MaterialKind::kKey;
        } else if (type == "Nonce" || type == "XNonce") {
          call.kind = MaterialKind::kNonce;
        }
      }
      ctors_.push_back(std::move(call));
    });
  }
  std::sort(ctors_.begin(), ctors_.end(),
            [](const ConstructorCall& a, const ConstructorCall& b) {
              return a.offset < b.offset;
            });
}

const Declaration* UnitIndex::NearestDeclaration(std::string_view name,
                                                 std::size_t before) const {
  const Declaration* best = nullptr;
  for (const Declaration& d : decls_) {
    if (d.offset >= before) break;
    if (d.name == name) best = &d;
  }
  return best;
}

std::optional<ProvenanceState> UnitIndex::Provenance(
    std::string_view name, std::size_t use_offset) const {
  const Declaration* decl = NearestDeclaration(name, use_offset);
  if (decl == nullptr) return std::nullopt;
  ProvenanceState state;
  state.variable = std::string(name);
  state.declared_at = unit_->OffsetToLocation(decl->offset);
  state.classification = aeadlint::Provenance::kNonLiteral;
  if (decl->is_param || decl->init.empty() ||
      !LiteralMaterialSize(Text(decl->init))) {
    return state;
  }

  // Writes to the variable between its initializer and the use.
  const std::string n(name);
  const std::regex writes(
      R"(&\s*mut\s+)" + n + R"(\b|\b)" + n +
      R"(\s*(?:\[[^\]]*\])?\s*(?:[+\-*^|]?=[^=>]|\.\s*(?:copy_from_slice|clone_from_slice|fill|fill_with|swap_with_slice)\s*\())");
  const std::size_t begin = decl->init.end;
  const std::size_t end = std::min(use_offset, structure().size());
  bool overwritten = false;
  if (begin < end) {
    const std::string window = structure().substr(begin, end - begin);
    for (auto it = std::sregex_iterator(window.begin(), window.end(), writes);
         it != std::sregex_iterator(); ++it) {
      const Span stmt =
          StatementAround(structure(), begin + static_cast<std::size_t>(it->position(0)));
      const std::string text(Text(stmt));
      if (std::regex_search(text, EntropyPattern())) {
        state.classification = aeadlint::Provenance::kRandomizedBeforeUse;
        return state;
      }
      overwritten = true;
    }
  }
  state.classification = overwritten ? aeadlint::Provenance::kNonLiteral
                                     : aeadlint::Provenance::kLiteralOnly;
  return state;
}

}  // namespace aeadlint::internal
