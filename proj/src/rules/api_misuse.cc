// Rules over API choice: weak_randomness, unsafe_error_handling and
// deprecated_api.

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <set>
#include <string>

#include "rules/unit_index.h"

namespace aeadlint::internal {
namespace {

bool IsUseStatement(const UnitIndex& index, std::size_t pos) {
  const Span stmt = StatementAround(index.structure(), pos);
  std::string_view text = Trim(index.Text(stmt));
  if (text.starts_with("pub ")) text = Trim(text.substr(4));
  return text.starts_with("use ") || text.starts_with("use\t") ||
         text.starts_with("extern crate");
}

// Identifier names that hold key or nonce material.
bool IsMaterialName(std::string_view ident) {
  std::string lower(ident);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower.find("key") != std::string::npos ||
      lower.find("nonce") != std::string::npos) {
    return true;
  }
  // `iv` only as a whole `_`-separated part, to skip words like "private".
  std::size_t start = 0;
  while (start <= lower.size()) {
    std::size_t end = lower.find('_', start);
    if (end == std::string::npos) end = lower.size();
    const std::string_view part = std::string_view(lower).substr(start, end - start);
    if (part == "iv" || part == "ivs") return true;
    start = end + 1;
  }
  return false;
}

// True when the statement writes key/nonce material: `let key… =`,
// `&mut nonce…`, or a generate_key/generate_nonce call.
bool WritesMaterial(const std::string& stmt) {
  static const std::regex let_re(R"(\blet\s+(?:mut\s+)?([A-Za-z_]\w*))");
  static const std::regex borrow_re(R"(&\s*mut\s+([A-Za-z_]\w*))");
  static const std::regex gen_re(R"(\bgenerate_(?:key|nonce)\b)");
  if (std::regex_search(stmt, gen_re)) return true;
  std::smatch m;
  if (std::regex_search(stmt, m, let_re) && IsMaterialName(m[1].str())) {
    return true;
  }
  bool found = false;
  ForEachMatch(stmt, borrow_re, [&](const std::smatch& bm) {
    found = found || IsMaterialName(bm[1].str());
  });
  return found;
}

bool IsKeyword(std::string_view w) {
  static const std::set<std::string_view> kKeywords = {
      "let", "return", "in",  "match", "if",    "else", "while",
      "for", "loop",   "mut", "move",  "async", "await", "break"};
  return kKeywords.count(w) > 0;
}

// Names of the calls in the method chain that ends just before `dot`,
// e.g. {"expect", "encrypt"} for `cipher\n .encrypt(..)\n .expect(..)`.
std::vector<std::string> ChainCalls(std::string_view s, std::size_t dot) {
  auto is_space = [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
  };
  std::vector<std::string> calls;
  std::size_t i = dot;
  for (;;) {
    std::size_t j = i;
    while (j > 0 && is_space(s[j - 1])) --j;
    if (j == 0) break;
    const char c = s[j - 1];
    if (c == '?' || c == '.') {
      i = j - 1;
    } else if (c == ':' && j >= 2 && s[j - 2] == ':') {
      i = j - 2;
    } else if (c == ')' || c == ']') {
      const auto open = MatchOpen(s, j - 1);
      if (!open) break;
      std::size_t k = *open;
      while (k > 0 && is_space(s[k - 1])) --k;
      if (c == ')' && k > 0 && s[k - 1] == '>') {
        // Turbofish: `collect::<Vec<u8>>()`.
        const auto lt = MatchOpen(s, k - 1);
        if (lt && *lt >= 2 && s[*lt - 1] == ':' && s[*lt - 2] == ':') {
          k = *lt - 2;
        }
      }
      std::size_t start = k;
      while (start > 0 && IsIdentChar(s[start - 1])) --start;
      const std::string_view ident = s.substr(start, k - start);
      if (!ident.empty() && !IsKeyword(ident)) {
        if (c == ')') calls.emplace_back(ident);
        i = start;
      } else {
        i = *open;
        if (!ident.empty()) break;
      }
    } else if (c == '>' && j >= 2 && s[j - 2] != '-' && s[j - 2] != '=') {
      // Generic path segment: `Key::<Aes256Gcm>::from_slice`.
      const auto lt = MatchOpen(s, j - 1);
      if (!lt || *lt < 2 || s[*lt - 1] != ':' || s[*lt - 2] != ':') break;
      i = *lt - 2;
    } else if (IsIdentChar(c)) {
      std::size_t start = j;
      while (start > 0 && IsIdentChar(s[start - 1])) --start;
      if (IsKeyword(s.substr(start, j - start))) break;
      i = start;
    } else {
      break;
    }
  }
  return calls;
}

bool IsCryptoOperation(std::string_view name) {
  static const std::set<std::string_view> kOps = {
      "encrypt",
      "decrypt",
      "encrypt_in_place",
      "decrypt_in_place",
      "encrypt_in_place_detached",
      "decrypt_in_place_detached",
      "new_from_slice",
      "from_slice",
      "clone_from_slice",
      "generate_key",
      "generate_nonce",
      "new_varkey",
  };
  return kOps.count(name) > 0;
}

}  // namespace

std::vector<Finding> DetectWeakRandomness(const UnitIndex& index) {
  struct Entry {
    std::regex re;
    const char* message;
  };
  static const std::array<Entry, 4> kLexicon = {{
      {std::regex(R"(\bSmallRng\b)"),
       "SmallRng is not a cryptographically secure generator"},
      {std::regex(R"(\bStdRng\s*::\s*seed_from_u64\b)"),
       "StdRng::seed_from_u64 yields a predictable stream"},
      {std::regex(R"(\bXorShiftRng\b)"),
       "XorShiftRng is not a cryptographically secure generator"},
      {std::regex(
           R"(\b(?:\w*Rng|Pcg\w*|Xoshiro\w*|Xoroshiro\w*)\s*::\s*(?:seed_from_u64\s*\(\s*(?:0x[0-9a-fA-F_]+|\d[\d_]*)(?:u64)?\s*\)|from_seed\s*\(\s*&?\s*(?:\[[^\]]*\]|\*?b"[^"]*")))"),
       "generator seeded with a constant is predictable"},
  }};
  static const std::regex thread_re(
      R"(\bthread_rng\s*\(\s*\)|\brand\s*::\s*random\b)");
  static const std::regex let_rng_re(R"(^\s*let\s+(?:mut\s+)?([A-Za-z_]\w*))");

  std::vector<Finding> out;
  std::set<std::size_t> reported;
  auto report = [&](std::size_t pos, const std::string& message) {
    if (reported.insert(pos).second) {
      out.push_back(
          MakeFinding(index.unit(), RuleId::kWeakRandomness, pos, message));
    }
  };

  for (const Entry& entry : kLexicon) {
    ForEachMatch(index.scan(), entry.re, [&](const std::smatch& m) {
      const auto pos = static_cast<std::size_t>(m.position(0));
      if (!index.InCode(pos) || IsUseStatement(index, pos)) return;
      report(pos, entry.message);
    });
  }

  // thread_rng / rand::random count only when they feed key or nonce bytes.
  ForEachMatch(index.scan(), thread_re, [&](const std::smatch& m) {
    const auto pos = static_cast<std::size_t>(m.position(0));
    if (!index.InCode(pos) || IsUseStatement(index, pos)) return;
    const Span stmt = StatementAround(index.structure(), pos);
    const std::string text(index.Text(stmt));
    bool feeds_material = WritesMaterial(text);
    std::smatch lm;
    if (!feeds_material && std::regex_search(text, lm, let_rng_re)) {
      // `let mut rng = thread_rng();` then `rng.fill_bytes(&mut key)`.
      const std::string rng = lm[1].str();
      const std::regex use_re("\\b" + rng + "\\b");
      const std::string rest = index.scan().substr(stmt.end);
      ForEachMatch(rest, use_re, [&](const std::smatch& um) {
        if (feeds_material) return;
        const Span use_stmt = StatementAround(
            index.structure(), stmt.end + static_cast<std::size_t>(um.position(0)));
        feeds_material = WritesMaterial(std::string(index.Text(use_stmt)));
      });
    }
    if (feeds_material) {
      report(pos, "thread_rng()/rand::random used to produce key or nonce "
                  "bytes; use OsRng");
    }
  });
  return out;
}

std::vector<Finding> DetectUnsafeErrorHandling(const UnitIndex& index) {
  static const std::regex unwrap_re(R"(\.\s*(unwrap|expect)\s*\()");
  const std::string& s = index.structure();
  std::vector<Finding> out;
  ForEachMatch(s, unwrap_re, [&](const std::smatch& m) {
    const auto dot = static_cast<std::size_t>(m.position(0));
    if (!index.InCode(dot)) return;
    for (const std::string& call : ChainCalls(s, dot)) {
      if (!IsCryptoOperation(call)) continue;
      out.push_back(MakeFinding(
          index.unit(), RuleId::kUnsafeErrorHandling, dot,
          "." + m[1].str() + "() on the result of " + call +
              "() panics on failure; propagate the error instead"));
      break;
    }
  });
  return out;
}

std::vector<Finding> DetectDeprecatedApi(const UnitIndex& index) {
  static const std::regex new_aead_re(R"(\bNewAead\b)");
  static const std::regex varkey_re(R"(\bnew_varkey\s*\()");
  static const std::regex raw_aes_re(
      R"(\buse\s+(?:::)?aes\s*::|\bextern\s+crate\s+aes\b)");
  static const std::regex aead_mode_re(
      R"(\b(?:aes_gcm|aes_gcm_siv|aes_siv|chacha20poly1305|ccm|eax|ocb3|Aead|AeadInPlace)\b)");

  std::vector<Finding> out;
  ForEachMatch(index.scan(), new_aead_re, [&](const std::smatch& m) {
    const auto pos = static_cast<std::size_t>(m.position(0));
    if (!index.InCode(pos)) return;
    out.push_back(MakeFinding(index.unit(), RuleId::kDeprecatedApi, pos,
                              "NewAead was removed in aead 0.5; use KeyInit"));
  });
  ForEachMatch(index.scan(), varkey_re, [&](const std::smatch& m) {
    const auto pos = static_cast<std::size_t>(m.position(0));
    if (!index.InCode(pos)) return;
    out.push_back(MakeFinding(
        index.unit(), RuleId::kDeprecatedApi, pos,
        "new_varkey() was removed; use KeyInit::new_from_slice"));
  });
  if (!std::regex_search(index.structure(), aead_mode_re)) {
    ForEachMatch(index.structure(), raw_aes_re, [&](const std::smatch& m) {
      const auto pos = static_cast<std::size_t>(m.position(0));
      out.push_back(MakeFinding(
          index.unit(), RuleId::kDeprecatedApi, pos,
          "raw AES block cipher imported without an authenticated mode"));
    });
  }
  return out;
}

}  // namespace aeadlint::internal
