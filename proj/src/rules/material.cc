// Rules about where key and nonce material comes from: hardcoded_secret,
// static_nonce and key_from_external_input.

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <string>

#include "rules/unit_index.h"

namespace aeadlint::internal {
namespace {

bool IsNonceSized(std::size_t n) { return n == 12 || n == 24; }

struct Material {
  std::optional<std::size_t> literal_size;  // set when the value is literal
  std::string variable;                     // set when it came from a `let`
  SourceLocation declared_at;
};

// Resolves the argument of a constructor to literal material, either inline
// or through a LiteralOnly variable. nullopt when the material is not
// literal at `use_offset`.
std::optional<Material> LiteralMaterial(const UnitIndex& index, Span arg,
                                        std::size_t use_offset) {
  const std::string_view text = index.Text(arg);
  if (auto size = LiteralMaterialSize(text)) {
    return Material{size, {}, {}};
  }
  const std::string root = RootIdentifier(text);
  if (root.empty()) return std::nullopt;
  const auto prov = index.Provenance(root, use_offset);
  if (!prov || prov->classification != Provenance::kLiteralOnly) {
    return std::nullopt;
  }
  const Declaration* decl = index.NearestDeclaration(root, use_offset);
  return Material{LiteralMaterialSize(index.Text(decl->init)), root,
                  prov->declared_at};
}

bool InsideAnyEncryptCall(const UnitIndex& index, std::size_t offset) {
  for (const EncryptCall& call : index.encrypt_calls()) {
    if (offset > call.open_paren && offset < call.close_paren) return true;
  }
  return false;
}

// When the constructor is the initializer of `let v = …`, returns v.
const Declaration* BoundDeclaration(const UnitIndex& index,
                                    const ConstructorCall& ctor) {
  for (const Declaration& d : index.declarations()) {
    if (d.is_param || d.init.empty()) continue;
    if (ctor.offset < d.init.begin || ctor.offset >= d.init.end) continue;
    // The constructor must be the whole initializer, not a nested argument.
    const std::string_view init = StripBorrow(index.Text(d.init));
    const std::string_view from_ctor =
        index.Text({ctor.offset, d.init.end});
    if (Trim(init) == Trim(from_ctor)) return &d;
  }
  return nullptr;
}

bool ReachesEncrypt(const UnitIndex& index, const ConstructorCall& ctor) {
  if (InsideAnyEncryptCall(index, ctor.offset)) return true;
  const Declaration* bound = BoundDeclaration(index, ctor);
  if (bound == nullptr) return false;
  for (const EncryptCall& call : index.encrypt_calls()) {
    if (call.dot <= ctor.offset || call.nonce_var != bound->name) continue;
    if (index.NearestDeclaration(bound->name, call.dot) == bound) return true;
  }
  return false;
}

std::string Describe(const Material& m) {
  std::string out;
  if (m.literal_size) out = std::to_string(*m.literal_size) + "-byte literal";
  else out = "literal";
  if (!m.variable.empty()) {
    out = "`" + m.variable + "` (" + out + " declared at line " +
          std::to_string(m.declared_at.line) +
          ", never overwritten by a CSPRNG)";
  }
  return out;
}

}  // namespace

std::vector<Finding> DetectHardcodedSecret(const UnitIndex& index) {
  std::vector<Finding> out;
  for (const ConstructorCall& ctor : index.constructors()) {
    if (ctor.kind == MaterialKind::kNonce) continue;
    const auto material = LiteralMaterial(index, ctor.arg, ctor.offset);
    if (!material) continue;
    if (ctor.kind == MaterialKind::kAmbiguous) {
      // 12/24 bytes is nonce material and belongs to static_nonce.
      if (material->literal_size && IsNonceSized(*material->literal_size)) {
        continue;
      }
      if (!material->literal_size && InsideAnyEncryptCall(index, ctor.offset)) {
        continue;
      }
    }
    out.push_back(MakeFinding(
        index.unit(), RuleId::kHardcodedSecret, ctor.offset,
        "hardcoded key material passed to " + ctor.callee + ": " +
            Describe(*material)));
  }
  return out;
}

std::vector<Finding> DetectStaticNonce(const UnitIndex& index) {
  std::vector<Finding> out;
  std::set<std::size_t> reported;
  for (const ConstructorCall& ctor : index.constructors()) {
    if (ctor.kind == MaterialKind::kKey) continue;
    const auto material = LiteralMaterial(index, ctor.arg, ctor.offset);
    if (!material) continue;
    if (ctor.kind == MaterialKind::kAmbiguous) {
      const bool nonce_sized =
          material->literal_size && IsNonceSized(*material->literal_size);
      if (!nonce_sized && !InsideAnyEncryptCall(index, ctor.offset)) continue;
    }
    if (!ReachesEncrypt(index, ctor)) continue;
    if (reported.insert(ctor.offset).second) {
      out.push_back(MakeFinding(
          index.unit(), RuleId::kStaticNonce, ctor.offset,
          "static nonce: " + ctor.callee + " built from " +
              Describe(*material) + " reaches encrypt()"));
    }
  }

  // Literal nonces handed to encrypt() without a constructor.
  for (const EncryptCall& call : index.encrypt_calls()) {
    const std::string_view arg = index.Text(call.first_arg);
    if (auto size = LiteralMaterialSize(arg)) {
      out.push_back(MakeFinding(index.unit(), RuleId::kStaticNonce, call.dot,
                                "static nonce: " + std::to_string(*size) +
                                    "-byte literal passed to encrypt()"));
      continue;
    }
    if (call.nonce_var.empty() || call.nonce_var != call.captured) continue;
    const auto prov = index.Provenance(call.nonce_var, call.dot);
    if (!prov || prov->classification != Provenance::kLiteralOnly) continue;
    const Declaration* decl = index.NearestDeclaration(call.nonce_var, call.dot);
    const Material m{LiteralMaterialSize(index.Text(decl->init)),
                     call.nonce_var, prov->declared_at};
    out.push_back(MakeFinding(index.unit(), RuleId::kStaticNonce, call.dot,
                              "static nonce: encrypt() uses " + Describe(m)));
  }
  return out;
}

std::vector<Finding> DetectKeyFromExternalInput(const UnitIndex& index) {
  static const std::regex source_re(
      R"(\bstdin\s*\(|\bargs(?:_os)?\s*\(|\benv\s*::\s*var(?:_os)?\s*\()");
  static const std::regex let_re(R"(^\s*let\s+(?:mut\s+)?([A-Za-z_]\w*))");
  static const std::regex mut_borrow_re(R"(&\s*mut\s+([A-Za-z_]\w*))");
  static const std::regex assign_re(R"(^\s*([A-Za-z_]\w*)\s*=[^=])");
  static const std::regex kdf_re(R"(argon2|pbkdf2|scrypt|hkdf|derive_key)",
                                 std::regex::icase);

  // Forward taint pass over statements: variable -> offset of the external
  // read it derives from.
  struct Taint {
    std::size_t at;      // where the variable became tainted
    std::size_t origin;  // the external read
  };
  std::map<std::string, Taint> tainted;
  const std::string& st = index.structure();
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= st.size(); ++i) {
    if (i < st.size() && st[i] != ';' && st[i] != '{' && st[i] != '}') {
      continue;
    }
    const Span span{begin, i};
    begin = i + 1;
    if (span.empty()) continue;
    const std::string text(index.Text(span));
    std::optional<std::size_t> origin;
    std::smatch m;
    if (std::regex_search(text, m, source_re)) {
      origin = span.begin + static_cast<std::size_t>(m.position(0));
    }
    for (const auto& [name, taint] : tainted) {
      if (ContainsWord(text, name)) {
        origin = std::min(origin.value_or(taint.origin), taint.origin);
      }
    }
    if (!origin) continue;
    auto taint = [&](const std::string& name) {
      if (!tainted.count(name)) tainted[name] = {span.begin, *origin};
    };
    if (std::regex_search(text, m, let_re)) taint(m[1].str());
    if (std::regex_search(text, m, assign_re)) taint(m[1].str());
    ForEachMatch(text, mut_borrow_re,
                 [&](const std::smatch& bm) { taint(bm[1].str()); });
  }

  std::vector<Finding> out;
  for (const ConstructorCall& ctor : index.constructors()) {
    if (ctor.kind == MaterialKind::kNonce) continue;
    if (ctor.callee.find("from_slice") == std::string::npos) continue;
    const std::string arg(index.Text(ctor.arg));
    std::optional<std::size_t> origin;
    std::string via;
    std::smatch m;
    if (std::regex_search(arg, m, source_re)) {
      origin = ctor.arg.begin + static_cast<std::size_t>(m.position(0));
      via = "external input";
    }
    for (const auto& [name, taint] : tainted) {
      if (taint.at < ctor.offset && ContainsWord(arg, name) &&
          (!origin || taint.origin < *origin)) {
        origin = taint.origin;
        via = "`" + name + "`";
      }
    }
    if (!origin) continue;
    const std::string between =
        index.scan().substr(*origin, ctor.offset - std::min(*origin, ctor.offset));
    if (std::regex_search(between, kdf_re)) continue;
    const SourceLocation read_at = index.unit().OffsetToLocation(*origin);
    out.push_back(MakeFinding(
        index.unit(), RuleId::kKeyFromExternalInput, ctor.offset,
        ctor.callee + " uses " + via + " read from stdin/args/env at line " +
            std::to_string(read_at.line) + " without a key derivation function"));
  }
  return out;
}

}  // namespace aeadlint::internal
