// Nonce lifecycle rules: nonce_reuse_in_loop, nonce_reuse_multi_call and
// missing_secure_generation.

#include <map>
#include <regex>
#include <string>
#include <utility>

#include "rules/unit_index.h"

namespace aeadlint::internal {

std::vector<Finding> DetectNonceReuseInLoop(const UnitIndex& index) {
  std::vector<Finding> out;
  for (const LoopBody& body : index.loops().bodies) {
    const EncryptCall* first = nullptr;
    for (const EncryptCall& call : index.encrypt_calls()) {
      if (call.dot >= body.body_start.byte_offset && call.dot < body.body_end) {
        first = &call;
        break;
      }
    }
    if (first == nullptr) continue;
    if (std::regex_search(body.body_text, EntropyPattern())) continue;
    out.push_back(MakeFinding(index.unit(), RuleId::kNonceReuseInLoop,
                              first->dot, std::string(kLoopNoEntropyMessage)));
  }
  return out;
}

std::vector<Finding> DetectNonceReuseMultiCall(const UnitIndex& index) {
  // Uses grouped by the declaration they bind to, so that a shadowing `let`
  // or a separate function parameter starts a fresh lifecycle.
  std::map<std::pair<std::string, std::size_t>, std::vector<const EncryptCall*>>
      groups;
  for (const EncryptCall& call : index.encrypt_calls()) {
    if (call.nonce_var.empty()) continue;
    const Declaration* decl = index.NearestDeclaration(call.nonce_var, call.dot);
    const std::size_t binding = decl ? decl->offset : std::string::npos;
    groups[{call.nonce_var, binding}].push_back(&call);
  }

  std::vector<Finding> out;
  for (const auto& [key, uses] : groups) {
    if (uses.size() < 2) continue;
    const std::string& var = key.first;
    const std::regex regen(
        R"((?:OsRng\.fill_bytes|fill_bytes)\s*\(\s*&\s*mut\s+)" + var + "|" +
        var + R"(\s*=.*?(?:OsRng|generate_nonce|generate_key|rand))");
    for (std::size_t i = 0; i + 1 < uses.size(); ++i) {
      const std::size_t from = uses[i]->dot;
      const std::size_t to = uses[i + 1]->dot;
      // Literal contents are blanked, so `"nonce = OsRng"` is not a regeneration.
      const std::string between = index.structure().substr(from, to - from);
      if (std::regex_search(between, regen)) continue;
      const SourceLocation prev = index.unit().OffsetToLocation(from);
      out.push_back(MakeFinding(
          index.unit(), RuleId::kNonceReuseMultiCall, to,
          "nonce `" + var + "` reused: already passed to encrypt() at line " +
              std::to_string(prev.line) + " with no regeneration in between"));
    }
  }
  return out;
}

std::vector<Finding> DetectMissingSecureGeneration(const UnitIndex& index) {
  if (index.encrypt_calls().empty()) return {};
  if (std::regex_search(index.scan(), EntropyPattern())) return {};
  return {MakeFinding(index.unit(), RuleId::kMissingSecureGeneration,
                      index.encrypt_calls().front().dot,
                      "encrypt() is called but no CSPRNG (OsRng, fill_bytes, "
                      "generate_key, generate_nonce) appears in the file")};
}

}  // namespace aeadlint::internal
