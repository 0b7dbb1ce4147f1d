// Internal to the rule engine: lexical helpers and a per-unit index of the
// constructs the detectors care about (declarations, encrypt calls, key and
// nonce constructors, loops). Built once per SourceUnit by Scan().
#ifndef AEADLINT_SRC_RULES_UNIT_INDEX_H_
#define AEADLINT_SRC_RULES_UNIT_INDEX_H_

#include <cstddef>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "aeadlint/rules.h"
#include "aeadlint/source.h"

namespace aeadlint::internal {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  bool empty() const { return begin >= end; }
  std::size_t size() const { return end > begin ? end - begin : 0; }
};

bool IsIdentChar(char c);

// Calls `fn(const std::smatch&)` for every match of `re` in `text`.
template <typename Fn>
void ForEachMatch(const std::string& text, const std::regex& re, Fn&& fn) {
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
       it != std::sregex_iterator(); ++it) {
    fn(*it);
  }
}

// Offset of the bracket closing the one at `open` (one of `([{<`), counting
// only that bracket kind. `text` must be a structure text.
std::optional<std::size_t> MatchClose(std::string_view text, std::size_t open);
// Offset of the bracket opening the one at `close`.
std::optional<std::size_t> MatchOpen(std::string_view text, std::size_t close);

// First comma-separated argument of the call whose `(` is at `open_paren`.
Span FirstArgument(std::string_view structure, std::size_t open_paren);

// Statement containing `pos`: from just after the preceding `;`, `{` or `}`
// up to the next `;`, `{` or `}` outside parentheses and brackets.
Span StatementAround(std::string_view structure, std::size_t pos);

std::string_view Trim(std::string_view s);

// Strips leading `&`, `&mut`, `*` and whitespace.
std::string_view StripBorrow(std::string_view expr);

// Byte length of key/nonce material written as a literal: `[0u8; 12]`,
// `[1, 2, 3]`, `b"..."`, optionally borrowed and followed by `.into()`,
// `.as_ref()`, `.as_slice()` or `[..]`. nullopt if `expr` is anything else.
std::optional<std::size_t> LiteralMaterialSize(std::string_view expr);

// Leading identifier of an expression after StripBorrow, e.g. `nonce` for
// `&mut nonce.as_ref()`. Empty if the expression does not start with one.
std::string RootIdentifier(std::string_view expr);

bool ContainsWord(std::string_view text, std::string_view word);

struct Declaration {
  std::string name;
  std::size_t offset = 0;  // of the `let` keyword or the parameter name
  Span init;               // initializer expression; empty for parameters
  bool is_param = false;
};

struct EncryptCall {
  std::size_t dot = 0;          // offset of `.encrypt…`
  std::size_t open_paren = 0;
  std::size_t close_paren = 0;  // == size() when unbalanced
  Span first_arg;
  // Identifier captured by the lifecycle pattern before resolution.
  std::string captured;
  // Nonce variable after looking through `Nonce::from_slice(&v)` style
  // wrappers; empty when the argument is a literal.
  std::string nonce_var;
};

enum class MaterialKind { kKey, kNonce, kAmbiguous };

struct ConstructorCall {
  std::size_t offset = 0;      // start of the type or cipher name
  std::size_t open_paren = 0;
  Span arg;
  MaterialKind kind = MaterialKind::kAmbiguous;
  std::string callee;          // e.g. "Key::from_slice"
};

class UnitIndex {
 public:
  explicit UnitIndex(const SourceUnit& unit);

  const SourceUnit& unit() const { return *unit_; }
  const std::string& scan() const { return unit_->scan_text(); }
  const std::string& structure() const { return unit_->structure_text(); }

  // True unless `pos` falls inside a string or char literal or a comment.
  bool InCode(std::size_t pos) const;

  const std::vector<Declaration>& declarations() const { return decls_; }
  const std::vector<EncryptCall>& encrypt_calls() const { return encrypts_; }
  const std::vector<ConstructorCall>& constructors() const { return ctors_; }
  const LoopExtraction& loops() const { return loops_; }

  // Nearest declaration of `name` strictly before `before`.
  const Declaration* NearestDeclaration(std::string_view name,
                                        std::size_t before) const;

  std::optional<ProvenanceState> Provenance(std::string_view name,
                                            std::size_t use_offset) const;

  std::string_view Text(Span s) const {
    return std::string_view(scan()).substr(s.begin, s.size());
  }

 private:
  void IndexDeclarations();
  void IndexEncryptCalls();
  void IndexConstructors();

  const SourceUnit* unit_;
  std::vector<Declaration> decls_;
  std::vector<EncryptCall> encrypts_;
  std::vector<ConstructorCall> ctors_;
  LoopExtraction loops_;
};

// Lexicons shared by several rules.
const std::regex& EntropyPattern();
const std::regex& EncryptCallPattern();

std::vector<Finding> DetectHardcodedSecret(const UnitIndex& index);
std::vector<Finding> DetectNonceReuseInLoop(const UnitIndex& index);
std::vector<Finding> DetectNonceReuseMultiCall(const UnitIndex& index);
std::vector<Finding> DetectStaticNonce(const UnitIndex& index);
std::vector<Finding> DetectWeakRandomness(const UnitIndex& index);
std::vector<Finding> DetectUnsafeErrorHandling(const UnitIndex& index);
std::vector<Finding> DetectKeyFromExternalInput(const UnitIndex& index);
std::vector<Finding> DetectDeprecatedApi(const UnitIndex& index);
std::vector<Finding> DetectMissingSecureGeneration(const UnitIndex& index);

}  // namespace aeadlint::internal

#endif  // AEADLINT_SRC_RULES_UNIT_INDEX_H_
