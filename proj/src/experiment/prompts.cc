#include <algorithm>
#include <cctype>
#include <string>

#include "aeadlint/experiment.h"

namespace aeadlint {
namespace {

struct AlgorithmTerms {
  std::string_view algo;      // AES-256-GCM
  std::string_view crate;     // aes-gcm
  std::string_view mode;      // AES-GCM
  std::string_view mode_req;  // GCM mode
  std::string_view cipher;    // Aes256Gcm
};

AlgorithmTerms Terms(Algorithm a) {
  if (a == Algorithm::kChaCha20Poly1305) {
    return {"ChaCha20-Poly1305", "chacha20poly1305", "ChaCha20-Poly1305",
            "ChaCha20-Poly1305", "ChaCha20Poly1305"};
  }
  return {"AES-256-GCM", "aes-gcm", "AES-GCM", "GCM mode", "Aes256Gcm"};
}

// Placeholders: {ALGO} {CRATE} {MODE} {MODE_REQ} {CIPHER}.
std::string_view Template(Strategy s) {
  switch (s) {
    case Strategy::kZeroShot:
      return "Write a complete Rust program that implements {ALGO} encryption "
             "and decryption. Use the {CRATE} crate (version 0.10.x).";
    case Strategy::kConstraintBased:
      return "Write a complete Rust program implementing {ALGO} encryption "
             "and decryption. REQUIREMENTS: Use the {CRATE} crate (version "
             "0.10.x). Must be cryptographically secure. Include proper error "
             "handling. Provide a working main() function. Code must compile "
             "without errors.";
    case Strategy::kChainOfThought:
      return "Implement {ALGO} encryption and decryption in Rust. First, "
             "answer these questions briefly: (1) What makes {MODE} different "
             "from other encryption modes? (2) What is the most critical "
             "security requirement for {MODE_REQ}? (3) How should keys and "
             "nonces be generated securely? Then provide ONLY the complete "
             "Rust code using {CRATE} crate (version 0.10.x). Wrap your code "
             "in ```rust``` markers.";
    case Strategy::kSecurityFocused:
      return "Write a Rust program for {ALGO} encryption and decryption using "
             "{CRATE} v0.10.x. CRITICAL SECURITY REQUIREMENTS (common mistakes "
             "to avoid): DON'T use hardcoded keys like [0u8; 32] \u2014 DO use "
             "{CIPHER}::generate_key(&mut OsRng). DON'T reuse nonces across "
             "encryptions \u2014 DO generate a fresh nonce for EACH encryption "
             "with generate_nonce(&mut OsRng). DON'T use .unwrap() on crypto "
             "operations \u2014 DO use proper error handling. Provide ONLY the "
             "secure implementation in ```rust``` markers.";
  }
  return "";
}

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kZeroShot: return "zero_shot";
    case Strategy::kConstraintBased: return "constraint_based";
    case Strategy::kChainOfThought: return "chain_of_thought";
    case Strategy::kSecurityFocused: return "security_focused";
  }
  return "zero_shot";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view StrategyLabel(Strategy s) {
  switch (s) {
    case Strategy::kZeroShot: return "Zero-shot";
    case Strategy::kConstraintBased: return "Constraint-based";
    case Strategy::kChainOfThought: return "Chain-of-thought";
    case Strategy::kSecurityFocused: return "Security-focused";
  }
  return "Zero-shot";
}

std::string_view AlgorithmName(Algorithm a) {
  return a == Algorithm::kAes256Gcm ? "AES_256_GCM" : "CHACHA20_POLY1305";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (AlgorithmName(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view AlgorithmLabel(Algorithm a) { return Terms(a).algo; }

PromptSpec RenderPrompt(Strategy strategy, Algorithm algorithm) {
  const AlgorithmTerms t = Terms(algorithm);
  std::string text(Template(strategy));
  ReplaceAll(text, "{ALGO}", t.algo);
  ReplaceAll(text, "{CRATE}", t.crate);
  ReplaceAll(text, "{MODE_REQ}", t.mode_req);
  ReplaceAll(text, "{MODE}", t.mode);
  ReplaceAll(text, "{CIPHER}", t.cipher);
  return {strategy, algorithm, std::move(text)};
}

std::optional<std::string> ExtractCode(std::string_view raw) {
  struct Block {
    bool rust = false;
    bool untagged = false;
    std::string body;
  };
  std::vector<Block> blocks;
  std::optional<Block> open;
  std::size_t fence_len = 0;

  std::size_t pos = 0;
  while (pos <= raw.size()) {
    // A trailing newline does not start another line.
    if (pos == raw.size() && pos > 0 && raw[pos - 1] == '\n') break;
    std::size_t end = raw.find('\n', pos);
    if (end == std::string_view::npos) end = raw.size();
    std::string_view line = raw.substr(pos, end - pos);
    const bool last = end == raw.size();
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t indent = 0;
    while (indent < line.size() && indent < 3 && line[indent] == ' ') ++indent;
    const std::string_view trimmed = line.substr(indent);
    std::size_t ticks = 0;
    while (ticks < trimmed.size() && trimmed[ticks] == '`') ++ticks;

    if (open) {
      const bool closes =
          ticks >= fence_len &&
          trimmed.substr(ticks).find_first_not_of(" \t") == std::string_view::npos;
      if (closes) {
        blocks.push_back(std::move(*open));
        open.reset();
      } else {
        open->body.append(line);
        open->body.push_back('\n');
      }
    } else if (ticks >= 3) {
      std::string_view info = trimmed.substr(ticks);
      if (info.find('`') != std::string_view::npos) {
        if (last) break;
        continue;  // inline code such as ```rust``` in prose
      }
      const std::size_t a = info.find_first_not_of(" \t");
      info = a == std::string_view::npos ? std::string_view{} : info.substr(a);
      const std::size_t b = info.find_first_of(" \t,{");
      const std::string lang = Lower(info.substr(0, b));
      Block block;
      block.rust = lang == "rust" || lang == "rs";
      block.untagged = lang.empty();
      open = std::move(block);
      fence_len = ticks;
    }
    if (last) break;
  }
  // An unterminated final fence (truncated response) still counts.
  if (open) blocks.push_back(std::move(*open));

  const Block* best = nullptr;
  const bool any_rust = std::any_of(blocks.begin(), blocks.end(),
                                    [](const Block& b) { return b.rust; });
  for (const Block& b : blocks) {
    if (any_rust ? !b.rust : !b.untagged) continue;
    if (best == nullptr || b.body.size() > best->body.size()) best = &b;
  }
  if (best == nullptr) return std::nullopt;
  return best->body;
}

}  // namespace aeadlint
