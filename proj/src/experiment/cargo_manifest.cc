#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "aeadlint/errors.h"
#include "aeadlint/experiment.h"

namespace aeadlint {
namespace {

std::string_view TrimView(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool UsesCrate(std::string_view code, const std::string& path) {
  // `path::` not preceded by `::` (so re-exports like `aead::rand_core` do
  // not count), or `extern crate path`.
  const std::regex re("(^|[^:\\w])" + path + "\\s*::|\\bextern\\s+crate\\s+" +
                      path + "\\b");
  return std::regex_search(code.begin(), code.end(), re);
}

}  // namespace

const std::vector<DependencyPin>& DependencyLexicon() {
  static const std::vector<DependencyPin> kPins = {
      {"aes-gcm", "\"0.10\"", "aes_gcm"},
      {"chacha20poly1305", "\"0.10\"", "chacha20poly1305"},
      {"rand", "\"0.8\"", "rand"},
      {"rand_core", "{ version = \"0.6\", features = [\"getrandom\"] }",
       "rand_core"},
      {"hex", "\"0.4\"", "hex"},
      {"base64", "\"0.21\"", "base64"},
      {"generic-array", "\"0.14\"", "generic_array"},
  };
  return kPins;
}

std::string BaseManifest(std::string_view package_name) {
  std::ostringstream out;
  out << "[package]\n"
      << "name = \"" << package_name << "\"\n"
      << "version = \"0.1.0\"\n"
      << "edition = \"2021\"\n\n"
      << "[dependencies]\n";
  return out.str();
}

std::string InjectDependencies(std::string_view code, std::string_view manifest) {
  std::vector<std::string> lines;
  {
    std::size_t pos = 0;
    while (pos < manifest.size()) {
      std::size_t end = manifest.find('\n', pos);
      if (end == std::string_view::npos) end = manifest.size();
      lines.emplace_back(manifest.substr(pos, end - pos));
      pos = end + 1;
    }
  }

  // Locate the [dependencies] table and the crates already declared.
  static const std::regex key_re(R"(^\s*([A-Za-z0-9_\-]+|"[^"]+")\s*(?:\.|=))");
  static const std::regex dep_table_re(
      R"(^\s*\[\s*dependencies\s*\.\s*([A-Za-z0-9_\-]+)\s*\]\s*(?:#.*)?$)");
  std::set<std::string> present;
  std::optional<std::size_t> table_end;  // insertion point
  bool in_deps = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view t = TrimView(lines[i]);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[') {
      const std::size_t close = t.find(']');
      if (close == std::string_view::npos) {
        throw ManifestParseError("line " + std::to_string(i + 1) +
                                 ": unterminated table header");
      }
      const std::string header(t.substr(0, t.rfind(']') + 1));
      std::smatch m;
      in_deps = header == "[dependencies]";
      if (in_deps) table_end = i + 1;
      if (std::regex_match(header, m, dep_table_re)) present.insert(m[1].str());
      continue;
    }
    const std::string line(t);
    std::smatch m;
    if (!std::regex_search(line, m, key_re)) {
      // Multi-line arrays and inline tables continue a previous key.
      if (t.front() == ']' || t.front() == '}' || t.front() == '"' ||
          t.back() == ',') {
        continue;
      }
      throw ManifestParseError("line " + std::to_string(i + 1) +
                               ": expected `key = value`");
    }
    if (in_deps) {
      std::string name = m[1].str();
      if (name.size() > 1 && name.front() == '"') name = name.substr(1, name.size() - 2);
      present.insert(name);
      table_end = i + 1;
    }
  }

  std::vector<std::string> additions;
  for (const DependencyPin& pin : DependencyLexicon()) {
    if (present.count(pin.crate)) continue;
    if (!UsesCrate(code, pin.path)) continue;
    additions.push_back(pin.crate + " = " + pin.version);
  }
  if (additions.empty()) return std::string(manifest);

  if (!table_end) {
    if (!lines.empty() && !TrimView(lines.back()).empty()) lines.emplace_back();
    lines.emplace_back("[dependencies]");
    table_end = lines.size();
  }
  lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(*table_end),
               additions.begin(), additions.end());

  std::string out;
  for (const std::string& line : lines) out += line + "\n";
  return out;
}

}  // namespace aeadlint
