#ifndef AEADLINT_TESTS_TEST_UTIL_H_
#define AEADLINT_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aeadlint/rules.h"
#include "aeadlint/source.h"

namespace aeadlint::testing {

inline std::filesystem::path SourceDir() { return AEADLINT_SOURCE_DIR; }

inline std::string ReadText(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SourceUnit Unit(std::string text, std::string path = "test.rs") {
  return SourceUnit::FromText(std::move(path), std::move(text));
}

inline int CountRule(const std::vector<Finding>& findings, RuleId rule) {
  return static_cast<int>(std::count_if(
      findings.begin(), findings.end(),
      [&](const Finding& f) { return f.rule_id == rule; }));
}

inline int CountRule(std::string text, RuleId rule) {
  return CountRule(Analyze(Unit(std::move(text))), rule);
}

// Unique scratch directory under the system temp dir.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "aeadlint-test-XXXXXX").string();
    path_ = mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void WriteText(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace aeadlint::testing

#endif  // AEADLINT_TESTS_TEST_UTIL_H_
