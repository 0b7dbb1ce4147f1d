#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aeadlint/errors.h"
#include "aeadlint/experiment.h"
#include "json.hpp"

namespace aeadlint {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path ResolvePath(const json& doc, const char* field, const fs::path& base) {
  if (!doc.contains(field) || doc[field].is_null()) return {};
  if (!doc[field].is_string()) {
    throw ConfigError(std::string("`") + field + "` must be a string");
  }
  const fs::path p(doc[field].get<std::string>());
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

ModelEndpoint ParseModel(const json& j) {
  ModelEndpoint m;
  if (j.is_string()) {
    m.id = j.get<std::string>();
    return m;
  }
  if (!j.is_object()) throw ConfigError("model entries must be strings or objects");
  for (const char* secret : {"api_key", "key", "token"}) {
    if (j.contains(secret)) {
      throw ConfigError(std::string("model entries must not contain `") + secret +
                        "`; name an environment variable in `api_key_env`");
    }
  }
  m.id = j.value("id", "");
  if (m.id.empty()) throw ConfigError("model entry without `id`");
  m.base_url = j.value("base_url", "");
  m.path = j.value("path", m.path);
  m.model_name = j.value("model_name", m.id);
  m.api_key_env = j.value("api_key_env", "");
  return m;
}

}  // namespace

std::string_view RunModeName(RunMode m) {
  switch (m) {
    case RunMode::kLive: return "live";
    case RunMode::kRecord: return "record";
    case RunMode::kReplay: return "replay";
  }
  return "replay";
}

std::optional<RunMode> ParseRunMode(std::string_view name) {
  for (RunMode m : {RunMode::kLive, RunMode::kRecord, RunMode::kReplay}) {
    if (RunModeName(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view CompilerModeName(CompilerMode m) {
  switch (m) {
    case CompilerMode::kCargo: return "cargo";
    case CompilerMode::kRecord: return "record";
    case CompilerMode::kReplay: return "replay";
  }
  return "replay";
}

std::optional<CompilerMode> ParseCompilerMode(std::string_view name) {
  for (CompilerMode m :
       {CompilerMode::kCargo, CompilerMode::kRecord, CompilerMode::kReplay}) {
    if (CompilerModeName(m) == name) return m;
  }
  return std::nullopt;
}

ExperimentConfig ParseExperimentConfig(std::string_view text,
                                       const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig c;
  try {
    for (const json& m : doc.value("models", json::array())) {
      c.models.push_back(ParseModel(m));
    }
    const json algos = doc.value(
        "algorithms", json::array({"AES_256_GCM", "CHACHA20_POLY1305"}));
    for (const json& a : algos) {
      const auto parsed = ParseAlgorithm(a.get<std::string>());
      if (!parsed) throw ConfigError("unknown algorithm " + a.dump());
      c.algorithms.push_back(*parsed);
    }
    const json strategies = doc.value(
        "strategies", json::array({"zero_shot", "constraint_based",
                                   "chain_of_thought", "security_focused"}));
    for (const json& s : strategies) {
      const auto parsed = ParseStrategy(s.get<std::string>());
      if (!parsed) throw ConfigError("unknown strategy " + s.dump());
      c.strategies.push_back(*parsed);
    }
    c.replicates = doc.value("replicates", c.replicates);
    const std::string mode = doc.value("mode", "replay");
    const auto run_mode = ParseRunMode(mode);
    if (!run_mode) throw ConfigError("unknown mode `" + mode + "`");
    c.mode = *run_mode;
    const std::string compiler = doc.value(
        "compiler", c.mode == RunMode::kReplay ? "replay" : "cargo");
    const auto compiler_mode = ParseCompilerMode(compiler);
    if (!compiler_mode) throw ConfigError("unknown compiler `" + compiler + "`");
    c.compiler = *compiler_mode;
    c.temperature = doc.value("temperature", c.temperature);
    c.timeout_s = doc.value("timeout_s", c.timeout_s);
    c.workers = doc.value("workers", c.workers);
    c.cargo = doc.value("cargo", c.cargo);
    if (doc.contains("retry")) {
      c.retry.max_attempts = doc["retry"].value("max_attempts", c.retry.max_attempts);
      c.retry.initial_backoff = std::chrono::milliseconds(
          doc["retry"].value("initial_backoff_ms",
                             static_cast<int>(c.retry.initial_backoff.count())));
    }
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("config has a field of the wrong type: ") +
                      e.what());
  }
  c.fixture_dir = ResolvePath(doc, "fixture_dir", base_dir);
  c.workspace_dir = ResolvePath(doc, "workspace_dir", base_dir);
  c.target_dir = ResolvePath(doc, "target_dir", base_dir);
  c.results_path = ResolvePath(doc, "results_path", base_dir);
  return c;
}

ExperimentConfig LoadExperimentConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseExperimentConfig(ss.str(), fs::absolute(path).parent_path());
}

void ValidateConfig(const ExperimentConfig& c) {
  if (c.temperature != 0.0) {
    throw ConfigError("temperature must be 0.0, got " +
                      std::to_string(c.temperature));
  }
  if (c.models.empty()) throw ConfigError("no models configured");
  if (c.algorithms.empty()) throw ConfigError("no algorithms configured");
  if (c.strategies.empty()) throw ConfigError("no strategies configured");
  if (c.replicates < 1 || c.replicates > 10) {
    throw ConfigError("replicates must be in 1..10, got " +
                      std::to_string(c.replicates));
  }
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (c.timeout_s < 1) throw ConfigError("timeout_s must be at least 1");
  const bool needs_fixtures = c.mode != RunMode::kLive ||
                              c.compiler != CompilerMode::kCargo;
  if (needs_fixtures && c.fixture_dir.empty()) {
    throw ConfigError("fixture_dir is required in " +
                      std::string(RunModeName(c.mode)) + " mode");
  }
  if (c.mode != RunMode::kReplay) {
    for (const ModelEndpoint& m : c.models) {
      if (m.base_url.empty()) {
        throw ConfigError("model " + m.id + " has no base_url");
      }
      if (m.api_key_env.empty()) {
        throw ConfigError("model " + m.id + " has no api_key_env");
      }
      const char* key = std::getenv(m.api_key_env.c_str());
      if (key == nullptr || *key == '\0') {
        throw ConfigError("model " + m.id + ": credentials missing, " +
                          m.api_key_env + " is not set");
      }
    }
  }
  if (c.compiler != CompilerMode::kReplay && c.workspace_dir.empty()) {
    throw ConfigError("workspace_dir is required when compiling with cargo");
  }
}

}  // namespace aeadlint
