#ifndef AEADLINT_EXPERIMENT_H_
#define AEADLINT_EXPERIMENT_H_

#include <array>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aeadlint/diagnostics.h"
#include "aeadlint/rules.h"

namespace aeadlint {

enum class Strategy {
  kZeroShot,
  kConstraintBased,
  kChainOfThought,
  kSecurityFocused,
};
inline constexpr std::array<Strategy, 4> kAllStrategies = {
    Strategy::kZeroShot, Strategy::kConstraintBased, Strategy::kChainOfThought,
    Strategy::kSecurityFocused};

enum class Algorithm { kAes256Gcm, kChaCha20Poly1305 };
inline constexpr std::array<Algorithm, 2> kAllAlgorithms = {
    Algorithm::kAes256Gcm, Algorithm::kChaCha20Poly1305};

// "zero_shot", "constraint_based", "chain_of_thought", "security_focused".
std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);
// "Zero-shot", "Constraint-based", ...
std::string_view StrategyLabel(Strategy s);
// "AES_256_GCM", "CHACHA20_POLY1305".
std::string_view AlgorithmName(Algorithm a);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
// "AES-256-GCM", "ChaCha20-Poly1305".
std::string_view AlgorithmLabel(Algorithm a);

struct PromptSpec {
  Strategy strategy = Strategy::kZeroShot;
  Algorithm algorithm = Algorithm::kAes256Gcm;
  std::string text;
};

PromptSpec RenderPrompt(Strategy strategy, Algorithm algorithm);

// Longest fenced block tagged `rust` (or `rs`); when no block is tagged,
// the longest untagged block. nullopt when the response has no such fence.
std::optional<std::string> ExtractCode(std::string_view raw_response);

struct DependencyPin {
  std::string crate;    // name in Cargo.toml
  std::string version;  // requirement string
  std::string path;     // identifier used in Rust paths, e.g. "aes_gcm"
};
const std::vector<DependencyPin>& DependencyLexicon();

// Adds a `crate = "version"` line to the [dependencies] table for each
// lexicon crate referenced by `code` and not already present. Creates the
// table when missing. Throws ManifestParseError on a malformed manifest.
std::string InjectDependencies(std::string_view code, std::string_view manifest);

// Cell key plus replicate number.
struct SampleKey {
  std::string model;
  Algorithm algorithm = Algorithm::kAes256Gcm;
  Strategy strategy = Strategy::kZeroShot;
  int replicate = 1;

  // "<model>/<ALGORITHM>/<strategy>/rNN"
  std::string Id() const;
  // Relative fixture path without extension: "<model>/<ALGORITHM>/<strategy>/rNN".
  std::filesystem::path FixtureStem() const;

  friend auto operator<=>(const SampleKey&, const SampleKey&) = default;
};

struct GenerationRecord {
  SampleKey key;
  PromptSpec prompt;
  std::string raw_response;
  std::optional<std::string> extracted_code;
  std::string timestamp;  // ISO-8601 UTC; empty for replayed responses
};

struct GenerationRequest {
  std::string model_id;
  std::string prompt;
  double temperature = 0.0;
};

// One request/response interface for every model backend.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string Complete(const SampleKey& key,
                               const GenerationRequest& request) = 0;
};

// Serves `<dir>/<stem>.md`. Throws MissingFixtureError naming the cell.
class ReplayProvider : public Provider {
 public:
  explicit ReplayProvider(std::filesystem::path dir);
  std::string Complete(const SampleKey& key,
                       const GenerationRequest& request) override;

 private:
  std::filesystem::path dir_;
};

// Forwards to `inner` and writes each response to `<dir>/<stem>.md`.
class RecordingProvider : public Provider {
 public:
  RecordingProvider(std::unique_ptr<Provider> inner, std::filesystem::path dir);
  std::string Complete(const SampleKey& key,
                       const GenerationRequest& request) override;

 private:
  std::unique_ptr<Provider> inner_;
  std::filesystem::path dir_;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
};

struct ModelEndpoint {
  std::string id;          // model id used in cell keys, e.g. "gpt-4o"
  std::string base_url;    // e.g. "https://api.openai.com"
  std::string path = "/v1/chat/completions";
  std::string model_name;  // value of the request's "model" field
  std::string api_key_env; // environment variable holding the API key
};

// Chat-completions client for OpenAI-compatible endpoints.
class ChatCompletionsProvider : public Provider {
 public:
  ChatCompletionsProvider(ModelEndpoint endpoint, RetryPolicy retry,
                          std::chrono::seconds timeout);
  std::string Complete(const SampleKey& key,
                       const GenerationRequest& request) override;

 private:
  ModelEndpoint endpoint_;
  RetryPolicy retry_;
  std::chrono::seconds timeout_;
};

// Dispatches to one provider per model id.
class ProviderSet : public Provider {
 public:
  void Add(const std::string& model_id, std::unique_ptr<Provider> provider);
  std::string Complete(const SampleKey& key,
                       const GenerationRequest& request) override;

 private:
  std::map<std::string, std::unique_ptr<Provider>> providers_;
};

GenerationRecord Generate(Provider& provider, const SampleKey& key,
                          double temperature = 0.0);

class Compiler {
 public:
  virtual ~Compiler() = default;
  virtual CompilationOutcome Compile(const SampleKey& key,
                                     const std::string& code) = 0;
};

struct CargoOptions {
  std::string cargo = "cargo";
  std::vector<std::string> args = {"clippy", "--quiet", "--message-format=json"};
  std::filesystem::path workspace_root;
  // Shared CARGO_TARGET_DIR so dependencies are built once.
  std::filesystem::path target_dir;
  std::chrono::seconds timeout{120};
  bool offline = false;
  // Called with the raw JSON stream of every run (record mode).
  std::function<void(const SampleKey&, const std::string&)> on_stream;
};

// Writes code and an injected Cargo.toml into a per-sample workspace and
// runs cargo. Throws ToolchainMissingError when cargo cannot be executed
// and SubprocessTimeoutError when the run exceeds the timeout.
class CargoCompiler : public Compiler {
 public:
  explicit CargoCompiler(CargoOptions options);
  CompilationOutcome Compile(const SampleKey& key,
                             const std::string& code) override;

 private:
  CargoOptions options_;
};

// Replays `<dir>/<stem>.clippy.jsonl`.
class ReplayCompiler : public Compiler {
 public:
  explicit ReplayCompiler(std::filesystem::path dir);
  CompilationOutcome Compile(const SampleKey& key,
                             const std::string& code) override;

 private:
  std::filesystem::path dir_;
};

// Cargo run whose stream is also written to `<dir>/<stem>.clippy.jsonl`.
std::unique_ptr<Compiler> MakeRecordingCompiler(CargoOptions options,
                                                std::filesystem::path dir);

CompilationOutcome CompileSample(Compiler& compiler, const SampleKey& key,
                                 const std::string& code);

// Cargo.toml used for every sample before dependency injection.
std::string BaseManifest(std::string_view package_name);

struct SubprocessResult {
  int exit_code = -1;
  std::string stdout_text;
  std::string stderr_text;
};

// Runs argv with extra environment variables in `cwd`. Throws
// ToolchainMissingError when argv[0] cannot be executed and
// SubprocessTimeoutError (after killing the child) on timeout.
SubprocessResult RunSubprocess(const std::vector<std::string>& argv,
                               const std::filesystem::path& cwd,
                               const std::map<std::string, std::string>& env,
                               std::chrono::seconds timeout);

enum class RunMode { kLive, kRecord, kReplay };
std::string_view RunModeName(RunMode m);
std::optional<RunMode> ParseRunMode(std::string_view name);

enum class CompilerMode { kCargo, kRecord, kReplay };
std::string_view CompilerModeName(CompilerMode m);
std::optional<CompilerMode> ParseCompilerMode(std::string_view name);

struct ExperimentConfig {
  std::vector<ModelEndpoint> models;
  std::vector<Algorithm> algorithms;
  std::vector<Strategy> strategies;
  int replicates = 10;
  RunMode mode = RunMode::kReplay;
  CompilerMode compiler = CompilerMode::kReplay;
  double temperature = 0.0;
  int timeout_s = 120;
  int workers = 4;
  std::filesystem::path fixture_dir;
  std::filesystem::path workspace_dir;
  std::filesystem::path target_dir;
  std::filesystem::path results_path;
  std::string cargo = "cargo";
  RetryPolicy retry;
};

// Reads a JSON config. Relative paths resolve against the file's
// directory. Throws ConfigError.
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);
ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       const std::filesystem::path& base_dir);

// Rejects temperature != 0, empty factor lists, replicates outside 1..10,
// workers < 1, and, in live or record mode, models whose API key
// variable is unset. Throws ConfigError.
void ValidateConfig(const ExperimentConfig& config);

struct SampleResult {
  SampleKey key;
  CompilationOutcome compilation;
  std::vector<Finding> findings;  // only for compiled samples
  std::string error;              // per-sample operational error
};

struct ExperimentMatrix {
  // Sorted by key.
  std::vector<SampleResult> samples;

  // Samples in one cell, in replicate order.
  std::vector<const SampleResult*> Cell(const std::string& model,
                                        Algorithm algorithm,
                                        Strategy strategy) const;
};

struct ExperimentHooks {
  // Overrides the providers and compiler built from the config (tests).
  std::function<std::unique_ptr<Provider>(const ExperimentConfig&)> provider;
  std::function<std::unique_ptr<Compiler>(const ExperimentConfig&)> compiler;
  std::function<void(const SampleResult&)> on_sample;
};

// Runs every (model, algorithm, strategy, replicate) sample on a worker
// pool. Per-sample errors are recorded in SampleResult::error. Writes the
// results store when config.results_path is set.
ExperimentMatrix RunExperiment(const ExperimentConfig& config,
                               const ExperimentHooks& hooks = {});

// Results store: one JSON object per line, sorted by sample id.
std::string SerializeResults(const ExperimentMatrix& matrix);
ExperimentMatrix ParseResults(std::string_view jsonl);
void WriteResultsStore(const ExperimentMatrix& matrix,
                       const std::filesystem::path& path);
ExperimentMatrix ReadResultsStore(const std::filesystem::path& path);

// Ground truth shipped with a fixture set.
struct FixtureSample {
  SampleKey key;
  bool compiled = false;
  ErrorClass dominant_class = ErrorClass::kNoError;
  bool extraction_failure = false;
};
struct FixtureManifest {
  std::vector<FixtureSample> samples;
};
FixtureManifest LoadFixtureManifest(const std::filesystem::path& fixture_dir);

}  // namespace aeadlint

#endif  // AEADLINT_EXPERIMENT_H_
