#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>

#include "aeadlint/errors.h"
#include "aeadlint/experiment.h"
#include "test_util.h"

namespace aeadlint {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;
using testing::WriteText;

TEST(Prompts, EveryCellNamesItsAlgorithmAndCrate) {
  for (Algorithm a : kAllAlgorithms) {
    for (Strategy s : kAllStrategies) {
      const PromptSpec p = RenderPrompt(s, a);
      EXPECT_EQ(p.strategy, s);
      EXPECT_EQ(p.algorithm, a);
      EXPECT_EQ(p.text.find('{'), std::string::npos) << p.text;
      const bool aes = a == Algorithm::kAes256Gcm;
      EXPECT_NE(p.text.find(aes ? "AES-256-GCM" : "ChaCha20-Poly1305"), std::string::npos);
      EXPECT_NE(p.text.find(aes ? "aes-gcm" : "chacha20poly1305"), std::string::npos);
      EXPECT_NE(p.text.find("0.10"), std::string::npos);
    }
  }
  EXPECT_NE(RenderPrompt(Strategy::kSecurityFocused, Algorithm::kChaCha20Poly1305)
                .text.find("ChaCha20Poly1305::generate_key"),
            std::string::npos);
}

TEST(Prompts, NamesRoundTrip) {
  for (Strategy s : kAllStrategies) EXPECT_EQ(ParseStrategy(StrategyName(s)), s);
  for (Algorithm a : kAllAlgorithms) EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  EXPECT_EQ(StrategyLabel(Strategy::kChainOfThought), "Chain-of-thought");
  EXPECT_EQ(AlgorithmLabel(Algorithm::kAes256Gcm), "AES-256-GCM");
  EXPECT_FALSE(ParseStrategy("few_shot"));
}

TEST(ExtractCode, PrefersLongestRustBlock) {
  const std::string r =
      "intro\n```rust\nfn a() {}\n```\ntext\n```toml\n[dependencies]\naes-gcm = \"0.10\"\nmore = 1\n```\n"
      "```rust\nfn main() {\n    a();\n}\n```\n";
  EXPECT_EQ(ExtractCode(r), "fn main() {\n    a();\n}\n");
}

TEST(ExtractCode, RsTagAndUntaggedFallback) {
  EXPECT_EQ(ExtractCode("```rs\nfn main() {}\n```"), "fn main() {}\n");
  EXPECT_EQ(ExtractCode("```\nfn main() {}\n```\n"), "fn main() {}\n");
}

TEST(ExtractCode, InlineFenceInProseIsIgnored) {
  const std::string r =
      "Wrap it in ```rust``` markers like so.\n\n```rust\nfn main() {}\n```\n";
  EXPECT_EQ(ExtractCode(r), "fn main() {}\n");
}

TEST(ExtractCode, UnterminatedFinalFence) {
  EXPECT_EQ(ExtractCode("Here:\n```rust\nfn main() {}\n"), "fn main() {}\n");
}

TEST(ExtractCode, NoFence) {
  EXPECT_FALSE(ExtractCode("Use Aes256Gcm::generate_key(OsRng) and encrypt."));
  EXPECT_FALSE(ExtractCode(""));
}

TEST(InjectDependencies, AddsOnlyUsedCrates) {
  const std::string code =
      "use aes_gcm::{Aes256Gcm, KeyInit};\nuse rand::RngCore;\nfn main() { hex::encode(b\"x\"); }\n";
  const std::string out = InjectDependencies(code, BaseManifest("s"));
  EXPECT_NE(out.find("aes-gcm = \"0.10\"\n"), std::string::npos);
  EXPECT_NE(out.find("rand = \"0.8\"\n"), std::string::npos);
  EXPECT_NE(out.find("hex = \"0.4\"\n"), std::string::npos);
  EXPECT_EQ(out.find("chacha20poly1305"), std::string::npos);
  EXPECT_EQ(out.find("base64"), std::string::npos);
}

TEST(InjectDependencies, ReexportPathsDoNotCount) {
  const std::string out =
      InjectDependencies("use aes_gcm::aead::rand_core::RngCore;\n", BaseManifest("s"));
  EXPECT_NE(out.find("aes-gcm"), std::string::npos);
  EXPECT_EQ(out.find("rand_core"), std::string::npos);
}

TEST(InjectDependencies, Idempotent) {
  const std::string code = "use chacha20poly1305::ChaCha20Poly1305;\nextern crate base64;\n";
  const std::string once = InjectDependencies(code, BaseManifest("s"));
  EXPECT_EQ(InjectDependencies(code, once), once);
}

TEST(InjectDependencies, KeepsExistingPinsAndCreatesTable) {
  const std::string manifest = "[package]\nname = \"x\"\n";
  const std::string out = InjectDependencies("use aes_gcm::Aes256Gcm;", manifest);
  EXPECT_EQ(out, "[package]\nname = \"x\"\n\n[dependencies]\naes-gcm = \"0.10\"\n");
  const std::string pinned = "[dependencies]\naes-gcm = \"=0.10.3\"\n";
  EXPECT_EQ(InjectDependencies("use aes_gcm::Aes256Gcm;", pinned), pinned);
}

TEST(InjectDependencies, MalformedManifest) {
  EXPECT_THROW(InjectDependencies("use aes_gcm::X;", "[dependencies\n"), ManifestParseError);
  EXPECT_THROW(InjectDependencies("use aes_gcm::X;", "[dependencies]\njust words\n"),
               ManifestParseError);
}

TEST(SampleKey, IdAndOrdering) {
  const SampleKey k{"gpt-4o", Algorithm::kChaCha20Poly1305, Strategy::kChainOfThought, 3};
  EXPECT_EQ(k.Id(), "gpt-4o/CHACHA20_POLY1305/chain_of_thought/r03");
  EXPECT_EQ(k.FixtureStem(), fs::path("gpt-4o/CHACHA20_POLY1305/chain_of_thought/r03"));
  SampleKey later = k;
  later.replicate = 4;
  EXPECT_LT(k, later);
}

TEST(Config, DefaultsAndPathResolution) {
  const ExperimentConfig c = ParseExperimentConfig(
      R"({"models":["m1","m2"],"replicates":2,"fixture_dir":"fx","results_path":"/abs/out.jsonl"})",
      "/base/dir");
  EXPECT_EQ(c.models.size(), 2u);
  EXPECT_EQ(c.models[0].id, "m1");
  EXPECT_EQ(c.algorithms.size(), 2u);
  EXPECT_EQ(c.strategies.size(), 4u);
  EXPECT_EQ(c.mode, RunMode::kReplay);
  EXPECT_EQ(c.compiler, CompilerMode::kReplay);
  EXPECT_EQ(c.fixture_dir, fs::path("/base/dir/fx"));
  EXPECT_EQ(c.results_path, fs::path("/abs/out.jsonl"));
  EXPECT_NO_THROW(ValidateConfig(c));
}

TEST(Config, RecordModeDefaultsToCargo) {
  const ExperimentConfig c = ParseExperimentConfig(R"({"models":["m"],"mode":"record"})", "/");
  EXPECT_EQ(c.compiler, CompilerMode::kCargo);
}

TEST(Config, Rejections) {
  auto invalid = [](const std::string& text) {
    EXPECT_THROW(ValidateConfig(ParseExperimentConfig(text, "/b")), ConfigError) << text;
  };
  invalid(R"({"models":["m"],"fixture_dir":"f","temperature":0.7})");
  invalid(R"({"models":[],"fixture_dir":"f"})");
  invalid(R"({"models":["m"],"fixture_dir":"f","replicates":0})");
  invalid(R"({"models":["m"],"fixture_dir":"f","replicates":11})");
  invalid(R"({"models":["m"],"fixture_dir":"f","workers":0})");
  invalid(R"({"models":["m"],"fixture_dir":"f","algorithms":[]})");
  invalid(R"({"models":["m"]})");
  invalid(R"({"models":["m"],"fixture_dir":"f","compiler":"cargo"})");
  invalid(R"({"models":[{"id":"m","base_url":"http://x"}],"mode":"live","workspace_dir":"w"})");
  invalid(R"({"models":[{"id":"m","base_url":"http://x","api_key_env":"AEADLINT_TEST_UNSET_VAR"}],)"
          R"("mode":"live","workspace_dir":"w"})");
  EXPECT_THROW(ParseExperimentConfig(R"({"models":[{"id":"m","api_key":"sk-123"}]})", "/"),
               ConfigError);
  EXPECT_THROW(ParseExperimentConfig(R"({"models":[{"id":"m","token":"t"}]})", "/"), ConfigError);
  EXPECT_THROW(ParseExperimentConfig(R"({"models":["m"],"mode":"turbo"})", "/"), ConfigError);
  EXPECT_THROW(ParseExperimentConfig(R"({"models":["m"],"algorithms":["DES"]})", "/"),
               ConfigError);
  EXPECT_THROW(ParseExperimentConfig("[1]", "/"), ConfigError);
  EXPECT_THROW(ParseExperimentConfig("{", "/"), ConfigError);
  EXPECT_THROW(LoadExperimentConfig("/nonexistent/config.json"), ConfigError);
}

TEST(Config, LiveModeWithCredentialVariable) {
  setenv("AEADLINT_TEST_KEY", "secret", 1);
  const ExperimentConfig c = ParseExperimentConfig(
      R"({"models":[{"id":"m","base_url":"http://127.0.0.1:1","api_key_env":"AEADLINT_TEST_KEY"}],)"
      R"("mode":"live","workspace_dir":"w"})",
      "/b");
  EXPECT_NO_THROW(ValidateConfig(c));
  unsetenv("AEADLINT_TEST_KEY");
  EXPECT_THROW(ValidateConfig(c), ConfigError);
}

TEST(Subprocess, CapturesOutputAndExitCode) {
  const auto r = RunSubprocess({"sh", "-c", "echo out; echo err >&2; exit 3"}, fs::current_path(),
                               {}, std::chrono::seconds(10));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(r.stdout_text, "out\n");
  EXPECT_EQ(r.stderr_text, "err\n");
}

TEST(Subprocess, EnvironmentAndWorkingDirectory) {
  TempDir dir;
  const auto r = RunSubprocess({"sh", "-c", "printf '%s:%s' \"$AEADLINT_X\" \"$(pwd)\""},
                               dir.path(), {{"AEADLINT_X", "42"}}, std::chrono::seconds(10));
  EXPECT_EQ(r.stdout_text, "42:" + fs::canonical(dir.path()).string());
}

TEST(Subprocess, LargeOutputDoesNotDeadlock) {
  const auto r = RunSubprocess({"sh", "-c", "head -c 300000 /dev/zero; head -c 300000 /dev/zero >&2"},
                               fs::current_path(), {}, std::chrono::seconds(20));
  EXPECT_EQ(r.stdout_text.size(), 300000u);
  EXPECT_EQ(r.stderr_text.size(), 300000u);
}

TEST(Subprocess, TimeoutKillsChild) {
  const auto start = std::chrono::steady_clock::now();
  EXPECT_THROW(RunSubprocess({"sh", "-c", "sleep 30"}, fs::current_path(), {},
                             std::chrono::seconds(1)),
               SubprocessTimeoutError);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(10));
}

TEST(Subprocess, MissingExecutable) {
  EXPECT_THROW(RunSubprocess({"aeadlint-no-such-tool"}, fs::current_path(), {},
                             std::chrono::seconds(5)),
               ToolchainMissingError);
}

// ---- orchestration with in-memory fakes ----

class FakeProvider : public Provider {
 public:
  std::string Complete(const SampleKey& key, const GenerationRequest& request) override {
    EXPECT_EQ(request.temperature, 0.0);
    EXPECT_EQ(request.model_id, key.model);
    if (key.replicate == 2 && key.strategy == Strategy::kChainOfThought) {
      throw ProviderError("rate limited");
    }
    if (key.strategy == Strategy::kSecurityFocused && key.replicate == 1) {
      return "No code, sorry.";
    }
    return "```rust\n" + std::string(key.algorithm == Algorithm::kAes256Gcm ? "ok" : "bad") +
           "\n```\n";
  }
};

class FakeCompiler : public Compiler {
 public:
  CompilationOutcome Compile(const SampleKey& key, const std::string& code) override {
    std::vector<Diagnostic> diags;
    if (code.rfind("bad", 0) == 0) {
      diags.push_back({DiagnosticLevel::kError, "E0599", "no method named `seal`", std::nullopt});
    }
    return MakeCompilationOutcome(key.Id(), diags);
  }
};

ExperimentConfig SmallConfig(int workers) {
  ExperimentConfig c;
  c.models = {{"m1"}, {"m2"}};
  c.algorithms = {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  c.strategies = {kAllStrategies.begin(), kAllStrategies.end()};
  c.replicates = 2;
  c.workers = workers;
  c.fixture_dir = "/unused";
  return c;
}

ExperimentHooks FakeHooks() {
  ExperimentHooks h;
  h.provider = [](const ExperimentConfig&) { return std::make_unique<FakeProvider>(); };
  h.compiler = [](const ExperimentConfig&) { return std::make_unique<FakeCompiler>(); };
  return h;
}

TEST(RunExperiment, FakesCoverEveryCellAndRecordErrors) {
  std::mutex mu;
  std::set<std::string> seen;
  ExperimentHooks hooks = FakeHooks();
  hooks.on_sample = [&](const SampleResult& r) {
    std::lock_guard<std::mutex> lock(mu);
    seen.insert(r.key.Id());
  };
  const ExperimentMatrix m = RunExperiment(SmallConfig(4), hooks);
  ASSERT_EQ(m.samples.size(), 32u);
  EXPECT_EQ(seen.size(), 32u);
  EXPECT_TRUE(std::is_sorted(m.samples.begin(), m.samples.end(),
                             [](const SampleResult& a, const SampleResult& b) { return a.key < b.key; }));
  int errors = 0;
  int extraction = 0;
  for (const SampleResult& s : m.samples) {
    if (!s.error.empty()) {
      ++errors;
      EXPECT_NE(s.error.find("rate limited"), std::string::npos);
      continue;
    }
    if (s.compilation.extraction_failure) {
      ++extraction;
      EXPECT_FALSE(s.compilation.compiled);
      continue;
    }
    EXPECT_EQ(s.compilation.compiled, s.key.algorithm == Algorithm::kAes256Gcm) << s.key.Id();
  }
  // 2 models x 2 algorithms hit each fake failure once.
  EXPECT_EQ(errors, 4);
  EXPECT_EQ(extraction, 4);
  const auto cell = m.Cell("m2", Algorithm::kAes256Gcm, Strategy::kZeroShot);
  ASSERT_EQ(cell.size(), 2u);
  EXPECT_EQ(cell[0]->key.replicate, 1);
  EXPECT_EQ(cell[1]->key.replicate, 2);
}

TEST(RunExperiment, WorkerCountDoesNotChangeResults) {
  const std::string one = SerializeResults(RunExperiment(SmallConfig(1), FakeHooks()));
  const std::string many = SerializeResults(RunExperiment(SmallConfig(8), FakeHooks()));
  EXPECT_EQ(one, many);
}

TEST(ResultsStore, RoundTripAndFile) {
  TempDir dir;
  ExperimentConfig c = SmallConfig(2);
  c.results_path = dir.path() / "sub" / "results.jsonl";
  const ExperimentMatrix m = RunExperiment(c, FakeHooks());
  const std::string text = SerializeResults(m);
  EXPECT_EQ(SerializeResults(ParseResults(text)), text);
  EXPECT_EQ(testing::ReadText(c.results_path), text);
  EXPECT_EQ(SerializeResults(ReadResultsStore(c.results_path)), text);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 32);
  EXPECT_EQ(text.find("timestamp"), std::string::npos);
  EXPECT_THROW(ReadResultsStore(dir.path() / "missing.jsonl"), IoError);
}

// ---- replay against the bundled fixture set ----

TEST(ReplayFixtures, MatchManifestGroundTruth) {
  const fs::path fixtures = testing::SourceDir() / "fixtures" / "generations";
  ExperimentConfig c = LoadExperimentConfig(testing::SourceDir() / "configs" / "replay.json");
  c.results_path.clear();
  ValidateConfig(c);
  const ExperimentMatrix m = RunExperiment(c);
  const FixtureManifest manifest = LoadFixtureManifest(fixtures);
  ASSERT_EQ(manifest.samples.size(), 48u);
  ASSERT_EQ(m.samples.size(), 48u);
  std::set<std::tuple<std::string, Algorithm, Strategy>> cells;
  for (std::size_t i = 0; i < m.samples.size(); ++i) {
    const SampleResult& s = m.samples[i];
    const FixtureSample& f = manifest.samples[i];
    ASSERT_EQ(s.key, f.key);
    EXPECT_TRUE(s.error.empty()) << s.key.Id() << ": " << s.error;
    EXPECT_EQ(s.compilation.compiled, f.compiled) << s.key.Id();
    EXPECT_EQ(s.compilation.dominant_class, f.dominant_class) << s.key.Id();
    EXPECT_EQ(s.compilation.extraction_failure, f.extraction_failure) << s.key.Id();
    if (!s.compilation.compiled) EXPECT_TRUE(s.findings.empty());
    cells.insert({s.key.model, s.key.algorithm, s.key.strategy});
  }
  EXPECT_EQ(cells.size(), 24u);
}

TEST(ReplayFixtures, MissingFixtureNamesTheCell) {
  TempDir dir;
  ReplayProvider p(dir.path());
  const SampleKey k{"m", Algorithm::kAes256Gcm, Strategy::kZeroShot, 1};
  try {
    p.Complete(k, {"m", "prompt", 0.0});
    FAIL() << "expected MissingFixtureError";
  } catch (const MissingFixtureError& e) {
    EXPECT_NE(std::string(e.what()).find("m/AES_256_GCM/zero_shot/r01"), std::string::npos);
  }
  ReplayCompiler compiler(dir.path());
  EXPECT_THROW(compiler.Compile(k, "fn main() {}"), MissingFixtureError);
}

TEST(Recording, ProviderWritesFixtureThatReplays) {
  TempDir dir;
  class Fixed : public Provider {
   public:
    std::string Complete(const SampleKey&, const GenerationRequest&) override {
      return "```rust\nfn main() {}\n```\n";
    }
  };
  RecordingProvider rec(std::make_unique<Fixed>(), dir.path());
  const SampleKey k{"m", Algorithm::kChaCha20Poly1305, Strategy::kSecurityFocused, 7};
  const GenerationRecord live = Generate(rec, k);
  EXPECT_FALSE(live.timestamp.empty());
  EXPECT_EQ(live.extracted_code, "fn main() {}\n");
  EXPECT_EQ(live.prompt.strategy, Strategy::kSecurityFocused);
  ReplayProvider replay(dir.path());
  const GenerationRecord again = Generate(replay, k);
  EXPECT_EQ(again.raw_response, live.raw_response);
  EXPECT_TRUE(again.timestamp.empty());
}

TEST(CompileSample, BlankCodeIsExtractionFailure) {
  FakeCompiler c;
  const auto out = CompileSample(c, {"m", Algorithm::kAes256Gcm, Strategy::kZeroShot, 1}, "  \n");
  EXPECT_TRUE(out.extraction_failure);
  EXPECT_FALSE(out.compiled);
  EXPECT_EQ(out.dominant_class, ErrorClass::kNoError);
}

// ---- real toolchain (skipped when cargo is not installed) ----

std::optional<std::string> FindCargo() {
  std::vector<fs::path> dirs;
  if (const char* home = std::getenv("CARGO_HOME")) dirs.push_back(fs::path(home) / "bin");
  if (const char* path = std::getenv("PATH")) {
    std::string p = path;
    for (std::size_t b = 0, e; b <= p.size(); b = e + 1) {
      e = p.find(':', b);
      if (e == std::string::npos) e = p.size();
      dirs.emplace_back(p.substr(b, e - b));
    }
  }
  if (const char* home = std::getenv("HOME")) dirs.push_back(fs::path(home) / ".cargo" / "bin");
  for (const fs::path& d : dirs) {
    if (fs::exists(d / "cargo")) return (d / "cargo").string();
  }
  return std::nullopt;
}

TEST(CargoCompiler, CompilesAndClassifiesRealSamples) {
  const auto cargo = FindCargo();
  if (!cargo) GTEST_SKIP() << "cargo not installed";
  TempDir dir;
  CargoOptions opts;
  opts.cargo = *cargo;
  opts.workspace_root = dir.path() / "ws";
  opts.target_dir = dir.path() / "target";
  opts.timeout = std::chrono::seconds(300);
  CargoCompiler compiler(opts);

  const SampleKey good{"m", Algorithm::kAes256Gcm, Strategy::kZeroShot, 1};
  const auto ok = compiler.Compile(
      good,
      "use aes_gcm::aead::{Aead, AeadCore, KeyInit, OsRng};\nuse aes_gcm::Aes256Gcm;\n"
      "fn main() {\n    let key = Aes256Gcm::generate_key(OsRng);\n"
      "    let cipher = Aes256Gcm::new(&key);\n"
      "    let nonce = Aes256Gcm::generate_nonce(&mut OsRng);\n"
      "    if let Ok(ct) = cipher.encrypt(&nonce, b\"x\".as_ref()) { println!(\"{}\", ct.len()); }\n}\n");
  EXPECT_TRUE(ok.compiled) << (ok.diagnostics.empty() ? "" : ok.diagnostics[0].message);
  EXPECT_TRUE(fs::exists(opts.workspace_root));

  const SampleKey bad{"m", Algorithm::kAes256Gcm, Strategy::kZeroShot, 2};
  const auto fail = compiler.Compile(
      bad, "use aes_gcm::aead::NewAead;\nfn main() {}\n");
  EXPECT_FALSE(fail.compiled);
  EXPECT_EQ(fail.dominant_class, ErrorClass::kUnresolvedImport);
}

TEST(CargoCompiler, MissingToolchain) {
  TempDir dir;
  CargoOptions opts;
  opts.cargo = "aeadlint-no-such-cargo";
  opts.workspace_root = dir.path();
  CargoCompiler compiler(opts);
  EXPECT_THROW(compiler.Compile({"m", Algorithm::kAes256Gcm, Strategy::kZeroShot, 1}, "fn main() {}"),
               ToolchainMissingError);
}

}  // namespace
}  // namespace aeadlint
