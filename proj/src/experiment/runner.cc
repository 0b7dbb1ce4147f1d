#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "aeadlint/errors.h"
#include "aeadlint/experiment.h"
#include "json_codec.h"

namespace aeadlint {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::unique_ptr<Provider> BuildProvider(const ExperimentConfig& c) {
  if (c.mode == RunMode::kReplay) {
    return std::make_unique<ReplayProvider>(c.fixture_dir);
  }
  auto set = std::make_unique<ProviderSet>();
  for (const ModelEndpoint& m : c.models) {
    set->Add(m.id, std::make_unique<ChatCompletionsProvider>(
                       m, c.retry, std::chrono::seconds(c.timeout_s)));
  }
  if (c.mode == RunMode::kRecord) {
    return std::make_unique<RecordingProvider>(std::move(set), c.fixture_dir);
  }
  return set;
}

std::unique_ptr<Compiler> BuildCompiler(const ExperimentConfig& c) {
  if (c.compiler == CompilerMode::kReplay) {
    return std::make_unique<ReplayCompiler>(c.fixture_dir);
  }
  CargoOptions opts;
  opts.cargo = c.cargo;
  opts.workspace_root = c.workspace_dir;
  opts.target_dir = c.target_dir.empty() ? c.workspace_dir / "target" : c.target_dir;
  opts.timeout = std::chrono::seconds(c.timeout_s);
  if (c.compiler == CompilerMode::kRecord) {
    return MakeRecordingCompiler(std::move(opts), c.fixture_dir);
  }
  return std::make_unique<CargoCompiler>(std::move(opts));
}

SampleResult RunSample(Provider& provider, Compiler& compiler,
                       const SampleKey& key, double temperature) {
  SampleResult r;
  r.key = key;
  r.compilation.sample_id = key.Id();
  try {
    const GenerationRecord gen = Generate(provider, key, temperature);
    r.compilation = CompileSample(compiler, key, gen.extracted_code.value_or(""));
    if (r.compilation.compiled) {
      // Stage 4 runs on compiled samples only.
      r.findings = Analyze(SourceUnit::FromText(key.Id() + "/src/main.rs",
                                                *gen.extracted_code));
    }
  } catch (const Error& e) {
    r.compilation = CompilationOutcome{};
    r.compilation.sample_id = key.Id();
    r.findings.clear();
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<const SampleResult*> ExperimentMatrix::Cell(
    const std::string& model, Algorithm algorithm, Strategy strategy) const {
  std::vector<const SampleResult*> out;
  for (const SampleResult& s : samples) {
    if (s.key.model == model && s.key.algorithm == algorithm &&
        s.key.strategy == strategy) {
      out.push_back(&s);
    }
  }
  return out;
}

ExperimentMatrix RunExperiment(const ExperimentConfig& config,
                               const ExperimentHooks& hooks) {
  ValidateConfig(config);
  std::unique_ptr<Provider> provider =
      hooks.provider ? hooks.provider(config) : BuildProvider(config);
  std::unique_ptr<Compiler> compiler =
      hooks.compiler ? hooks.compiler(config) : BuildCompiler(config);

  std::vector<SampleKey> keys;
  for (const ModelEndpoint& m : config.models) {
    for (Algorithm a : config.algorithms) {
      for (Strategy s : config.strategies) {
        for (int r = 1; r <= config.replicates; ++r) {
          keys.push_back({m.id, a, s, r});
        }
      }
    }
  }
  std::sort(keys.begin(), keys.end());

  ExperimentMatrix matrix;
  matrix.samples.resize(keys.size());
  std::atomic<std::size_t> next{0};
  std::mutex hook_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      matrix.samples[i] = RunSample(*provider, *compiler, keys[i], config.temperature);
      if (hooks.on_sample) {
        std::lock_guard<std::mutex> lock(hook_mu);
        hooks.on_sample(matrix.samples[i]);
      }
    }
  };
  const std::size_t n_workers = std::min<std::size_t>(
      static_cast<std::size_t>(config.workers), std::max<std::size_t>(keys.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  if (!config.results_path.empty()) WriteResultsStore(matrix, config.results_path);
  return matrix;
}

std::string SerializeResults(const ExperimentMatrix& matrix) {
  std::vector<const SampleResult*> sorted;
  for (const SampleResult& s : matrix.samples) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const SampleResult* a, const SampleResult* b) { return a->key < b->key; });
  std::string out;
  for (const SampleResult* s : sorted) {
    out += codec::ToJson(*s).dump();
    out += '\n';
  }
  return out;
}

ExperimentMatrix ParseResults(std::string_view jsonl) {
  ExperimentMatrix matrix;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    const std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      matrix.samples.push_back(codec::SampleFromJson(json::parse(line)));
    } catch (const std::exception& e) {
      throw IoError("results store line " + std::to_string(line_no) + ": " +
                    e.what());
    }
  }
  std::sort(matrix.samples.begin(), matrix.samples.end(),
            [](const SampleResult& a, const SampleResult& b) { return a.key < b.key; });
  return matrix;
}

void WriteResultsStore(const ExperimentMatrix& matrix, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write results store " + path.string());
  out << SerializeResults(matrix);
}

ExperimentMatrix ReadResultsStore(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read results store " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseResults(ss.str());
}

FixtureManifest LoadFixtureManifest(const fs::path& fixture_dir) {
  const fs::path path = fixture_dir / "manifest.json";
  std::ifstream in(path);
  if (!in) throw MissingFixtureError("no fixture manifest at " + path.string());
  FixtureManifest manifest;
  try {
    const json doc = json::parse(in);
    for (const json& s : doc.at("samples")) {
      FixtureSample f;
      f.key.model = s.at("model").get<std::string>();
      const auto algo = ParseAlgorithm(s.at("algorithm").get<std::string>());
      const auto strat = ParseStrategy(s.at("strategy").get<std::string>());
      const auto cls = ParseErrorClass(s.value("dominant_class", "NoError"));
      if (!algo || !strat || !cls) {
        throw MissingFixtureError("bad sample entry " + s.dump());
      }
      f.key.algorithm = *algo;
      f.key.strategy = *strat;
      f.key.replicate = s.at("replicate").get<int>();
      f.compiled = s.at("compiled").get<bool>();
      f.dominant_class = *cls;
      f.extraction_failure = s.value("extraction_failure", false);
      manifest.samples.push_back(f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw MissingFixtureError(path.string() + ": " + e.what());
  }
  std::sort(manifest.samples.begin(), manifest.samples.end(),
            [](const FixtureSample& a, const FixtureSample& b) { return a.key < b.key; });
  return manifest;
}

}  // namespace aeadlint
