#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aeadlint/errors.h"
#include "aeadlint/experiment.h"

namespace aeadlint {
namespace {

namespace fs = std::filesystem;

std::string PackageName(const SampleKey& key) {
  std::string name = "sample_" + key.Id();
  for (char& c : name) {
    c = std::isalnum(static_cast<unsigned char>(c))
            ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
            : '_';
  }
  return name;
}

void WriteFile(const fs::path& path, const std::string& data) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << data;
}

}  // namespace

CargoCompiler::CargoCompiler(CargoOptions options)
    : options_(std::move(options)) {}

CompilationOutcome CargoCompiler::Compile(const SampleKey& key,
                                          const std::string& code) {
  const std::string package = PackageName(key);
  const fs::path workspace = fs::absolute(options_.workspace_root / package);
  WriteFile(workspace / "Cargo.toml",
            InjectDependencies(code, BaseManifest(package)));
  WriteFile(workspace / "src" / "main.rs", code);

  std::vector<std::string> argv = {options_.cargo};
  argv.insert(argv.end(), options_.args.begin(), options_.args.end());
  if (options_.offline) argv.push_back("--offline");
  std::map<std::string, std::string> env;
  if (!options_.target_dir.empty()) {
    env["CARGO_TARGET_DIR"] = fs::absolute(options_.target_dir).string();
  }
  env["CARGO_TERM_COLOR"] = "never";

  const SubprocessResult run =
      RunSubprocess(argv, workspace, env, options_.timeout);
  if (options_.on_stream) options_.on_stream(key, run.stdout_text);
  ParsedDiagnostics parsed = ParseDiagnosticStream(run.stdout_text);
  CompilationOutcome outcome =
      MakeCompilationOutcome(key.Id(), std::move(parsed.diagnostics));
  if (run.exit_code != 0 && outcome.compiled) {
    // cargo failed without reporting a compiler error (resolution,
    // network, manifest problems).
    throw ToolchainMissingError("cargo exited with status " +
                                std::to_string(run.exit_code) + " for " +
                                key.Id() + ": " + run.stderr_text);
  }
  return outcome;
}

ReplayCompiler::ReplayCompiler(fs::path dir) : dir_(std::move(dir)) {}

CompilationOutcome ReplayCompiler::Compile(const SampleKey& key,
                                           const std::string&) {
  const fs::path path = dir_ / (key.FixtureStem().string() + ".clippy.jsonl");
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MissingFixtureError("no recorded diagnostics for " + key.Id() +
                              " (expected " + path.string() + ")");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return MakeCompilationOutcome(key.Id(), ParseDiagnostics(ss.str()));
}

std::unique_ptr<Compiler> MakeRecordingCompiler(CargoOptions options,
                                                fs::path dir) {
  auto user = std::move(options.on_stream);
  options.on_stream = [dir = std::move(dir), user](const SampleKey& key,
                                                   const std::string& stream) {
    WriteFile(dir / (key.FixtureStem().string() + ".clippy.jsonl"), stream);
    if (user) user(key, stream);
  };
  return std::make_unique<CargoCompiler>(std::move(options));
}

CompilationOutcome CompileSample(Compiler& compiler, const SampleKey& key,
                                 const std::string& code) {
  if (code.find_first_not_of(" \t\r\n") == std::string::npos) {
    CompilationOutcome out;
    out.sample_id = key.Id();
    out.extraction_failure = true;
    return out;
  }
  return compiler.Compile(key, code);
}

}  // namespace aeadlint
