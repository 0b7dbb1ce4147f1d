#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "aeadlint/errors.h"
#include "aeadlint/experiment.h"
#include "httplib.h"
#include "json.hpp"

namespace aeadlint {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const fs::path& path, const std::string& data) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << data;
  }
  fs::rename(tmp, path);
}

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool Retryable(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

std::string SampleKey::Id() const { return FixtureStem().generic_string(); }

fs::path SampleKey::FixtureStem() const {
  char rep[8];
  std::snprintf(rep, sizeof rep, "r%02d", replicate);
  return fs::path(model) / std::string(AlgorithmName(algorithm)) /
         std::string(StrategyName(strategy)) / rep;
}

ReplayProvider::ReplayProvider(fs::path dir) : dir_(std::move(dir)) {}

std::string ReplayProvider::Complete(const SampleKey& key,
                                     const GenerationRequest&) {
  const fs::path path = dir_ / (key.FixtureStem().string() + ".md");
  if (!fs::is_regular_file(path)) {
    throw MissingFixtureError("no recorded response for " + key.Id() +
                              " (expected " + path.string() + ")");
  }
  return ReadFile(path);
}

RecordingProvider::RecordingProvider(std::unique_ptr<Provider> inner,
                                     fs::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {}

std::string RecordingProvider::Complete(const SampleKey& key,
                                        const GenerationRequest& request) {
  std::string response = inner_->Complete(key, request);
  WriteFileAtomic(dir_ / (key.FixtureStem().string() + ".md"), response);
  return response;
}

ChatCompletionsProvider::ChatCompletionsProvider(ModelEndpoint endpoint,
                                                 RetryPolicy retry,
                                                 std::chrono::seconds timeout)
    : endpoint_(std::move(endpoint)), retry_(retry), timeout_(timeout) {}

std::string ChatCompletionsProvider::Complete(const SampleKey& key,
                                              const GenerationRequest& request) {
  const char* api_key = std::getenv(endpoint_.api_key_env.c_str());
  if (api_key == nullptr || *api_key == '\0') {
    throw ProviderError(endpoint_.id + ": environment variable " +
                        endpoint_.api_key_env + " is not set");
  }
  const json body = {
      {"model", endpoint_.model_name.empty() ? endpoint_.id : endpoint_.model_name},
      {"temperature", request.temperature},
      {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
  };
  const httplib::Headers headers = {
      {"Authorization", std::string("Bearer ") + api_key}};

  std::string last_error;
  auto backoff = retry_.initial_backoff;
  for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(endpoint_.base_url);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    const auto res = client.Post(endpoint_.path, headers, body.dump(),
                                 "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw ProviderError(endpoint_.id + ": authentication rejected (HTTP " +
                          std::to_string(res->status) + ") for " + key.Id());
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      if (Retryable(res->status)) continue;
      break;
    }
    try {
      const json doc = json::parse(res->body);
      return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      throw ProviderError(endpoint_.id + ": malformed response for " + key.Id() +
                          ": " + e.what());
    }
  }
  throw ProviderError(endpoint_.id + ": request for " + key.Id() + " failed after " +
                      std::to_string(retry_.max_attempts) + " attempts: " +
                      last_error);
}

void ProviderSet::Add(const std::string& model_id,
                      std::unique_ptr<Provider> provider) {
  providers_[model_id] = std::move(provider);
}

std::string ProviderSet::Complete(const SampleKey& key,
                                  const GenerationRequest& request) {
  const auto it = providers_.find(key.model);
  if (it == providers_.end()) {
    throw ProviderError("no provider configured for model " + key.model);
  }
  return it->second->Complete(key, request);
}

GenerationRecord Generate(Provider& provider, const SampleKey& key,
                          double temperature) {
  GenerationRecord record;
  record.key = key;
  record.prompt = RenderPrompt(key.strategy, key.algorithm);
  const bool replay = dynamic_cast<ReplayProvider*>(&provider) != nullptr;
  record.raw_response =
      provider.Complete(key, {key.model, record.prompt.text, temperature});
  if (!replay) record.timestamp = UtcNow();
  record.extracted_code = ExtractCode(record.raw_response);
  return record;
}

}  // namespace aeadlint
