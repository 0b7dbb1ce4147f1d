// JSON encoding of library types shared by the results store and the
// report renderers.
#ifndef AEADLINT_SRC_JSON_CODEC_H_
#define AEADLINT_SRC_JSON_CODEC_H_

#include "aeadlint/diagnostics.h"
#include "aeadlint/experiment.h"
#include "aeadlint/rules.h"
#include "json.hpp"

namespace aeadlint::codec {

using nlohmann::json;

json ToJson(const SourceLocation& loc);
SourceLocation LocationFromJson(const json& j);

json ToJson(const Finding& f);
Finding FindingFromJson(const json& j);

json ToJson(const Diagnostic& d);
Diagnostic DiagnosticFromJson(const json& j);

json ToJson(const SampleResult& s);
SampleResult SampleFromJson(const json& j);

// Throws std::runtime_error when `field` is missing or has the wrong type.
template <typename T>
T Get(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end()) {
    throw std::runtime_error(std::string("missing field `") + field + "`");
  }
  return it->get<T>();
}

}  // namespace aeadlint::codec

#endif  // AEADLINT_SRC_JSON_CODEC_H_
