#ifndef AEADLINT_ERRORS_H_
#define AEADLINT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace aeadlint {

// Base for every error raised by the library. The CLI maps any Error that
// escapes a subcommand to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define AEADLINT_DEFINE_ERROR(Name)   \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

// source-model
AEADLINT_DEFINE_ERROR(IoError);
AEADLINT_DEFINE_ERROR(EncodingError);
AEADLINT_DEFINE_ERROR(OutOfRangeError);

// rule-engine
AEADLINT_DEFINE_ERROR(UnknownVariableError);

// statistics
AEADLINT_DEFINE_ERROR(InvalidConfidenceError);
AEADLINT_DEFINE_ERROR(DegenerateTableError);
AEADLINT_DEFINE_ERROR(YatesOnNon2x2Error);

// validation-corpus
AEADLINT_DEFINE_ERROR(ManifestSchemaError);
AEADLINT_DEFINE_ERROR(DuplicateCaseIdError);
AEADLINT_DEFINE_ERROR(MissingCaseError);

// experiment-orchestrator
AEADLINT_DEFINE_ERROR(ConfigError);
AEADLINT_DEFINE_ERROR(ProviderError);
AEADLINT_DEFINE_ERROR(MissingFixtureError);
AEADLINT_DEFINE_ERROR(ManifestParseError);
AEADLINT_DEFINE_ERROR(ToolchainMissingError);
AEADLINT_DEFINE_ERROR(SubprocessTimeoutError);

#undef AEADLINT_DEFINE_ERROR

}  // namespace aeadlint

#endif  // AEADLINT_ERRORS_H_
