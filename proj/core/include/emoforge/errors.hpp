#pragma once

#include <stdexcept>
#include <string>

namespace emoforge {

// Failure taxonomy for the whole pipeline. Each operation documents which
// kinds it can raise; the CLI maps groups of kinds onto exit codes.
enum class ErrorKind {
    // configuration
    Config,
    // data ingestion / corpus
    EmptyFile,
    LineCountMismatch,
    InvalidLabel,
    EmptyText,
    InsufficientData,
    EmptyCorpus,
    // feature space / training
    EmptyInput,
    NoTargetSamples,
    NoComplementSamples,
    MissingClass,
    LengthMismatch,
    // attribution
    MissingCover,
    TooManyFeatures,
    // keyword extraction
    VocabularyMismatch,
    EmptyAfterFilter,
    // generation
    CountMismatch,
    Unparseable,
    Backend,
    DuplicateSaturation,
    // linguistics
    BothEmpty,
    NoNgrams,
    ArityMismatch,
    // experiment harness
    PoolExhausted,
    // catch-all for IO problems
    Io,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) fail(kind, message);
}

}  // namespace emoforge
