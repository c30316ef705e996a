#pragma once

#include <stdexcept>
#include <string>

namespace bimark {

enum class Errc {
    InsufficientContext,
    InvalidToken,
    InvalidDistribution,
    EmptySequence,
    NoScorableTokens,
    InvalidEntropy,
    MissingEntropyTrace,
    ShapeError,
    ModelError,
    ConfigError,
    EmptyCorpus,
    IoError,
    FormatError,
};

const char* errc_name(Errc c) noexcept;

/// Toolkit-wide exception: an error code plus a human-readable message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::InsufficientContext: return "InsufficientContext";
        case Errc::InvalidToken: return "InvalidToken";
        case Errc::InvalidDistribution: return "InvalidDistribution";
        case Errc::EmptySequence: return "EmptySequence";
        case Errc::NoScorableTokens: return "NoScorableTokens";
        case Errc::InvalidEntropy: return "InvalidEntropy";
        case Errc::MissingEntropyTrace: return "MissingEntropyTrace";
        case Errc::ShapeError: return "ShapeError";
        case Errc::ModelError: return "ModelError";
        case Errc::ConfigError: return "ConfigError";
        case Errc::EmptyCorpus: return "EmptyCorpus";
        case Errc::IoError: return "IoError";
        case Errc::FormatError: return "FormatError";
    }
    return "UnknownError";
}

} // namespace bimark
