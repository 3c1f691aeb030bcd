#pragma once
// Error taxonomy shared by every module.
//
// One exception type, one code per contract violation. Domain errors
// (an article that maps to no valid scenario) are distinguished from
// input/environment errors so the CLI can map them to exit codes.

#include <stdexcept>
#include <string>

namespace kuhn {

enum class ErrorCode {
    InvalidArgs,          // bad argument to a pure operation (e.g. choose with r > n)
    UnmappedKind,         // entity kind outside the tiered content kinds
    InvalidScenario,      // triple fails the one-per-set validity rule
    MissingAssertionKind, // article lacks a method/observation/conclusion assertion
    MalformedLexicon,     // duplicate cue or unparseable lexicon line
    DanglingEndpoint,     // edge endpoint does not resolve to a known entity
    MixedFields,          // tracker stream spans more than one field
    UnknownField,         // no article carries the requested field id
    IoFailure,            // file unreadable/unwritable
    ParseError,           // malformed record or scenario text
    DuplicateId,          // article id already present in the corpus
    ConfigError,          // unknown or malformed config key
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgs: return "InvalidArgs";
        case ErrorCode::UnmappedKind: return "UnmappedKind";
        case ErrorCode::InvalidScenario: return "InvalidScenario";
        case ErrorCode::MissingAssertionKind: return "MissingAssertionKind";
        case ErrorCode::MalformedLexicon: return "MalformedLexicon";
        case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
        case ErrorCode::MixedFields: return "MixedFields";
        case ErrorCode::UnknownField: return "UnknownField";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

    // InvalidScenario and MissingAssertionKind are properties of the data,
    // not of the invocation; everything else is the caller's problem.
    bool is_domain_error() const {
        return code_ == ErrorCode::InvalidScenario ||
               code_ == ErrorCode::MissingAssertionKind;
    }

private:
    ErrorCode code_;
};

} // namespace kuhn
