#pragma once

#include <stdexcept>
#include <string>

namespace convg {

enum class Errc {
    EmptyBase,
    CarrierMismatch,
    EmptyPreimage,
    NoFIP,
    EmptyDomain,
    DomainMismatch,
    NotDirected,
    NotAConvergence,
    EmptySubset,
    InvalidPartition,
    ShapeMismatch,
    CoverGap,
    Disagreement,
    NotContinuous,
    NotValidated,
    TooLarge,
    NotIsotone,
    PreconditionFailed,
    SchemaError,
    UnknownLabel,
    DuplicateKey,
    BadSubsetKey,
    InvalidArgument,
};

const char* errc_name(Errc c);

/// Recoverable error in the inputs of an operation (maps to CLI exit code 2,
/// or 1 where the CLI documents a false-verdict meaning).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

/// A postcondition guaranteed by a theorem failed. This is never a user
/// error; it means the library falsified one of its own guarantees and the
/// whole run must stop loudly (CLI exit code 3).
class Falsification : public std::logic_error {
public:
    explicit Falsification(const std::string& msg)
        : std::logic_error("falsification: " + msg) {}
};

[[noreturn]] inline void throw_error(Errc code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, Errc code, const std::string& msg) {
    if (!cond) throw_error(code, msg);
}

}  // namespace convg
