#pragma once

#include <stdexcept>
#include <string>

namespace npz {

enum class ErrorKind {
    NonUnit,
    DimensionTooLow,
    GenusZero,
    NonUnitVertex,
    Degenerate,
    ExceedsSearchBound,
    NoUnitPivot,
    NonUnitDerivative,
    Inconsistent,
    DimensionMismatch,
    PrecisionExhausted,
    WeilViolation,
    TooLarge,
    ParseError,
    DuplicateTerm,
    InvalidArgument,
    Internal,
};

const char* kind_name(ErrorKind k);

// Every failure in the library is reported through this type. The stage tag is
// filled in by the pipeline driver so the CLI can say where things went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::string stage = {});

    ErrorKind kind() const { return kind_; }
    const std::string& stage() const { return stage_; }
    const std::string& message() const { return message_; }
    Error with_stage(const std::string& stage) const { return Error(kind_, message_, stage); }

private:
    ErrorKind kind_;
    std::string message_;
    std::string stage_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace npz
