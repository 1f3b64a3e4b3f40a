#include "npzeta/errors.hpp"

namespace npz {

const char* kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::DimensionTooLow: return "DimensionTooLow";
    case ErrorKind::GenusZero: return "GenusZero";
    case ErrorKind::NonUnitVertex: return "NonUnitVertex";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::ExceedsSearchBound: return "ExceedsSearchBound";
    case ErrorKind::NoUnitPivot: return "NoUnitPivot";
    case ErrorKind::NonUnitDerivative: return "NonUnitDerivative";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::WeilViolation: return "WeilViolation";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateTerm: return "DuplicateTerm";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

static std::string compose(ErrorKind kind, const std::string& message, const std::string& stage)
{
    std::string s = kind_name(kind);
    if (!stage.empty())
        s = "[" + stage + "] " + s;
    if (!message.empty())
        s += ": " + message;
    return s;
}

Error::Error(ErrorKind kind, const std::string& message, std::string stage)
    : std::runtime_error(compose(kind, message, stage)), kind_(kind), message_(message),
      stage_(std::move(stage))
{
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

}  // namespace npz
