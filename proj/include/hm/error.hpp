#pragma once

#include <stdexcept>
#include <string>

namespace hm {

enum class ErrorCode {
    DimensionMismatch,
    ContainmentViolation,
    FieldMismatch,
    InvalidCategory,
    InvalidBimodule,
    InvalidModule,
    InvalidIdeal,
    InvalidFunctor,
    CoordinateMismatch,
    ParentMismatch,
    NotTriangular,
    UnknownObject,
    BaseMismatch,
    ResolutionTooShort,
    HypothesisFailed,
    SampleBaseMismatch,
    ZeroModule,
    InvalidCoefficient,
    NotLocal,
    FinitenessError,
    SyntaxError,
    UnresolvedName,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hm
