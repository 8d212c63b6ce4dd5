#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eoflex {

enum class ErrorCode {
    NonPositiveTau,
    KTooSmall,
    PNotOdd,
    DivisorConditionViolated,
    CommonRowsExceedArray,
    IndexOutOfRing,
    ColumnOutOfRange,
    InvalidPattern,
    ShapeMismatch,
    ParityColumnNotUpdatable,
    TooManyErasures,
    RowParityMissing,
    DiagParityMissing,
    ParityMissing,
    ChainStall,
    Underdetermined,
    PNotPrime,
    PTooSmall,
    InvalidParams,
    Io,
    TooManyMissing,
    HeaderMismatch,
    CrcFailure,
};

const char* to_string(ErrorCode code);

class CodeError : public std::runtime_error {
public:
    CodeError(ErrorCode code, const std::string& message, std::int64_t value = 0);

    ErrorCode code() const noexcept { return code_; }
    // Offending quantity where one exists (e.g. the divisor that broke the divisor condition).
    std::int64_t value() const noexcept { return value_; }

private:
    ErrorCode code_;
    std::int64_t value_;
};

}  // namespace eoflex
