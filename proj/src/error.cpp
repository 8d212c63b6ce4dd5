#include "eoflex/error.hpp"

namespace eoflex {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveTau: return "NonPositiveTau";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::PNotOdd: return "PNotOdd";
    case ErrorCode::DivisorConditionViolated: return "DivisorConditionViolated";
    case ErrorCode::CommonRowsExceedArray: return "CommonRowsExceedArray";
    case ErrorCode::IndexOutOfRing: return "IndexOutOfRing";
    case ErrorCode::ColumnOutOfRange: return "ColumnOutOfRange";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ParityColumnNotUpdatable: return "ParityColumnNotUpdatable";
    case ErrorCode::TooManyErasures: return "TooManyErasures";
    case ErrorCode::RowParityMissing: return "RowParityMissing";
    case ErrorCode::DiagParityMissing: return "DiagParityMissing";
    case ErrorCode::ParityMissing: return "ParityMissing";
    case ErrorCode::ChainStall: return "ChainStall";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::PNotPrime: return "PNotPrime";
    case ErrorCode::PTooSmall: return "PTooSmall";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::Io: return "Io";
    case ErrorCode::TooManyMissing: return "TooManyMissing";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::CrcFailure: return "CrcFailure";
    }
    return "Unknown";
}

CodeError::CodeError(ErrorCode code, const std::string& message, std::int64_t value)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), value_(value) {}

}  // namespace eoflex
