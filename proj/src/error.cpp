#include "accomplice/error.hpp"

namespace accomplice {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::DuplicateEntry: return "DuplicateEntry";
        case ErrorCode::IncompleteList: return "IncompleteList";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::PivotInSet: return "PivotInSet";
        case ErrorCode::NotAbovePivot: return "NotAbovePivot";
        case ErrorCode::InvalidMisreport: return "InvalidMisreport";
        case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
        case ErrorCode::InputNotStable: return "InputNotStable";
        case ErrorCode::InconsistentLattice: return "InconsistentLattice";
        case ErrorCode::EmptyPool: return "EmptyPool";
        case ErrorCode::UnknownClaim: return "UnknownClaim";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

}  // namespace accomplice
