#include "seatplan/error.hpp"

namespace seatplan {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::invalid_transform: return "invalid-transform";
        case ErrorCode::invalid_spec: return "invalid-spec";
        case ErrorCode::parse: return "parse";
        case ErrorCode::empty_floorplan: return "empty-floorplan";
        case ErrorCode::duplicate_id: return "duplicate-id";
        case ErrorCode::size: return "size";
        case ErrorCode::invalid_template: return "invalid-template";
        case ErrorCode::reference: return "reference";
        case ErrorCode::size_cap: return "size-cap";
        case ErrorCode::invalid_prior: return "invalid-prior";
        case ErrorCode::contract: return "contract";
        case ErrorCode::usage: return "usage";
    }
    return "unknown";
}

}  // namespace seatplan
