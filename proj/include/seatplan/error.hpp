#pragma once

#include <stdexcept>
#include <string>

namespace seatplan {

enum class ErrorCode {
    invalid_argument,
    invalid_transform,
    invalid_spec,
    parse,
    empty_floorplan,
    duplicate_id,
    size,
    invalid_template,
    reference,
    size_cap,
    invalid_prior,
    contract,
    usage,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace seatplan
