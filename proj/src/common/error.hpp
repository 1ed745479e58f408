#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace c4q {

enum class ErrorCode {
    InvalidArgument,
    ParameterMissing,
    ArityMismatch,
    EmptyInput,
    AmbiguousGate,
    AmbiguousState,
    AmbiguousAxis,
    AngleParse,
    TemplateValidation,
    CorpusTooSmall,
    DegenerateCorpus,
    VersionMismatch,
    NotFound,
    SessionClosed,
    Io,
};

/// Stable snake_case name, used in JSON error bodies and CLI output.
[[nodiscard]] std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<std::string> details = {})
        : std::runtime_error(message), code_(code), details_(std::move(details)) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

    // Extra payload: both candidates for ambiguity errors, the slot name for
    // ParameterMissing, the offending span for AngleParse.
    [[nodiscard]] const std::vector<std::string>& details() const noexcept { return details_; }

private:
    ErrorCode code_;
    std::vector<std::string> details_;
};

} // namespace c4q
