#include "common/error.hpp"

namespace c4q {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::ParameterMissing: return "parameter_missing";
    case ErrorCode::ArityMismatch: return "arity_mismatch";
    case ErrorCode::EmptyInput: return "empty_input";
    case ErrorCode::AmbiguousGate: return "ambiguous_gate";
    case ErrorCode::AmbiguousState: return "ambiguous_state";
    case ErrorCode::AmbiguousAxis: return "ambiguous_axis";
    case ErrorCode::AngleParse: return "angle_parse";
    case ErrorCode::TemplateValidation: return "template_validation";
    case ErrorCode::CorpusTooSmall: return "corpus_too_small";
    case ErrorCode::DegenerateCorpus: return "degenerate_corpus";
    case ErrorCode::VersionMismatch: return "version_mismatch";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::SessionClosed: return "session_closed";
    case ErrorCode::Io: return "io_error";
    }
    return "unknown";
}

} // namespace c4q
