#pragma once

#include "nlu/classifier.hpp"
#include "nlu/query.hpp"

#include <numbers>
#include <string_view>

namespace c4q::nlu {

inline constexpr double kDefaultPhase = std::numbers::pi / 2;
inline constexpr double kDefaultAngle = std::numbers::pi / 2;

/// ZERO for one-qubit gates, ZZ for two-qubit gates.
[[nodiscard]] engine::StateLabel default_state(int arity) noexcept;

/// Slot filling for a known category: gate, then (APPLY) the initial state,
/// then (DRAW/APPLY) phase or rotation angle, with defaults recorded in
/// `defaulted`. DEFINE fills no parameters; DRAW ignores any state.
/// Throws ArityMismatch for APPLY with a state of the wrong qubit count and
/// propagates extractor errors. An unresolved gate is not an error.
[[nodiscard]] ParsedQuery extract_query(const NormalizedText& text, Category category);

/// normalize -> classify -> extract_query, with classifier posteriors in
/// `confidence`.
[[nodiscard]] ParsedQuery interpret(const ClassifierModel& model, std::string_view raw);

} // namespace c4q::nlu
