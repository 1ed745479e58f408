#pragma once

#include "engine/states.hpp"
#include "engine/types.hpp"
#include "nlu/angle.hpp"
#include "nlu/normalize.hpp"

#include <optional>

namespace c4q::nlu {

/// Longest alias match against the gate lexicon. A generic rotation word
/// ("rotate", "rotation") resolves to RX/RY/RZ when exactly one axis is
/// named. Throws AmbiguousGate when two different gates are mentioned.
[[nodiscard]] std::optional<engine::GateId> extract_gate(const NormalizedText& text);

/// Ket tokens and word forms ("the plus state", "phi plus").
/// Throws AmbiguousState when two different states are mentioned.
[[nodiscard]] std::optional<engine::StateLabel> extract_state(const NormalizedText& text);

/// Phase shift for P. Prefers angles next to "phase", "shift", "of", ...;
/// a bare number only counts when it is next to one of those words.
[[nodiscard]] std::optional<Angle> extract_phase(const NormalizedText& text);

struct Rotation {
    std::optional<engine::Axis> axis;
    std::optional<Angle> angle;
};

/// Axis from "about/around the x axis"-style phrases or the rx/ry/rz gate
/// names; angle via the angle grammar. nullopt when neither part is present.
/// Throws AmbiguousAxis for two different axes.
[[nodiscard]] std::optional<Rotation> extract_rotation(const NormalizedText& text);

} // namespace c4q::nlu
