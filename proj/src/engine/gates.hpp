#pragma once

#include "engine/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace c4q::engine {

/// Immutable description of one supported gate.
struct GateSpec {
    GateId id;
    std::string_view key;           ///< canonical id: "I", "SDG", "CNOT", ...
    std::string_view display_name;  ///< "Pauli Z", "Hadamard", ...
    std::string_view label;         ///< box label in circuit drawings
    std::span<const std::string_view> aliases;  ///< normalized surface forms
    int arity;
    ParamKind param_kind;
    std::string_view definition_text;
};

/// All 14 gates in GateId order.
[[nodiscard]] std::span<const GateSpec> all_gates() noexcept;

[[nodiscard]] const GateSpec& gate_spec(GateId id) noexcept;

/// Accepts the canonical key, case-insensitively ("SDG", "cnot").
[[nodiscard]] std::optional<GateId> gate_from_key(std::string_view key) noexcept;

/// Exact match of a normalized surface (lowercase tokens joined by single
/// spaces) against ids, display names and aliases. Never guesses.
[[nodiscard]] const GateSpec* lookup_gate(std::string_view surface) noexcept;

/// Rotation axis of RX/RY/RZ, nullopt for every other gate.
[[nodiscard]] std::optional<Axis> rotation_axis(GateId id) noexcept;
[[nodiscard]] GateId rotation_gate(Axis axis) noexcept;

/// Conventional matrix. Throws ParameterMissing when the gate needs a phase
/// or angle that is not set, InvalidArgument when params belong to another
/// parameter kind.
[[nodiscard]] UnitaryMatrix gate_matrix(const GateSpec& gate, const GateParams& params);

} // namespace c4q::engine
