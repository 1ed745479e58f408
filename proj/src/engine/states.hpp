#pragma once

#include "engine/types.hpp"

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace c4q::engine {

// |ab⟩ lists qubit q0 first; amplitude index = 2a + b.
enum class StateLabel {
    ZERO, ONE, PLUS, MINUS, R, L,
    ZZ, ZO, OZ, OO,
    PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS,
};

inline constexpr std::size_t kStateCount = 14;

[[nodiscard]] std::span<const StateLabel> all_states() noexcept;

[[nodiscard]] int state_qubits(StateLabel label) noexcept;

/// "ZERO", "PHI_PLUS", ...
[[nodiscard]] std::string_view state_key(StateLabel label) noexcept;
[[nodiscard]] std::optional<StateLabel> state_from_key(std::string_view key) noexcept;

/// Ket spelling used in answers: "|0⟩", "|−⟩", "|φ⁺⟩", ...
[[nodiscard]] std::string_view state_ket(StateLabel label) noexcept;

struct StateVector {
    std::vector<Amplitude> amplitudes;

    [[nodiscard]] int qubits() const noexcept { return amplitudes.size() == 4 ? 2 : 1; }
    [[nodiscard]] double norm() const noexcept;
};

[[nodiscard]] StateVector state_vector(StateLabel label);

/// Named state equal to v within tol (no global phase allowed), if any.
[[nodiscard]] std::optional<StateLabel> identify_state(const StateVector& v, double tol = 1e-9) noexcept;

} // namespace c4q::engine
