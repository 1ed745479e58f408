#pragma once

#include "engine/states.hpp"

#include <optional>
#include <string>

namespace c4q::engine {

/// Radians in "pi" spelling when the value is a small rational multiple of
/// pi ("pi/2", "3pi/4", "-pi"), otherwise a trimmed decimal ("0.5", "1").
[[nodiscard]] std::string format_angle(double radians);

/// Ket-sum rendering of a normalized state, e.g. "−|1⟩",
/// "(1/√2)(|00⟩ + |11⟩)", "0.9239|0⟩ − 0.3827i|1⟩".
///
/// Amplitudes within 1e-9 of {0, ±1, ±1/√2, ±1/2, ±i, ±i/√2, ±i/2,
/// (±1±i)/2} are printed symbolically, as is e^(iφ) when `phase` is given.
/// Anything else is printed with four decimals. Minus signs are U+2212.
[[nodiscard]] std::string format_state(const StateVector& v, std::optional<double> phase = std::nullopt);

} // namespace c4q::engine
