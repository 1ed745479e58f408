#pragma once

#include "engine/format.hpp"
#include "engine/gates.hpp"
#include "engine/states.hpp"

#include <string>
#include <string_view>

namespace c4q::engine {

struct CircuitDiagram {
    std::string text;    ///< lines joined by '\n', no trailing newline
    std::size_t width;   ///< code points per line
    std::size_t height;  ///< number of lines
};

struct ApplyResult {
    StateVector state;
    std::string ket_text;
};

/// Hard-coded definition text of the gate.
[[nodiscard]] std::string_view define(const GateSpec& gate) noexcept;

/// Box label for single-qubit gates, parameter included: "RX(pi/2)".
[[nodiscard]] std::string gate_label(const GateSpec& gate, const GateParams& params);

/// One wire with a boxed label for single-qubit gates; two wires joined by a
/// vertical connector for CNOT (● / ⊕), CZ (● / ●) and SWAP (× / ×).
[[nodiscard]] CircuitDiagram draw(const GateSpec& gate, const GateParams& params);

/// gate_matrix(gate, params) · state_vector(initial), formatted.
/// Throws ArityMismatch when the gate and the state differ in qubit count.
[[nodiscard]] ApplyResult apply(const GateSpec& gate, const GateParams& params, StateLabel initial);

} // namespace c4q::engine
