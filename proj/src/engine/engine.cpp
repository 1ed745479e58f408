#include "engine/engine.hpp"

#include "common/error.hpp"
#include "common/utf8.hpp"

#include <array>
#include <cmath>

namespace c4q::engine {

namespace {

std::string repeat(std::string_view unit, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += unit;
    return out;
}

} // namespace

std::string_view define(const GateSpec& gate) noexcept { return gate.definition_text; }

std::string gate_label(const GateSpec& gate, const GateParams& params) {
    std::string label(gate.label);
    switch (gate.param_kind) {
    case ParamKind::Phase:
        if (!params.phase) throw Error(ErrorCode::ParameterMissing, "the phase gate needs a phase shift", {"phase"});
        label += "(" + format_angle(*params.phase) + ")";
        break;
    case ParamKind::Angle:
        if (!params.angle)
            throw Error(ErrorCode::ParameterMissing, "gate " + std::string(gate.key) + " needs a rotation angle",
                        {"angle"});
        label += "(" + format_angle(*params.angle) + ")";
        break;
    case ParamKind::None: break;
    }
    return label;
}

CircuitDiagram draw(const GateSpec& gate, const GateParams& params) {
    // Validates the parameters the same way apply does.
    (void)gate_matrix(gate, params);

    if (gate.arity == 1) {
        std::string line = "q0: ──[ " + gate_label(gate, params) + " ]──";
        const std::size_t width = utf8_length(line);
        return {std::move(line), width, 1};
    }

    std::string_view top = "●";
    std::string_view bottom = "⊕";
    if (gate.id == GateId::CZ) bottom = "●";
    if (gate.id == GateId::SWAP) top = bottom = "×";

    const std::string pad = repeat("─", 3);
    std::string q0 = "q0: " + pad + std::string(top) + pad;
    std::string mid = repeat(" ", 4 + 3) + "│" + repeat(" ", 3);
    std::string q1 = "q1: " + pad + std::string(bottom) + pad;
    const std::size_t width = utf8_length(q0);
    return {q0 + "\n" + mid + "\n" + q1, width, 3};
}

ApplyResult apply(const GateSpec& gate, const GateParams& params, StateLabel initial) {
    if (gate.arity != state_qubits(initial)) {
        throw Error(ErrorCode::ArityMismatch,
                    "gate " + std::string(gate.key) + " acts on " + std::to_string(gate.arity)
                        + " qubit(s) but the state " + std::string(state_ket(initial)) + " has "
                        + std::to_string(state_qubits(initial)),
                    {std::to_string(gate.arity), std::to_string(state_qubits(initial))});
    }
    const UnitaryMatrix u = gate_matrix(gate, params);
    const StateVector in = state_vector(initial);
    StateVector out;
    out.amplitudes.assign(u.dim(), Amplitude{0.0, 0.0});
    for (std::size_t r = 0; r < u.dim(); ++r)
        for (std::size_t c = 0; c < u.dim(); ++c) out.amplitudes[r] += u(r, c) * in.amplitudes[c];
    for (auto& a : out.amplitudes) {
        // Scrub signed zeros and 1e-17 residue so identical inputs format identically.
        if (std::abs(a.real()) < 1e-15) a.real(0.0);
        if (std::abs(a.imag()) < 1e-15) a.imag(0.0);
    }
    std::string text = format_state(out, gate.param_kind == ParamKind::Phase ? params.phase : std::nullopt);
    return {std::move(out), std::move(text)};
}

} // namespace c4q::engine
