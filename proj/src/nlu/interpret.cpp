#include "nlu/interpret.hpp"

#include "common/error.hpp"
#include "engine/gates.hpp"
#include "nlu/extract.hpp"

namespace c4q::nlu {

engine::StateLabel default_state(int arity) noexcept {
    return arity == 2 ? engine::StateLabel::ZZ : engine::StateLabel::ZERO;
}

ParsedQuery extract_query(const NormalizedText& text, Category category) {
    ParsedQuery q;
    q.category = category;
    q.gate = extract_gate(text);
    if (!q.gate) return q;
    const engine::GateSpec& gate = engine::gate_spec(*q.gate);

    if (category == Category::APPLY) {
        if (auto state = extract_state(text)) {
            if (engine::state_qubits(*state) != gate.arity) {
                throw Error(ErrorCode::ArityMismatch,
                            std::string(gate.display_name) + " acts on " + std::to_string(gate.arity)
                                + (gate.arity == 1 ? " qubit" : " qubits") + " but "
                                + std::string(engine::state_ket(*state)) + " is a "
                                + std::to_string(engine::state_qubits(*state)) + "-qubit state",
                            {std::to_string(gate.arity), std::to_string(engine::state_qubits(*state))});
            }
            q.initial_state = state;
        } else {
            q.initial_state = default_state(gate.arity);
            q.defaulted.emplace(kSlotInitialState);
        }
    }

    if (category == Category::DEFINE) return q;

    if (gate.param_kind == engine::ParamKind::Phase) {
        if (auto phase = extract_phase(text)) {
            q.params.phase = phase->radians;
        } else {
            q.params.phase = kDefaultPhase;
            q.defaulted.emplace(kSlotPhase);
        }
    } else if (gate.param_kind == engine::ParamKind::Angle) {
        const auto rotation = extract_rotation(text);
        q.params.axis = engine::rotation_axis(*q.gate);
        if (rotation && rotation->angle) {
            q.params.angle = rotation->angle->radians;
        } else {
            q.params.angle = kDefaultAngle;
            q.defaulted.emplace(kSlotAngle);
        }
    }
    return q;
}

ParsedQuery interpret(const ClassifierModel& model, std::string_view raw) {
    const NormalizedText text = normalize(raw);
    const Classification c = model.classify(text);
    ParsedQuery q = extract_query(text, c.category);
    q.confidence = c.probabilities;
    return q;
}

} // namespace c4q::nlu
