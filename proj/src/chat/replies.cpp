#include "chat/replies.hpp"

#include "engine/engine.hpp"
#include "nlu/interpret.hpp"

#include <array>
#include <cctype>

namespace c4q::chat {

namespace {

constexpr std::array<std::string_view, 4> kAffirmative{"yes", "y", "correct", "right"};
constexpr std::array<std::string_view, 3> kNegative{"no", "n", "wrong"};

std::string supported_gates() {
    std::string out;
    for (const auto& g : engine::all_gates()) {
        if (!out.empty()) out += ", ";
        out += g.display_name;
    }
    return out;
}

std::string join_details(const Error& e) {
    std::string out;
    for (const auto& d : e.details()) {
        if (!out.empty()) out += ", ";
        out += d;
    }
    return out;
}

} // namespace

Reply classify_reply(std::string_view text) noexcept {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty()
           && (std::isspace(static_cast<unsigned char>(text.back())) || text.back() == '.' || text.back() == '!'))
        text.remove_suffix(1);
    std::string word;
    for (char c : text) word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (auto w : kAffirmative)
        if (word == w) return Reply::AFFIRMATIVE;
    for (auto w : kNegative)
        if (word == w) return Reply::NEGATIVE;
    return Reply::OTHER;
}

std::string greeting_text() {
    return "Hello, I am C4Q. I can define a quantum gate, draw it as a circuit, or apply it to a state. "
           "Supported gates: " + supported_gates() + ". Try \"Apply the Pauli Z on |1⟩\".";
}

std::string lacks_information_text() {
    return "Your question lacks information: I could not find a supported gate in it. Supported gates: "
           + supported_gates() + ".";
}

std::string confirmation_text(const nlu::ParsedQuery& q) {
    const auto& spec = engine::gate_spec(*q.gate);
    std::string out;
    switch (q.category) {
    case nlu::Category::DEFINE: out = "define "; break;
    case nlu::Category::DRAW: out = "draw "; break;
    case nlu::Category::APPLY: out = "apply "; break;
    }
    out += spec.display_name;
    if (q.category != nlu::Category::DEFINE) {
        if (spec.param_kind == engine::ParamKind::Phase && q.params.phase) {
            out += " with phase " + engine::format_angle(*q.params.phase);
            if (q.is_defaulted(nlu::kSlotPhase)) out += " (default phase)";
        }
        if (spec.param_kind == engine::ParamKind::Angle && q.params.angle) {
            out += " with angle " + engine::format_angle(*q.params.angle);
            if (q.is_defaulted(nlu::kSlotAngle)) out += " (default angle)";
        }
    }
    if (q.category == nlu::Category::APPLY && q.initial_state) {
        out += " to ";
        out += engine::state_ket(*q.initial_state);
        if (q.is_defaulted(nlu::kSlotInitialState)) out += " (default initial state)";
    }
    return out + " — correct?";
}

std::string answer_text(const nlu::ParsedQuery& q) {
    const auto& spec = engine::gate_spec(*q.gate);
    switch (q.category) {
    case nlu::Category::DEFINE: return std::string(engine::define(spec));
    case nlu::Category::DRAW: return engine::draw(spec, q.params).text;
    case nlu::Category::APPLY: break;
    }
    const auto initial = q.initial_state.value_or(nlu::default_state(spec.arity));
    const auto result = engine::apply(spec, q.params, initial);
    const std::string name =
        spec.param_kind == engine::ParamKind::None ? std::string(spec.display_name) : engine::gate_label(spec, q.params);
    std::string out = name + " applied to " + std::string(engine::state_ket(initial)) + " gives " + result.ket_text;
    if (const auto named = engine::identify_state(result.state); named && engine::state_ket(*named) != result.ket_text)
        out += " = " + std::string(engine::state_ket(*named));
    return out;
}

std::string reask_text() { return "Sorry, I misunderstood. Please rephrase your question."; }

std::string prompt_text() { return "Please answer yes or no."; }

std::string clarify_text(const Error& error) {
    switch (error.code()) {
    case ErrorCode::EmptyInput: return "Please type a question.";
    case ErrorCode::AmbiguousGate:
        return "Your question mentions more than one gate (" + join_details(error) + "). Please ask about one gate.";
    case ErrorCode::AmbiguousState:
        return "Your question mentions more than one state (" + join_details(error)
               + "). Please name one initial state.";
    case ErrorCode::AmbiguousAxis:
        return "Your question mentions more than one rotation axis (" + join_details(error)
               + "). Please name one axis.";
    case ErrorCode::AngleParse:
        return "I could not read the angle \"" + join_details(error)
               + "\". Write it like pi/4, 0.5 rad or 90 degrees.";
    case ErrorCode::ArityMismatch:
        return "That state does not fit the gate: " + std::string(error.what()) + ".";
    default: return std::string("I could not interpret that: ") + error.what();
    }
}

} // namespace c4q::chat
