#include "engine/states.hpp"

#include <cmath>

namespace c4q::engine {

namespace {

constexpr std::array<StateLabel, kStateCount> kStates{
    StateLabel::ZERO, StateLabel::ONE, StateLabel::PLUS, StateLabel::MINUS,
    StateLabel::R, StateLabel::L, StateLabel::ZZ, StateLabel::ZO,
    StateLabel::OZ, StateLabel::OO, StateLabel::PHI_PLUS, StateLabel::PHI_MINUS,
    StateLabel::PSI_PLUS, StateLabel::PSI_MINUS,
};

struct StateInfo {
    std::string_view key;
    std::string_view ket;
};

constexpr std::array<StateInfo, kStateCount> kInfo{{
    {"ZERO", "|0⟩"}, {"ONE", "|1⟩"}, {"PLUS", "|+⟩"}, {"MINUS", "|−⟩"},
    {"R", "|r⟩"}, {"L", "|l⟩"}, {"ZZ", "|00⟩"}, {"ZO", "|01⟩"},
    {"OZ", "|10⟩"}, {"OO", "|11⟩"}, {"PHI_PLUS", "|φ⁺⟩"}, {"PHI_MINUS", "|φ⁻⟩"},
    {"PSI_PLUS", "|ψ⁺⟩"}, {"PSI_MINUS", "|ψ⁻⟩"},
}};

} // namespace

std::span<const StateLabel> all_states() noexcept { return kStates; }

int state_qubits(StateLabel label) noexcept {
    return static_cast<int>(label) >= static_cast<int>(StateLabel::ZZ) ? 2 : 1;
}

std::string_view state_key(StateLabel label) noexcept { return kInfo[static_cast<std::size_t>(label)].key; }

std::optional<StateLabel> state_from_key(std::string_view key) noexcept {
    for (std::size_t i = 0; i < kStateCount; ++i)
        if (kInfo[i].key == key) return kStates[i];
    return std::nullopt;
}

std::string_view state_ket(StateLabel label) noexcept { return kInfo[static_cast<std::size_t>(label)].ket; }

double StateVector::norm() const noexcept {
    double sum = 0.0;
    for (const auto& a : amplitudes) sum += std::norm(a);
    return std::sqrt(sum);
}

StateVector state_vector(StateLabel label) {
    const double h = 1.0 / std::sqrt(2.0);
    const Amplitude i{0.0, 1.0};
    switch (label) {
    case StateLabel::ZERO: return {{1.0, 0.0}};
    case StateLabel::ONE: return {{0.0, 1.0}};
    case StateLabel::PLUS: return {{h, h}};
    case StateLabel::MINUS: return {{h, -h}};
    case StateLabel::R: return {{h, i * h}};
    case StateLabel::L: return {{h, -i * h}};
    case StateLabel::ZZ: return {{1.0, 0.0, 0.0, 0.0}};
    case StateLabel::ZO: return {{0.0, 1.0, 0.0, 0.0}};
    case StateLabel::OZ: return {{0.0, 0.0, 1.0, 0.0}};
    case StateLabel::OO: return {{0.0, 0.0, 0.0, 1.0}};
    case StateLabel::PHI_PLUS: return {{h, 0.0, 0.0, h}};
    case StateLabel::PHI_MINUS: return {{h, 0.0, 0.0, -h}};
    case StateLabel::PSI_PLUS: return {{0.0, h, h, 0.0}};
    case StateLabel::PSI_MINUS: return {{0.0, h, -h, 0.0}};
    }
    return {{1.0, 0.0}};
}

std::optional<StateLabel> identify_state(const StateVector& v, double tol) noexcept {
    for (auto label : kStates) {
        const StateVector named = state_vector(label);
        if (named.amplitudes.size() != v.amplitudes.size()) continue;
        bool same = true;
        for (std::size_t k = 0; k < named.amplitudes.size() && same; ++k)
            same = std::abs(named.amplitudes[k] - v.amplitudes[k]) <= tol;
        if (same) return label;
    }
    return std::nullopt;
}

} // namespace c4q::engine
