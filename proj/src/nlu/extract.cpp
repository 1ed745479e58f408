#include "nlu/extract.hpp"

#include "common/error.hpp"
#include "engine/gates.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

namespace c4q::nlu {

namespace {

using namespace std::string_view_literals;
using engine::Axis;
using engine::GateId;
using engine::StateLabel;
using Tokens = std::vector<std::string>;

constexpr std::size_t kMaxAliasTokens = 3;

constexpr std::array kAxisPrepositions{"about"sv, "around"sv, "along"sv, "over"sv};
constexpr std::array kRotationWords{"rotate"sv, "rotation"sv, "rotations"sv, "rotating"sv, "rotated"sv};
constexpr std::array kPhaseKeywords{"phase"sv, "shift"sv, "of"sv, "by"sv, "with"sv, "angle"sv,
                                    "equal"sv, "equals"sv, "is"sv, "p"sv};
constexpr std::array kRotationKeywords{"by"sv, "angle"sv, "of"sv, "through"sv, "theta"sv, "with"sv,
                                       "rotate"sv, "rotation"sv, "rotated"sv, "equal"sv, "equals"sv,
                                       "is"sv, "rx"sv, "ry"sv, "rz"sv};

template <std::size_t N>
bool one_of(std::string_view token, const std::array<std::string_view, N>& words) {
    return std::find(words.begin(), words.end(), token) != words.end();
}

std::string join(const Tokens& tokens, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin) out += ' ';
        out += tokens[i];
    }
    return out;
}

// x/y/z tokens that name a rotation axis rather than a Pauli gate:
// "x axis", "axis x", and in rotation sentences "about x", "around the y".
// "tell me about the x gate" keeps its x.
std::vector<std::pair<std::size_t, Axis>> axis_mentions(const Tokens& t) {
    const bool rotation_context = std::any_of(t.begin(), t.end(), [](const std::string& w) {
        return w == "axis" || one_of(w, kRotationWords);
    });
    std::vector<std::pair<std::size_t, Axis>> out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto axis = engine::axis_from_name(t[i]);
        if (!axis) continue;
        const bool next_axis = i + 1 < t.size() && t[i + 1] == "axis";
        const bool prev_axis = i > 0 && t[i - 1] == "axis";
        const bool prep = i > 0 && one_of(t[i - 1], kAxisPrepositions);
        const bool prep_the = i > 1 && t[i - 1] == "the" && one_of(t[i - 2], kAxisPrepositions);
        if (next_axis || prev_axis || (rotation_context && (prep || prep_the))) out.emplace_back(i, *axis);
    }
    return out;
}

struct GateMention {
    std::optional<GateId> gate;  // nullopt for a generic rotation word
    std::size_t begin;
    std::size_t end;
};

const engine::GateSpec* alias_match(std::string_view surface) {
    for (const auto& g : engine::all_gates())
        for (auto alias : g.aliases)
            if (alias == surface) return &g;
    return nullptr;
}

std::vector<GateMention> gate_mentions(const Tokens& t) {
    std::vector<bool> masked(t.size(), false);
    for (const auto& [i, axis] : axis_mentions(t)) masked[i] = true;

    std::vector<GateMention> out;
    std::size_t i = 0;
    while (i < t.size()) {
        bool matched = false;
        for (std::size_t n = std::min(kMaxAliasTokens, t.size() - i); n >= 1 && !matched; --n) {
            if (std::any_of(masked.begin() + static_cast<std::ptrdiff_t>(i),
                            masked.begin() + static_cast<std::ptrdiff_t>(i + n), [](bool m) { return m; }))
                continue;
            if (const auto* g = alias_match(join(t, i, i + n))) {
                out.push_back({g->id, i, i + n});
                i += n;
                matched = true;
            } else if (n == 1 && one_of(t[i], kRotationWords)) {
                out.push_back({std::nullopt, i, i + 1});
                i += 1;
                matched = true;
            }
        }
        if (!matched) ++i;
    }
    return out;
}

std::optional<Axis> unique_axis(const Tokens& t, std::optional<Axis> implied) {
    std::optional<Axis> axis = implied;
    for (const auto& [i, a] : axis_mentions(t)) {
        if (axis && *axis != a) {
            throw Error(ErrorCode::AmbiguousAxis,
                        "the question mentions both the " + std::string(engine::axis_name(*axis)) + " and the "
                            + std::string(engine::axis_name(a)) + " axis",
                        {std::string(engine::axis_name(*axis)), std::string(engine::axis_name(a))});
        }
        axis = a;
    }
    return axis;
}

// Picks the angle for a slot: keyword-adjacent first, then any angle that
// names pi or a unit. Bare numbers far from a keyword are ignored.
template <std::size_t N>
std::optional<Angle> pick_angle(const Tokens& t, const std::array<std::string_view, N>& keywords) {
    const auto spans = find_angles(t);
    auto adjacent = [&](const AngleSpan& s) {
        for (std::size_t back = 1; back <= 2 && back <= s.begin; ++back)
            if (one_of(t[s.begin - back], keywords)) return true;
        return false;
    };
    for (const auto& s : spans)
        if (adjacent(s)) return s.angle;
    for (const auto& s : spans)
        if (s.strong) return s.angle;
    return std::nullopt;
}

struct StatePattern {
    std::array<std::string_view, 2> words;
    StateLabel label;
};

// Single-token patterns leave the second word empty.
constexpr std::array<StatePattern, 44> kStatePatterns{{
    {{"ket_0", ""}, StateLabel::ZERO},          {{"ket_zero", ""}, StateLabel::ZERO},
    {{"ket_1", ""}, StateLabel::ONE},           {{"ket_one", ""}, StateLabel::ONE},
    {{"ket_plus", ""}, StateLabel::PLUS},       {{"ket_+", ""}, StateLabel::PLUS},
    {{"ket_minus", ""}, StateLabel::MINUS},     {{"ket_-", ""}, StateLabel::MINUS},
    {{"ket_r", ""}, StateLabel::R},             {{"ket_l", ""}, StateLabel::L},
    {{"ket_00", ""}, StateLabel::ZZ},           {{"ket_01", ""}, StateLabel::ZO},
    {{"ket_10", ""}, StateLabel::OZ},           {{"ket_11", ""}, StateLabel::OO},
    {{"ket_phi+", ""}, StateLabel::PHI_PLUS},   {{"ket_phiplus", ""}, StateLabel::PHI_PLUS},
    {{"ket_phi-", ""}, StateLabel::PHI_MINUS},  {{"ket_phiminus", ""}, StateLabel::PHI_MINUS},
    {{"ket_psi+", ""}, StateLabel::PSI_PLUS},   {{"ket_psiplus", ""}, StateLabel::PSI_PLUS},
    {{"ket_psi-", ""}, StateLabel::PSI_MINUS},  {{"ket_psiminus", ""}, StateLabel::PSI_MINUS},
    {{"phi", "plus"}, StateLabel::PHI_PLUS},    {{"phi", "minus"}, StateLabel::PHI_MINUS},
    {{"psi", "plus"}, StateLabel::PSI_PLUS},    {{"psi", "minus"}, StateLabel::PSI_MINUS},
    {{"zero", "state"}, StateLabel::ZERO},      {{"0", "state"}, StateLabel::ZERO},
    {{"one", "state"}, StateLabel::ONE},        {{"1", "state"}, StateLabel::ONE},
    {{"plus", "state"}, StateLabel::PLUS},      {{"minus", "state"}, StateLabel::MINUS},
    {{"r", "state"}, StateLabel::R},            {{"l", "state"}, StateLabel::L},
    {{"right", "state"}, StateLabel::R},        {{"left", "state"}, StateLabel::L},
    {{"00", "state"}, StateLabel::ZZ},          {{"01", "state"}, StateLabel::ZO},
    {{"10", "state"}, StateLabel::OZ},          {{"11", "state"}, StateLabel::OO},
    {{"phiplus", ""}, StateLabel::PHI_PLUS},    {{"phiminus", ""}, StateLabel::PHI_MINUS},
    {{"psiplus", ""}, StateLabel::PSI_PLUS},    {{"psiminus", ""}, StateLabel::PSI_MINUS},
}};

} // namespace

std::optional<GateId> extract_gate(const NormalizedText& text) {
    const auto mentions = gate_mentions(text.tokens);
    std::optional<GateId> specific;
    bool generic_rotation = false;
    for (const auto& m : mentions) {
        if (!m.gate) {
            generic_rotation = true;
            continue;
        }
        if (specific && *specific != *m.gate) {
            const auto& a = engine::gate_spec(*specific);
            const auto& b = engine::gate_spec(*m.gate);
            throw Error(ErrorCode::AmbiguousGate,
                        "the question mentions two gates: " + std::string(a.display_name) + " and "
                            + std::string(b.display_name),
                        {std::string(a.key), std::string(b.key)});
        }
        specific = m.gate;
    }
    if (specific) return specific;
    if (!generic_rotation) return std::nullopt;
    if (auto axis = unique_axis(text.tokens, std::nullopt)) return engine::rotation_gate(*axis);
    return std::nullopt;
}

std::optional<StateLabel> extract_state(const NormalizedText& text) {
    const Tokens& t = text.tokens;
    std::optional<StateLabel> found;
    std::size_t i = 0;
    while (i < t.size()) {
        std::optional<StateLabel> hit;
        std::size_t width = 0;
        for (const auto& p : kStatePatterns) {
            const bool two = !p.words[1].empty();
            if (two && i + 1 < t.size() && t[i] == p.words[0] && t[i + 1] == p.words[1] && width < 2) {
                hit = p.label;
                width = 2;
            } else if (!two && t[i] == p.words[0] && width < 1) {
                hit = p.label;
                width = 1;
            }
        }
        if (!hit) {
            ++i;
            continue;
        }
        if (found && *found != *hit) {
            throw Error(ErrorCode::AmbiguousState,
                        "the question mentions two states: " + std::string(engine::state_ket(*found)) + " and "
                            + std::string(engine::state_ket(*hit)),
                        {std::string(engine::state_key(*found)), std::string(engine::state_key(*hit))});
        }
        found = hit;
        i += width;
    }
    return found;
}

std::optional<Angle> extract_phase(const NormalizedText& text) { return pick_angle(text.tokens, kPhaseKeywords); }

std::optional<Rotation> extract_rotation(const NormalizedText& text) {
    std::optional<Axis> implied;
    for (const auto& m : gate_mentions(text.tokens)) {
        if (!m.gate) continue;
        if (auto a = engine::rotation_axis(*m.gate)) {
            if (implied && *implied != *a) {
                throw Error(ErrorCode::AmbiguousAxis,
                            "the question names rotations about two axes",
                            {std::string(engine::axis_name(*implied)), std::string(engine::axis_name(*a))});
            }
            implied = a;
        }
    }
    Rotation r;
    r.axis = unique_axis(text.tokens, implied);
    r.angle = pick_angle(text.tokens, kRotationKeywords);
    if (!r.axis && !r.angle) return std::nullopt;
    return r;
}

} // namespace c4q::nlu
