#include "datagen/corpus.hpp"

#include "common/error.hpp"
#include "common/rng.hpp"
#include "engine/gates.hpp"

#include <array>
#include <fstream>
#include <numbers>
#include <sstream>

namespace c4q::datagen {

using engine::Axis;
using engine::GateId;
using engine::StateLabel;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string replace_placeholder(std::string text, std::string_view name, std::string_view value) {
    const std::string needle = "{" + std::string(name) + "}";
    const std::size_t at = text.find(needle);
    if (at != std::string::npos) text.replace(at, needle.size(), value);
    return text;
}

std::string ascii_lower(std::string s) {
    for (auto& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

struct Target {
    GateId gate;
    std::optional<Axis> axis;
};

std::vector<Target> targets_for(const Template& t, bool qa_only) {
    std::vector<Target> out;
    if (t.has(kAxisPlaceholder)) {
        for (Axis a : {Axis::X, Axis::Y, Axis::Z}) out.push_back({engine::rotation_gate(a), a});
        return out;
    }
    for (const auto& g : engine::all_gates()) {
        if (t.has(kPhasePlaceholder) && g.param_kind != engine::ParamKind::Phase) continue;
        if (t.has(kAnglePlaceholder) && g.param_kind != engine::ParamKind::Angle) continue;
        if (qa_only && g.param_kind == engine::ParamKind::None) continue;
        out.push_back({g.id, std::nullopt});
    }
    return out;
}

std::vector<std::optional<StateLabel>> states_for(const Template& t, GateId gate) {
    if (!t.has(kStatePlaceholder)) return {std::nullopt};
    std::vector<std::optional<StateLabel>> out;
    for (auto s : engine::all_states())
        if (engine::state_qubits(s) == engine::gate_spec(gate).arity) out.emplace_back(s);
    return out;
}

bool takes_value(const Template& t) { return t.has(kPhasePlaceholder) || t.has(kAnglePlaceholder); }

std::string axis_surface(Axis a, SeededRng& rng) {
    const std::string upper(engine::axis_name(a));
    const std::array<std::string, 2> spellings{upper, ascii_lower(upper)};
    return rng.pick(std::span<const std::string>(spellings));
}

} // namespace

LabeledExample instantiate(const Template& t, const Fill& fill) {
    std::string text = t.pattern;
    Truth truth;
    if (t.has(kGatePlaceholder)) {
        text = replace_placeholder(text, kGatePlaceholder, fill.gate_surface);
        truth.gate = fill.gate;
    }
    if (t.has(kAxisPlaceholder)) {
        text = replace_placeholder(text, kAxisPlaceholder, fill.axis_surface);
        truth.axis = fill.axis;
        if (fill.axis) truth.gate = engine::rotation_gate(*fill.axis);
    }
    if (t.has(kStatePlaceholder)) {
        text = replace_placeholder(text, kStatePlaceholder, fill.state_surface);
        truth.state = fill.state;
    }
    if (t.has(kPhasePlaceholder)) {
        text = replace_placeholder(text, kPhasePlaceholder, fill.value_surface);
        truth.phase = fill.value;
    }
    if (t.has(kAnglePlaceholder)) {
        text = replace_placeholder(text, kAnglePlaceholder, fill.value_surface);
        truth.angle = fill.value;
    }
    return LabeledExample{ascii_lower(std::move(text)), t.category, truth};
}

const std::vector<AngleValue>& angle_bank() {
    static const std::vector<AngleValue> bank{
        {kPi, {"pi", "π"}},
        {kPi / 2, {"pi/2", "π/2"}},
        {kPi / 3, {"pi/3", "π/3"}},
        {kPi / 4, {"pi/4", "π/4"}},
        {3 * kPi / 4, {"3pi/4", "3*pi/4", "3π/4"}},
        {1.0, {"1.0 radians", "1 rad"}},
        {0.5, {"0.5 radians", "0.5 rad", "0.5"}},
        {90.0 * kPi / 180.0, {"90 degrees", "90°", "90 deg"}},
    };
    return bank;
}

const std::vector<std::string>& gate_surfaces(GateId id) {
    static const std::array<std::vector<std::string>, engine::kGateCount> surfaces{{
        {"identity", "Identity"},
        {"Pauli X", "X", "Pauli-X", "sigma X", "bit flip"},
        {"Pauli Y", "Y", "Pauli-Y", "sigma Y"},
        {"Pauli Z", "Z", "Pauli-Z", "sigma Z"},
        {"S"},
        {"S†", "S dagger", "Sdg", "S-dagger"},
        {"Hadamard", "H"},
        {"phase", "P", "phase shift"},
        {"RX", "Rx", "X rotation", "R_x"},
        {"RY", "Ry", "Y rotation", "R_y"},
        {"RZ", "Rz", "Z rotation", "R_z"},
        {"CNOT", "CX", "controlled NOT", "controlled-X"},
        {"CZ", "controlled Z", "controlled-Z"},
        {"SWAP", "swap"},
    }};
    return surfaces[static_cast<std::size_t>(id)];
}

const std::vector<std::string>& state_surfaces(StateLabel label) {
    static const std::array<std::vector<std::string>, engine::kStateCount> surfaces{{
        {"|0⟩", "|0>", "the zero state", "$\\ket{0}$"},
        {"|1⟩", "|1>", "the one state", "$\\ket{1}$"},
        {"|+⟩", "|+>", "the plus state"},
        {"|−⟩", "|->", "the minus state"},
        {"|r⟩", "|r>"},
        {"|l⟩", "|l>"},
        {"|00⟩", "|00>"},
        {"|01⟩", "|01>"},
        {"|10⟩", "|10>"},
        {"|11⟩", "|11>"},
        {"|φ⁺⟩", "|phi+>", "the Bell state phi plus"},
        {"|φ⁻⟩", "|phi->", "the Bell state phi minus"},
        {"|ψ⁺⟩", "|psi+>", "the Bell state psi plus"},
        {"|ψ⁻⟩", "|psi->", "the Bell state psi minus"},
    }};
    return surfaces[static_cast<std::size_t>(label)];
}

std::vector<LabeledExample> generate_classification_corpus(const TemplateBank& bank, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<LabeledExample> out;
    for (const auto& t : bank.templates) {
        const bool gate_only = t.slots.size() == 1 && t.has(kGatePlaceholder);
        for (const auto& target : targets_for(t, false)) {
            const auto& spellings = gate_surfaces(target.gate);
            if (gate_only) {
                for (const auto& surface : spellings) {
                    Fill fill;
                    fill.gate = target.gate;
                    fill.gate_surface = surface;
                    out.push_back(instantiate(t, fill));
                }
                continue;
            }
            const std::size_t value_count = takes_value(t) ? angle_bank().size() : 1;
            for (const auto& state : states_for(t, target.gate)) {
                for (std::size_t v = 0; v < value_count; ++v) {
                    Fill fill;
                    fill.gate = target.gate;
                    fill.gate_surface = rng.pick(std::span<const std::string>(spellings));
                    if (state) {
                        fill.state = state;
                        fill.state_surface = rng.pick(std::span<const std::string>(state_surfaces(*state)));
                    }
                    if (takes_value(t)) {
                        const auto& value = angle_bank()[v];
                        fill.value = value.radians;
                        fill.value_surface = rng.pick(std::span<const std::string>(value.surfaces));
                    }
                    if (target.axis) {
                        fill.axis = target.axis;
                        fill.axis_surface = axis_surface(*target.axis, rng);
                    }
                    out.push_back(instantiate(t, fill));
                }
            }
        }
    }
    return out;
}

std::vector<LabeledExample> generate_qa_corpus(const TemplateBank& bank, std::uint64_t seed) {
    SeededRng rng(seed ^ 0x9E3779B97F4A7C15ULL);
    std::vector<LabeledExample> out;
    for (const auto& t : bank.templates) {
        if (t.category == nlu::Category::DEFINE) continue;
        for (const auto& target : targets_for(t, true)) {
            const auto& spellings = gate_surfaces(target.gate);
            std::vector<std::pair<const AngleValue*, const std::string*>> values;
            if (takes_value(t)) {
                for (const auto& v : angle_bank())
                    for (const auto& s : v.surfaces) values.emplace_back(&v, &s);
            } else {
                values.emplace_back(nullptr, nullptr);
            }
            for (const auto& state : states_for(t, target.gate)) {
                const std::vector<std::string> state_spellings =
                    state ? state_surfaces(*state) : std::vector<std::string>{std::string{}};
                for (const auto& state_surface : state_spellings) {
                    for (const auto& [value, value_surface] : values) {
                        Fill fill;
                        fill.gate = target.gate;
                        fill.gate_surface = rng.pick(std::span<const std::string>(spellings));
                        fill.state = state;
                        fill.state_surface = state_surface;
                        if (value) {
                            fill.value = value->radians;
                            fill.value_surface = *value_surface;
                        }
                        if (target.axis) {
                            fill.axis = target.axis;
                            fill.axis_surface = axis_surface(*target.axis, rng);
                        }
                        out.push_back(instantiate(t, fill));
                    }
                }
            }
        }
    }
    return out;
}

json to_json(const LabeledExample& e) {
    json truth = json::object();
    if (e.truth.gate) truth["gate"] = engine::gate_spec(*e.truth.gate).key;
    if (e.truth.state) truth["state"] = engine::state_key(*e.truth.state);
    if (e.truth.phase) truth["phase"] = *e.truth.phase;
    if (e.truth.angle) truth["angle"] = *e.truth.angle;
    if (e.truth.axis) truth["axis"] = engine::axis_name(*e.truth.axis);
    return json{{"text", e.text}, {"category", nlu::category_name(e.category)}, {"truth", std::move(truth)}};
}

LabeledExample example_from_json(const json& j) {
    try {
        LabeledExample e;
        e.text = j.at("text").get<std::string>();
        const auto category = nlu::category_from_name(j.at("category").get<std::string>());
        if (!category) throw Error(ErrorCode::InvalidArgument, "unknown category in corpus record");
        e.category = *category;
        const json& truth = j.at("truth");
        if (truth.contains("gate")) {
            e.truth.gate = engine::gate_from_key(truth["gate"].get<std::string>());
            if (!e.truth.gate) throw Error(ErrorCode::InvalidArgument, "unknown gate in corpus record");
        }
        if (truth.contains("state")) {
            e.truth.state = engine::state_from_key(truth["state"].get<std::string>());
            if (!e.truth.state) throw Error(ErrorCode::InvalidArgument, "unknown state in corpus record");
        }
        if (truth.contains("phase")) e.truth.phase = truth["phase"].get<double>();
        if (truth.contains("angle")) e.truth.angle = truth["angle"].get<double>();
        if (truth.contains("axis")) {
            e.truth.axis = engine::axis_from_name(truth["axis"].get<std::string>());
            if (!e.truth.axis) throw Error(ErrorCode::InvalidArgument, "unknown axis in corpus record");
        }
        return e;
    } catch (const json::exception& ex) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed corpus record: ") + ex.what());
    }
}

std::string serialize_corpus(const CorpusFile& corpus) {
    std::string out = json{{"c4q_corpus", kCorpusFormatVersion}, {"kind", corpus.kind}, {"seed", corpus.seed}}.dump();
    out += '\n';
    for (const auto& e : corpus.examples) {
        out += to_json(e).dump();
        out += '\n';
    }
    return out;
}

CorpusFile read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open corpus file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::InvalidArgument, "corpus file " + path.string() + " is empty");
    CorpusFile corpus;
    try {
        const json header = json::parse(line);
        if (!header.is_object() || !header.contains("c4q_corpus"))
            throw Error(ErrorCode::VersionMismatch, "corpus file " + path.string() + " has no version header");
        if (header["c4q_corpus"].get<int>() != kCorpusFormatVersion)
            throw Error(ErrorCode::VersionMismatch, "corpus format version is not supported");
        corpus.kind = header.value("kind", std::string{});
        corpus.seed = header.value("seed", std::uint64_t{0});
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed corpus header: ") + e.what());
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            corpus.examples.push_back(example_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::InvalidArgument,
                        "malformed corpus line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return corpus;
}

void write_corpus(const std::filesystem::path& path, const CorpusFile& corpus) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write corpus file " + path.string());
    out << serialize_corpus(corpus);
    if (!out) throw Error(ErrorCode::Io, "failed writing corpus file " + path.string());
}

} // namespace c4q::datagen
