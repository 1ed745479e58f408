#pragma once

#include "datagen/templates.hpp"
#include "engine/states.hpp"
#include "engine/types.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace c4q::datagen {

/// Ground truth recorded while instantiating a template. Absent fields were
/// not substituted.
struct Truth {
    std::optional<engine::GateId> gate;
    std::optional<engine::StateLabel> state;
    std::optional<double> phase;
    std::optional<double> angle;
    std::optional<engine::Axis> axis;

    friend bool operator==(const Truth&, const Truth&) = default;
};

struct LabeledExample {
    std::string text;
    nlu::Category category;
    Truth truth;

    friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

/// Values substituted into one template. Surfaces are the literal text
/// written in place of the placeholder.
struct Fill {
    std::optional<engine::GateId> gate;
    std::string gate_surface;
    std::optional<engine::StateLabel> state;
    std::string state_surface;
    std::optional<double> value;  ///< phase or angle, whichever the template takes
    std::string value_surface;
    std::optional<engine::Axis> axis;
    std::string axis_surface;
};

/// Substitutes the fill and lowercases ASCII letters. The truth is built from
/// the fill, never by re-parsing the text. A rotation template ({axis})
/// labels its gate RX/RY/RZ from the axis.
[[nodiscard]] LabeledExample instantiate(const Template& t, const Fill& fill);

struct AngleValue {
    double radians;
    std::vector<std::string> surfaces;
};

/// pi, pi/2, pi/3, pi/4, 3pi/4, 1.0 rad, 0.5 rad, 90 degrees; each with
/// several spellings.
[[nodiscard]] const std::vector<AngleValue>& angle_bank();
[[nodiscard]] const std::vector<std::string>& gate_surfaces(engine::GateId id);
[[nodiscard]] const std::vector<std::string>& state_surfaces(engine::StateLabel label);

/// Every template against every applicable gate; parameterized templates
/// against the whole angle bank and every compatible state. Templates that
/// only take a gate run through all of its spellings; otherwise spellings are
/// drawn from the seeded generator.
[[nodiscard]] std::vector<LabeledExample> generate_classification_corpus(const TemplateBank& bank,
                                                                        std::uint64_t seed);

/// Phase-gate and rotation questions (DRAW and APPLY templates restricted to
/// P, RX, RY, RZ), over every spelling of every bank angle and every state.
[[nodiscard]] std::vector<LabeledExample> generate_qa_corpus(const TemplateBank& bank, std::uint64_t seed);

// Corpus files are JSON lines: a header {"c4q_corpus": 1, "kind", "seed"}
// followed by one {text, category, truth} object per line.
inline constexpr int kCorpusFormatVersion = 1;
inline constexpr std::string_view kClassificationKind = "classification";
inline constexpr std::string_view kQaKind = "qa";

struct CorpusFile {
    std::string kind;
    std::uint64_t seed = 0;
    std::vector<LabeledExample> examples;
};

[[nodiscard]] nlohmann::json to_json(const LabeledExample& e);
[[nodiscard]] LabeledExample example_from_json(const nlohmann::json& j);

[[nodiscard]] std::string serialize_corpus(const CorpusFile& corpus);
/// Throws Io when unreadable, VersionMismatch for a foreign header,
/// InvalidArgument for malformed records.
[[nodiscard]] CorpusFile read_corpus(const std::filesystem::path& path);
void write_corpus(const std::filesystem::path& path, const CorpusFile& corpus);

} // namespace c4q::datagen
