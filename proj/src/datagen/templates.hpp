#pragma once

#include "nlu/query.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace c4q::datagen {

inline constexpr std::string_view kGatePlaceholder = "quantum_gate";
inline constexpr std::string_view kStatePlaceholder = "state";
inline constexpr std::string_view kAnglePlaceholder = "angle";
inline constexpr std::string_view kAxisPlaceholder = "axis";
inline constexpr std::string_view kPhasePlaceholder = "phase";

struct Template {
    std::string pattern;
    nlu::Category category;
    std::set<std::string, std::less<>> slots;  ///< placeholders present in pattern

    [[nodiscard]] bool has(std::string_view slot) const { return slots.contains(slot); }
};

struct TemplateBank {
    static constexpr int kFormatVersion = 1;
    static constexpr std::size_t kMinPerCategory = 20;

    std::vector<Template> templates;
};

/// Parses and validates one pattern. Throws TemplateValidation for unknown or
/// repeated placeholders and for combinations the generator cannot label
/// ({phase} without {quantum_gate}, {axis} together with {quantum_gate}, ...).
[[nodiscard]] Template parse_template(std::string_view pattern, nlu::Category category);

/// Loads `{version, templates: [{pattern, category}]}`. Throws
/// VersionMismatch, TemplateValidation (including fewer than 20 templates
/// for a category).
[[nodiscard]] TemplateBank load_template_bank(std::string_view json_text);

/// The bank compiled in from data/templates.json.
[[nodiscard]] const TemplateBank& builtin_template_bank();
[[nodiscard]] std::string_view builtin_template_json() noexcept;

} // namespace c4q::datagen
