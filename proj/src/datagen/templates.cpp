#include "datagen/templates.hpp"

#include "common/error.hpp"

#include "json.hpp"

#include <array>
#include <map>

namespace c4q::datagen {

// Generated from data/templates.json at configure time.
extern const char* const kEmbeddedTemplateJson;

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::TemplateValidation, why); }

bool known_placeholder(std::string_view name) {
    return name == kGatePlaceholder || name == kStatePlaceholder || name == kAnglePlaceholder
           || name == kAxisPlaceholder || name == kPhasePlaceholder;
}

} // namespace

Template parse_template(std::string_view pattern, nlu::Category category) {
    Template t{std::string(pattern), category, {}};
    std::size_t pos = 0;
    while ((pos = pattern.find('{', pos)) != std::string_view::npos) {
        const std::size_t close = pattern.find('}', pos);
        if (close == std::string_view::npos) invalid("unterminated placeholder in \"" + t.pattern + "\"");
        const std::string name(pattern.substr(pos + 1, close - pos - 1));
        if (!known_placeholder(name)) invalid("unknown placeholder {" + name + "} in \"" + t.pattern + "\"");
        if (!t.slots.insert(name).second) invalid("placeholder {" + name + "} repeated in \"" + t.pattern + "\"");
        pos = close + 1;
    }
    const bool gate = t.has(kGatePlaceholder);
    const bool axis = t.has(kAxisPlaceholder);
    if (!gate && !axis) invalid("\"" + t.pattern + "\" names no gate: needs {quantum_gate} or {axis}");
    if (gate && axis) invalid("\"" + t.pattern + "\" combines {quantum_gate} with {axis}");
    if (t.has(kPhasePlaceholder) && (!gate || t.has(kAnglePlaceholder)))
        invalid("\"" + t.pattern + "\": {phase} needs {quantum_gate} and excludes {angle}");
    if (category == nlu::Category::DEFINE && t.slots.size() != 1)
        invalid("definition template \"" + t.pattern + "\" may only use {quantum_gate}");
    return t;
}

TemplateBank load_template_bank(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        invalid(std::string("template bank is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("version") || !doc["version"].is_number_integer())
        throw Error(ErrorCode::VersionMismatch, "template bank has no format version");
    if (doc["version"].get<int>() != TemplateBank::kFormatVersion)
        throw Error(ErrorCode::VersionMismatch,
                    "template bank version " + std::to_string(doc["version"].get<int>()) + " is not supported");
    if (!doc.contains("templates") || !doc["templates"].is_array()) invalid("template bank has no template list");

    TemplateBank bank;
    std::map<nlu::Category, std::size_t> per_category;
    for (const auto& entry : doc["templates"]) {
        if (!entry.is_object() || !entry.contains("pattern") || !entry.contains("category")
            || !entry["pattern"].is_string() || !entry["category"].is_string())
            invalid("template entries need a pattern and a category");
        const auto category = nlu::category_from_name(entry["category"].get<std::string>());
        if (!category) invalid("unknown template category " + entry["category"].get<std::string>());
        bank.templates.push_back(parse_template(entry["pattern"].get<std::string>(), *category));
        ++per_category[*category];
    }
    for (auto c : nlu::kCategories) {
        if (per_category[c] < TemplateBank::kMinPerCategory)
            invalid("category " + std::string(nlu::category_name(c)) + " has only "
                    + std::to_string(per_category[c]) + " templates");
    }
    return bank;
}

std::string_view builtin_template_json() noexcept { return kEmbeddedTemplateJson; }

const TemplateBank& builtin_template_bank() {
    static const TemplateBank bank = load_template_bank(kEmbeddedTemplateJson);
    return bank;
}

} // namespace c4q::datagen
