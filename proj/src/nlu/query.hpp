#pragma once

#include "engine/states.hpp"
#include "engine/types.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace c4q::nlu {

enum class Category { DEFINE, DRAW, APPLY };

/// Also the tie-break order of the classifier.
inline constexpr std::array<Category, 3> kCategories{Category::DEFINE, Category::DRAW, Category::APPLY};

[[nodiscard]] std::string_view category_name(Category c) noexcept;
[[nodiscard]] std::optional<Category> category_from_name(std::string_view name) noexcept;

inline constexpr std::string_view kSlotInitialState = "initial_state";
inline constexpr std::string_view kSlotPhase = "phase";
inline constexpr std::string_view kSlotAngle = "angle";

/// Structured interpretation of one question.
struct ParsedQuery {
    Category category = Category::DEFINE;
    std::optional<engine::GateId> gate;
    std::optional<engine::StateLabel> initial_state;
    engine::GateParams params;
    std::set<std::string, std::less<>> defaulted;  ///< subset of {initial_state, phase, angle}
    std::array<double, 3> confidence{};            ///< posterior per category, kCategories order

    [[nodiscard]] bool is_defaulted(std::string_view slot) const { return defaulted.contains(slot); }
};

[[nodiscard]] nlohmann::json to_json(const ParsedQuery& q);
/// Throws InvalidArgument on unknown names.
[[nodiscard]] ParsedQuery parsed_query_from_json(const nlohmann::json& j);

} // namespace c4q::nlu
