#include "nlu/query.hpp"

#include "common/error.hpp"
#include "engine/gates.hpp"

namespace c4q::nlu {

using nlohmann::json;

std::string_view category_name(Category c) noexcept {
    switch (c) {
    case Category::DEFINE: return "DEFINE";
    case Category::DRAW: return "DRAW";
    case Category::APPLY: return "APPLY";
    }
    return "DEFINE";
}

std::optional<Category> category_from_name(std::string_view name) noexcept {
    for (auto c : kCategories)
        if (category_name(c) == name) return c;
    return std::nullopt;
}

json to_json(const ParsedQuery& q) {
    json j;
    j["category"] = category_name(q.category);
    j["gate"] = q.gate ? json(engine::gate_spec(*q.gate).key) : json(nullptr);
    j["initial_state"] = q.initial_state ? json(engine::state_key(*q.initial_state)) : json(nullptr);
    json params = json::object();
    if (q.params.phase) params["phase"] = *q.params.phase;
    if (q.params.angle) params["angle"] = *q.params.angle;
    if (q.params.axis) params["axis"] = engine::axis_name(*q.params.axis);
    j["params"] = std::move(params);
    j["defaulted"] = json(std::vector<std::string>(q.defaulted.begin(), q.defaulted.end()));
    json confidence = json::object();
    for (std::size_t i = 0; i < kCategories.size(); ++i) confidence[category_name(kCategories[i])] = q.confidence[i];
    j["confidence"] = std::move(confidence);
    return j;
}

ParsedQuery parsed_query_from_json(const json& j) {
    ParsedQuery q;
    auto category = category_from_name(j.at("category").get<std::string>());
    if (!category) throw Error(ErrorCode::InvalidArgument, "unknown category");
    q.category = *category;
    if (j.contains("gate") && !j["gate"].is_null()) {
        q.gate = engine::gate_from_key(j["gate"].get<std::string>());
        if (!q.gate) throw Error(ErrorCode::InvalidArgument, "unknown gate");
    }
    if (j.contains("initial_state") && !j["initial_state"].is_null()) {
        q.initial_state = engine::state_from_key(j["initial_state"].get<std::string>());
        if (!q.initial_state) throw Error(ErrorCode::InvalidArgument, "unknown state");
    }
    if (j.contains("params")) {
        const json& p = j["params"];
        if (p.contains("phase")) q.params.phase = p["phase"].get<double>();
        if (p.contains("angle")) q.params.angle = p["angle"].get<double>();
        if (p.contains("axis")) {
            q.params.axis = engine::axis_from_name(p["axis"].get<std::string>());
            if (!q.params.axis) throw Error(ErrorCode::InvalidArgument, "unknown axis");
        }
    }
    if (j.contains("defaulted"))
        for (const auto& s : j["defaulted"]) q.defaulted.insert(s.get<std::string>());
    if (j.contains("confidence"))
        for (std::size_t i = 0; i < kCategories.size(); ++i)
            q.confidence[i] = j["confidence"].value(std::string(category_name(kCategories[i])), 0.0);
    return q;
}

} // namespace c4q::nlu
