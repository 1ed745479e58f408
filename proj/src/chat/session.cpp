#include "chat/session.hpp"

#include "common/error.hpp"
#include "engine/gates.hpp"

#include <array>
#include <utility>

namespace c4q::chat {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Sender, std::string_view>, 2> kSenders{{
    {Sender::USER, "USER"},
    {Sender::BOT, "BOT"},
}};

constexpr std::array<std::pair<MessageKind, std::string_view>, 8> kKinds{{
    {MessageKind::USER, "USER"},
    {MessageKind::GREETING, "GREETING"},
    {MessageKind::LACKS_INFORMATION, "LACKS_INFORMATION"},
    {MessageKind::CLARIFY, "CLARIFY"},
    {MessageKind::CONFIRMATION, "CONFIRMATION"},
    {MessageKind::ANSWER, "ANSWER"},
    {MessageKind::REASK, "REASK"},
    {MessageKind::PROMPT, "PROMPT"},
}};

constexpr std::array<std::pair<SessionState, std::string_view>, 3> kStates{{
    {SessionState::AWAITING_QUESTION, "AWAITING_QUESTION"},
    {SessionState::AWAITING_CONFIRMATION, "AWAITING_CONFIRMATION"},
    {SessionState::CLOSED, "CLOSED"},
}};

template <class E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) noexcept {
    for (const auto& [v, n] : table)
        if (v == value) return n;
    return table[0].second;
}

template <class E, std::size_t N>
std::optional<E> value_of(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view name) noexcept {
    for (const auto& [v, n] : table)
        if (n == name) return v;
    return std::nullopt;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

json params_json(const engine::GateParams& p) {
    json j = json::object();
    if (p.phase) j["phase"] = *p.phase;
    if (p.angle) j["angle"] = *p.angle;
    if (p.axis) j["axis"] = engine::axis_name(*p.axis);
    return j;
}

engine::GateParams params_from_json(const json& j) {
    engine::GateParams p;
    if (j.contains("phase")) p.phase = j["phase"].get<double>();
    if (j.contains("angle")) p.angle = j["angle"].get<double>();
    if (j.contains("axis")) {
        p.axis = engine::axis_from_name(j["axis"].get<std::string>());
        if (!p.axis) malformed("unknown axis");
    }
    return p;
}

} // namespace

std::string_view sender_name(Sender s) noexcept { return name_of(kSenders, s); }
std::string_view message_kind_name(MessageKind k) noexcept { return name_of(kKinds, k); }
std::string_view session_state_name(SessionState s) noexcept { return name_of(kStates, s); }
std::optional<Sender> sender_from_name(std::string_view name) noexcept { return value_of(kSenders, name); }
std::optional<MessageKind> message_kind_from_name(std::string_view name) noexcept { return value_of(kKinds, name); }
std::optional<SessionState> session_state_from_name(std::string_view name) noexcept { return value_of(kStates, name); }

json to_json(const Message& m) {
    json j{{"id", m.id},
           {"session_id", m.session_id},
           {"sender", sender_name(m.sender)},
           {"kind", message_kind_name(m.kind)},
           {"text", m.text},
           {"timestamp", m.timestamp}};
    if (m.category) j["category"] = nlu::category_name(*m.category);
    if (m.gate) j["gate_name"] = engine::gate_spec(*m.gate).key;
    if (m.initial_state) j["initial_state"] = engine::state_key(*m.initial_state);
    if (m.params) j["params"] = params_json(*m.params);
    return j;
}

Message message_from_json(const json& j) {
    try {
        Message m;
        m.id = j.at("id").get<std::uint64_t>();
        m.session_id = j.at("session_id").get<std::string>();
        const auto sender = sender_from_name(j.at("sender").get<std::string>());
        const auto kind = message_kind_from_name(j.at("kind").get<std::string>());
        if (!sender || !kind) malformed("unknown sender or message kind");
        m.sender = *sender;
        m.kind = *kind;
        m.text = j.at("text").get<std::string>();
        m.timestamp = j.at("timestamp").get<std::string>();
        if (j.contains("category")) {
            m.category = nlu::category_from_name(j["category"].get<std::string>());
            if (!m.category) malformed("unknown category");
        }
        if (j.contains("gate_name")) {
            m.gate = engine::gate_from_key(j["gate_name"].get<std::string>());
            if (!m.gate) malformed("unknown gate");
        }
        if (j.contains("initial_state")) {
            m.initial_state = engine::state_from_key(j["initial_state"].get<std::string>());
            if (!m.initial_state) malformed("unknown state");
        }
        if (j.contains("params")) m.params = params_from_json(j["params"]);
        return m;
    } catch (const json::exception& e) {
        malformed(std::string("malformed message: ") + e.what());
    }
}

json to_json(const Session& s) {
    json messages = json::array();
    for (const auto& m : s.messages) messages.push_back(to_json(m));
    json j{{"id", s.id},
           {"state", session_state_name(s.state)},
           {"created_at", s.created_at},
           {"next_message_id", s.next_message_id},
           {"messages", std::move(messages)}};
    if (s.pending) {
        j["pending"] = nlu::to_json(*s.pending);
        j["pending_question"] = s.pending_question;
    }
    return j;
}

Session session_from_json(const json& j) {
    try {
        Session s;
        s.id = j.at("id").get<std::string>();
        const auto state = session_state_from_name(j.at("state").get<std::string>());
        if (!state) malformed("unknown session state");
        s.state = *state;
        s.created_at = j.at("created_at").get<std::string>();
        s.next_message_id = j.at("next_message_id").get<std::uint64_t>();
        for (const auto& m : j.at("messages")) s.messages.push_back(message_from_json(m));
        if (j.contains("pending")) {
            s.pending = nlu::parsed_query_from_json(j["pending"]);
            s.pending_question = j.value("pending_question", std::string());
        }
        if (s.pending.has_value() != (s.state == SessionState::AWAITING_CONFIRMATION))
            malformed("pending query does not match the session state");
        return s;
    } catch (const json::exception& e) {
        malformed(std::string("malformed session: ") + e.what());
    }
}

} // namespace c4q::chat
