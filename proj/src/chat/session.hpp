#pragma once

#include "nlu/query.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace c4q::chat {

enum class Sender { USER, BOT };

/// What a bot message is for. User messages carry USER.
enum class MessageKind { USER, GREETING, LACKS_INFORMATION, CLARIFY, CONFIRMATION, ANSWER, REASK, PROMPT };

enum class SessionState { AWAITING_QUESTION, AWAITING_CONFIRMATION, CLOSED };

[[nodiscard]] std::string_view sender_name(Sender s) noexcept;
[[nodiscard]] std::string_view message_kind_name(MessageKind k) noexcept;
[[nodiscard]] std::string_view session_state_name(SessionState s) noexcept;
[[nodiscard]] std::optional<Sender> sender_from_name(std::string_view name) noexcept;
[[nodiscard]] std::optional<MessageKind> message_kind_from_name(std::string_view name) noexcept;
[[nodiscard]] std::optional<SessionState> session_state_from_name(std::string_view name) noexcept;

struct Message {
    std::uint64_t id = 0;
    std::string session_id;
    Sender sender = Sender::BOT;
    MessageKind kind = MessageKind::USER;
    std::string text;
    // Set on confirmation and answer messages only.
    std::optional<nlu::Category> category;
    std::optional<engine::GateId> gate;
    std::optional<engine::StateLabel> initial_state;
    std::optional<engine::GateParams> params;
    std::string timestamp;  ///< ISO-8601 UTC

    friend bool operator==(const Message&, const Message&) = default;
};

/// {id, session_id, sender, kind, text, category?, gate_name?, initial_state?,
/// params?, timestamp}
[[nodiscard]] nlohmann::json to_json(const Message& m);
/// Throws InvalidArgument on unknown names or missing fields.
[[nodiscard]] Message message_from_json(const nlohmann::json& j);

struct Session {
    std::string id;
    SessionState state = SessionState::AWAITING_QUESTION;
    std::optional<nlu::ParsedQuery> pending;  ///< set iff AWAITING_CONFIRMATION
    std::string pending_question;             ///< raw text behind `pending`
    std::string created_at;
    std::vector<Message> messages;
    std::uint64_t next_message_id = 1;
};

[[nodiscard]] nlohmann::json to_json(const Session& s);
[[nodiscard]] Session session_from_json(const nlohmann::json& j);

} // namespace c4q::chat
