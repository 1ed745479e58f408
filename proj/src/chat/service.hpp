#pragma once

#include "chat/session.hpp"
#include "chat/store.hpp"
#include "chat/training_log.hpp"
#include "nlu/classifier.hpp"

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace c4q::chat {

using Clock = std::function<std::chrono::system_clock::time_point()>;
using IdGenerator = std::function<std::string()>;

/// "2026-01-02T03:04:05.678Z"
[[nodiscard]] std::string format_timestamp(std::chrono::system_clock::time_point t);

/// 32 lowercase hex digits from std::random_device.
[[nodiscard]] std::string random_session_id();

struct ServiceOptions {
    Clock clock;       ///< defaults to system_clock::now
    IdGenerator ids;   ///< defaults to random_session_id
};

struct CreatedSession {
    std::string id;
    Message greeting;
};

/// Dialogue state machine over a session store. Calls on different sessions
/// run concurrently; calls on one session are serialized.
class ChatService {
public:
    ChatService(std::shared_ptr<const nlu::ClassifierModel> model, std::shared_ptr<SessionStore> store,
                std::shared_ptr<TrainingLog> log, ServiceOptions options = {});

    CreatedSession create_session();

    /// Appends the user message and returns the bot messages it produced.
    /// Throws NotFound for unknown ids, SessionClosed for ended sessions,
    /// EmptyInput for blank text (nothing is appended).
    std::vector<Message> post_message(const std::string& session_id, std::string_view text);

    /// Full transcript in id order. Throws NotFound, also for ended sessions.
    [[nodiscard]] std::vector<Message> list_messages(const std::string& session_id) const;

    /// Deletes the session and its transcript. The training log is kept.
    /// Throws NotFound for unknown or already ended sessions.
    void end_session(const std::string& session_id);

    /// CLOSED for ended sessions. Throws NotFound.
    [[nodiscard]] SessionState session_state(const std::string& session_id) const;

    [[nodiscard]] const TrainingLog& training_log() const noexcept { return *log_; }

private:
    std::shared_ptr<std::mutex> session_lock(const std::string& id);
    Message make_message(Session& s, Sender sender, MessageKind kind, std::string text) const;
    void advance(Session& s, std::string_view text, std::vector<Message>& out);

    std::shared_ptr<const nlu::ClassifierModel> model_;
    std::shared_ptr<SessionStore> store_;
    std::shared_ptr<TrainingLog> log_;
    Clock clock_;
    IdGenerator ids_;

    mutable std::mutex registry_mutex_;
    std::unordered_map<std::string, std::shared_ptr<std::mutex>> locks_;
    std::set<std::string, std::less<>> closed_;  ///< ids only; transcripts are gone
};

} // namespace c4q::chat
