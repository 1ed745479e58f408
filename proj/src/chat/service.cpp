#include "chat/service.hpp"

#include "chat/replies.hpp"
#include "common/error.hpp"
#include "nlu/interpret.hpp"

#include <ctime>
#include <random>

namespace c4q::chat {

std::string format_timestamp(std::chrono::system_clock::time_point t) {
    using namespace std::chrono;
    const auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count();
    const std::time_t secs = static_cast<std::time_t>(ms / 1000 - (ms % 1000 < 0 ? 1 : 0));
    const int millis = static_cast<int>(((ms % 1000) + 1000) % 1000);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[40];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, millis);
    return out;
}

std::string random_session_id() {
    static thread_local std::mt19937_64 gen{[] {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }()};
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id;
    for (int word = 0; word < 2; ++word) {
        std::uint64_t bits = gen();
        for (int i = 0; i < 16; ++i, bits >>= 4) id += kHex[bits & 0xF];
    }
    return id;
}

ChatService::ChatService(std::shared_ptr<const nlu::ClassifierModel> model, std::shared_ptr<SessionStore> store,
                         std::shared_ptr<TrainingLog> log, ServiceOptions options)
    : model_(std::move(model)),
      store_(std::move(store)),
      log_(std::move(log)),
      clock_(options.clock ? std::move(options.clock) : Clock([] { return std::chrono::system_clock::now(); })),
      ids_(options.ids ? std::move(options.ids) : IdGenerator(random_session_id)) {
    if (!model_ || !store_ || !log_) throw Error(ErrorCode::InvalidArgument, "chat service needs a model, a store and a log");
}

std::shared_ptr<std::mutex> ChatService::session_lock(const std::string& id) {
    std::lock_guard lock(registry_mutex_);
    if (auto it = locks_.find(id); it != locks_.end()) return it->second;
    if (closed_.contains(id) || !store_->get(id)) return nullptr;
    return locks_[id] = std::make_shared<std::mutex>();
}

Message ChatService::make_message(Session& s, Sender sender, MessageKind kind, std::string text) const {
    Message m;
    m.id = s.next_message_id++;
    m.session_id = s.id;
    m.sender = sender;
    m.kind = kind;
    m.text = std::move(text);
    m.timestamp = format_timestamp(clock_());
    return m;
}

CreatedSession ChatService::create_session() {
    Session s;
    for (;;) {
        s.id = ids_();
        std::lock_guard lock(registry_mutex_);
        if (!closed_.contains(s.id) && !locks_.contains(s.id) && !store_->get(s.id)) {
            locks_[s.id] = std::make_shared<std::mutex>();
            break;
        }
    }
    s.created_at = format_timestamp(clock_());
    s.messages.push_back(make_message(s, Sender::BOT, MessageKind::GREETING, greeting_text()));
    store_->put(s);
    return {s.id, s.messages.back()};
}

std::vector<Message> ChatService::post_message(const std::string& session_id, std::string_view text) {
    const auto lock_ptr = session_lock(session_id);
    if (!lock_ptr) {
        std::lock_guard registry(registry_mutex_);
        if (closed_.contains(session_id))
            throw Error(ErrorCode::SessionClosed, "session " + session_id + " has ended");
        throw Error(ErrorCode::NotFound, "no session " + session_id);
    }
    std::lock_guard lock(*lock_ptr);
    {
        std::lock_guard registry(registry_mutex_);
        if (closed_.contains(session_id))
            throw Error(ErrorCode::SessionClosed, "session " + session_id + " has ended");
    }
    auto s = store_->get(session_id);
    if (!s) throw Error(ErrorCode::NotFound, "no session " + session_id);
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw Error(ErrorCode::EmptyInput, "message text is blank");

    s->messages.push_back(make_message(*s, Sender::USER, MessageKind::USER, std::string(text)));
    std::vector<Message> out;
    advance(*s, text, out);
    for (const auto& m : out) s->messages.push_back(m);
    store_->put(*s);
    return out;
}

void ChatService::advance(Session& s, std::string_view text, std::vector<Message>& out) {
    if (s.state == SessionState::AWAITING_CONFIRMATION) {
        switch (classify_reply(text)) {
        case Reply::AFFIRMATIVE: {
            const nlu::ParsedQuery q = *s.pending;
            log_->append({s.pending_question, q.category, format_timestamp(clock_())});
            std::string answer;
            try {
                answer = answer_text(q);
            } catch (const Error& e) {
                answer = clarify_text(e);
            }
            Message m = make_message(s, Sender::BOT, MessageKind::ANSWER, std::move(answer));
            m.category = q.category;
            m.gate = q.gate;
            m.initial_state = q.initial_state;
            m.params = q.params;
            out.push_back(std::move(m));
            s.pending.reset();
            s.pending_question.clear();
            s.state = SessionState::AWAITING_QUESTION;
            return;
        }
        case Reply::NEGATIVE:
            out.push_back(make_message(s, Sender::BOT, MessageKind::REASK, reask_text()));
            s.pending.reset();
            s.pending_question.clear();
            s.state = SessionState::AWAITING_QUESTION;
            return;
        case Reply::OTHER:
            out.push_back(make_message(s, Sender::BOT, MessageKind::PROMPT, prompt_text()));
            return;
        }
    }

    nlu::ParsedQuery q;
    try {
        q = nlu::interpret(*model_, text);
    } catch (const Error& e) {
        out.push_back(make_message(s, Sender::BOT, MessageKind::CLARIFY, clarify_text(e)));
        return;
    }
    if (!q.gate) {
        out.push_back(make_message(s, Sender::BOT, MessageKind::LACKS_INFORMATION, lacks_information_text()));
        return;
    }
    Message m = make_message(s, Sender::BOT, MessageKind::CONFIRMATION, confirmation_text(q));
    m.category = q.category;
    m.gate = q.gate;
    m.initial_state = q.initial_state;
    m.params = q.params;
    out.push_back(std::move(m));
    s.pending = std::move(q);
    s.pending_question = std::string(text);
    s.state = SessionState::AWAITING_CONFIRMATION;
}

std::vector<Message> ChatService::list_messages(const std::string& session_id) const {
    {
        std::lock_guard registry(registry_mutex_);
        if (closed_.contains(session_id)) throw Error(ErrorCode::NotFound, "no session " + session_id);
    }
    auto s = store_->get(session_id);
    if (!s) throw Error(ErrorCode::NotFound, "no session " + session_id);
    return s->messages;
}

void ChatService::end_session(const std::string& session_id) {
    const auto lock_ptr = session_lock(session_id);
    if (!lock_ptr) throw Error(ErrorCode::NotFound, "no session " + session_id);
    {
        std::lock_guard lock(*lock_ptr);
        std::lock_guard registry(registry_mutex_);
        if (closed_.contains(session_id) || !store_->erase(session_id))
            throw Error(ErrorCode::NotFound, "no session " + session_id);
        closed_.insert(session_id);
    }
    std::lock_guard registry(registry_mutex_);
    locks_.erase(session_id);
}

SessionState ChatService::session_state(const std::string& session_id) const {
    {
        std::lock_guard registry(registry_mutex_);
        if (closed_.contains(session_id)) return SessionState::CLOSED;
    }
    auto s = store_->get(session_id);
    if (!s) throw Error(ErrorCode::NotFound, "no session " + session_id);
    return s->state;
}

} // namespace c4q::chat
