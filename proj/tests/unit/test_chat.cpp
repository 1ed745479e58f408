#include "doctest.h"

#include "chat/http.hpp"
#include "chat/replies.hpp"
#include "chat/service.hpp"
#include "chat/session.hpp"
#include "chat/store.hpp"
#include "chat/training_log.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"
#include "datagen/corpus.hpp"
#include "datagen/harness.hpp"
#include "datagen/templates.hpp"
#include "engine/engine.hpp"
#include "engine/gates.hpp"
#include "support/test_util.hpp"

#include "httplib.h"
#include "json.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <thread>

using namespace c4q;
using namespace c4q::chat;
using engine::GateId;
using engine::StateLabel;
using nlu::Category;
using nlohmann::json;

namespace {

std::shared_ptr<const nlu::ClassifierModel> model() {
    static const auto m = [] {
        const auto corpus = datagen::generate_classification_corpus(datagen::builtin_template_bank(), 0);
        return std::make_shared<const nlu::ClassifierModel>(datagen::train_classifier(datagen::split(corpus, 0.8, 0).train));
    }();
    return m;
}

ServiceOptions fixed_options() {
    auto counter = std::make_shared<int>(0);
    ServiceOptions o;
    o.clock = [] { return std::chrono::system_clock::time_point(std::chrono::milliseconds(1'700'000'000'123)); };
    o.ids = [counter] { return "s" + std::to_string(++*counter); };
    return o;
}

struct Fixture {
    std::shared_ptr<MemorySessionStore> store = std::make_shared<MemorySessionStore>();
    std::shared_ptr<TrainingLog> log = std::make_shared<TrainingLog>();
    ChatService service{model(), store, log, fixed_options()};
};

bool is_affirmative(std::string_view s) { return classify_reply(s) == Reply::AFFIRMATIVE; }

} // namespace

// ------------------------------------------------------------ classify_reply

TEST_CASE("classify_reply: lexicons") {
    for (auto s : {"yes", "y", "correct", "right", "YES", " Yes. ", "y!", "Correct"})
        CHECK_MESSAGE(classify_reply(s) == Reply::AFFIRMATIVE, s);
    for (auto s : {"no", "n", "wrong", "No.", "  NO  ", "Wrong!"}) CHECK_MESSAGE(classify_reply(s) == Reply::NEGATIVE, s);
    for (auto s : {"maybe", "", "yes no", "yess", "nope", "sure", "apply x"})
        CHECK_MESSAGE(classify_reply(s) == Reply::OTHER, s);
}

// ------------------------------------------------------------------ replies

TEST_CASE("greeting_text: lists capabilities and gates") {
    const auto g = greeting_text();
    CHECK(g.find("define") != std::string::npos);
    CHECK(g.find("draw") != std::string::npos);
    CHECK(g.find("apply") != std::string::npos);
    for (const auto& gate : engine::all_gates()) CHECK(g.find(std::string(gate.display_name)) != std::string::npos);
}

TEST_CASE("lacks_information_text: names the supported gates") {
    const auto t = lacks_information_text();
    CHECK(t.find("lacks information") != std::string::npos);
    for (const auto& gate : engine::all_gates()) CHECK(t.find(std::string(gate.display_name)) != std::string::npos);
}

TEST_CASE("confirmation_text: Fig-style restatement") {
    nlu::ParsedQuery q;
    q.category = Category::APPLY;
    q.gate = GateId::Z;
    q.initial_state = StateLabel::ONE;
    CHECK(confirmation_text(q) == "apply Pauli Z to |1⟩ — correct?");
}

TEST_CASE("confirmation_text: defaulted slots are noted") {
    nlu::ParsedQuery q;
    q.category = Category::APPLY;
    q.gate = GateId::P;
    q.initial_state = StateLabel::ZERO;
    q.params.phase = std::numbers::pi / 2;
    q.defaulted = {"initial_state", "phase"};
    const auto t = confirmation_text(q);
    CHECK(t.find("pi/2") != std::string::npos);
    CHECK(t.find("default phase") != std::string::npos);
    CHECK(t.find("default initial state") != std::string::npos);
}

TEST_CASE("answer_text: per category") {
    nlu::ParsedQuery q;
    q.gate = GateId::Z;
    q.category = Category::DEFINE;
    CHECK(answer_text(q) == std::string(engine::define(engine::gate_spec(GateId::Z))));
    q.category = Category::DRAW;
    CHECK(answer_text(q) == "q0: ──[ Z ]──");
    q.category = Category::APPLY;
    q.initial_state = StateLabel::ONE;
    CHECK(answer_text(q).find("−|1⟩") != std::string::npos);
}

TEST_CASE("clarify_text: ambiguity names both gates") {
    const Error e(ErrorCode::AmbiguousGate, "two gates", {"X", "Z"});
    const auto t = clarify_text(e);
    CHECK(t.find("X") != std::string::npos);
    CHECK(t.find("Z") != std::string::npos);
    CHECK_FALSE(reask_text().empty());
    CHECK(prompt_text().find("yes") != std::string::npos);
}

// ----------------------------------------------------------- create_session

TEST_CASE("create_session: one greeting in AWAITING_QUESTION") {
    Fixture f;
    const auto created = f.service.create_session();
    CHECK(created.greeting.sender == Sender::BOT);
    CHECK(created.greeting.kind == MessageKind::GREETING);
    CHECK(created.greeting.text == greeting_text());
    const auto msgs = f.service.list_messages(created.id);
    REQUIRE(msgs.size() == 1);
    CHECK(msgs[0] == created.greeting);
    CHECK(f.service.session_state(created.id) == SessionState::AWAITING_QUESTION);
}

TEST_CASE("create_session: distinct ids") {
    auto store = std::make_shared<MemorySessionStore>();
    ChatService service(model(), store, std::make_shared<TrainingLog>());
    std::set<std::string> ids;
    for (int i = 0; i < 50; ++i) ids.insert(service.create_session().id);
    CHECK(ids.size() == 50);
    CHECK(store->ids().size() == 50);
}

TEST_CASE("create_session: greeting carries no query fields") {
    Fixture f;
    const auto g = f.service.create_session().greeting;
    CHECK_FALSE(g.category);
    CHECK_FALSE(g.gate);
    CHECK_FALSE(g.params);
    CHECK(g.timestamp == "2023-11-14T22:13:20.123Z");
}

// ------------------------------------------------------------- post_message

TEST_CASE("post_message: question produces a confirmation") {
    Fixture f;
    const auto id = f.service.create_session().id;
    const auto out = f.service.post_message(id, "Apply the Pauli Z on |1⟩");
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::CONFIRMATION);
    CHECK(out[0].text == "apply Pauli Z to |1⟩ — correct?");
    CHECK(out[0].category == Category::APPLY);
    CHECK(out[0].gate == GateId::Z);
    CHECK(out[0].initial_state == StateLabel::ONE);
    CHECK(f.service.session_state(id) == SessionState::AWAITING_CONFIRMATION);
    CHECK(f.log->size() == 0);
}

TEST_CASE("post_message: yes produces the answer and a log record") {
    Fixture f;
    const auto id = f.service.create_session().id;
    (void)f.service.post_message(id, "Apply the Pauli Z on |1⟩");
    const auto out = f.service.post_message(id, "yes");
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::ANSWER);
    CHECK(out[0].text.find("−|1⟩") != std::string::npos);
    CHECK(out[0].gate == GateId::Z);
    REQUIRE(f.log->size() == 1);
    const auto rec = f.log->records()[0];
    CHECK(rec.question == "Apply the Pauli Z on |1⟩");
    CHECK(rec.category == Category::APPLY);
    CHECK_FALSE(rec.confirmed_at.empty());
    CHECK(f.service.session_state(id) == SessionState::AWAITING_QUESTION);
}

TEST_CASE("post_message: maybe prompts without calling the engine") {
    Fixture f;
    const auto id = f.service.create_session().id;
    (void)f.service.post_message(id, "Apply the Pauli Z on |1⟩");
    const auto out = f.service.post_message(id, "maybe");
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::PROMPT);
    CHECK(out[0].text == prompt_text());
    CHECK(f.service.session_state(id) == SessionState::AWAITING_CONFIRMATION);
    CHECK(f.log->size() == 0);
}

TEST_CASE("post_message: no re-asks and clears the pending query") {
    Fixture f;
    const auto id = f.service.create_session().id;
    (void)f.service.post_message(id, "draw the hadamard");
    const auto out = f.service.post_message(id, "no");
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::REASK);
    CHECK(f.service.session_state(id) == SessionState::AWAITING_QUESTION);
    CHECK(f.log->size() == 0);
    const auto session = f.store->get(id);
    REQUIRE(session);
    CHECK_FALSE(session->pending);
}

TEST_CASE("post_message: unknown gate gives the lacks-information reply") {
    Fixture f;
    const auto id = f.service.create_session().id;
    const auto out = f.service.post_message(id, "apply the toffoli gate");
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::LACKS_INFORMATION);
    CHECK(out[0].text == lacks_information_text());
    CHECK(f.service.session_state(id) == SessionState::AWAITING_QUESTION);
}

TEST_CASE("post_message: pipeline errors become a clarify reply") {
    Fixture f;
    const auto id = f.service.create_session().id;
    const auto out = f.service.post_message(id, "apply x and z");
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::CLARIFY);
    CHECK(f.service.session_state(id) == SessionState::AWAITING_QUESTION);
    const auto arity = f.service.post_message(id, "apply cnot to |1>");
    CHECK(arity[0].kind == MessageKind::CLARIFY);
}

TEST_CASE("post_message: unknown and ended sessions") {
    Fixture f;
    CHECK_THROWS_AS_CODE(f.service.post_message("nope", "hi"), ErrorCode::NotFound);
    const auto id = f.service.create_session().id;
    f.service.end_session(id);
    CHECK_THROWS_AS_CODE(f.service.post_message(id, "hi"), ErrorCode::SessionClosed);
}

TEST_CASE("post_message: blank text is rejected without touching the transcript") {
    Fixture f;
    const auto id = f.service.create_session().id;
    CHECK_THROWS_AS_CODE(f.service.post_message(id, "  \t"), ErrorCode::EmptyInput);
    CHECK(f.service.list_messages(id).size() == 1);
}

TEST_CASE("post_message: parameterised answer") {
    Fixture f;
    const auto id = f.service.create_session().id;
    const auto c = f.service.post_message(id, "rotate |1> about the y axis by pi/2");
    REQUIRE(c.size() == 1);
    REQUIRE(c[0].params);
    REQUIRE(c[0].params->angle);
    CHECK(std::abs(*c[0].params->angle - std::numbers::pi / 2) < 1e-12);
    const auto a = f.service.post_message(id, "correct");
    CHECK(a[0].kind == MessageKind::ANSWER);
}

// ------------------------------------------------------------ list_messages

TEST_CASE("list_messages: Fig flow yields five messages in id order") {
    Fixture f;
    const auto id = f.service.create_session().id;
    (void)f.service.post_message(id, "Apply the Pauli Z on |1⟩");
    (void)f.service.post_message(id, "yes");
    const auto msgs = f.service.list_messages(id);
    REQUIRE(msgs.size() == 5);
    CHECK(msgs[0].kind == MessageKind::GREETING);
    CHECK(msgs[1].sender == Sender::USER);
    CHECK(msgs[1].text == "Apply the Pauli Z on |1⟩");
    CHECK(msgs[2].kind == MessageKind::CONFIRMATION);
    CHECK(msgs[3].sender == Sender::USER);
    CHECK(msgs[3].text == "yes");
    CHECK(msgs[4].kind == MessageKind::ANSWER);
    for (std::size_t i = 1; i < msgs.size(); ++i) CHECK(msgs[i].id > msgs[i - 1].id);
    for (const auto& m : msgs) CHECK(m.session_id == id);
}

TEST_CASE("list_messages: unknown session") {
    Fixture f;
    CHECK_THROWS_AS_CODE(f.service.list_messages("missing"), ErrorCode::NotFound);
}

TEST_CASE("list_messages: ended session is purged") {
    Fixture f;
    const auto id = f.service.create_session().id;
    f.service.end_session(id);
    CHECK_THROWS_AS_CODE(f.service.list_messages(id), ErrorCode::NotFound);
}

// -------------------------------------------------------------- end_session

TEST_CASE("end_session: removes the session and keeps the training log") {
    Fixture f;
    const auto id = f.service.create_session().id;
    (void)f.service.post_message(id, "define the pauli x");
    (void)f.service.post_message(id, "y");
    REQUIRE(f.log->size() == 1);
    f.service.end_session(id);
    CHECK(f.log->size() == 1);
    CHECK_FALSE(f.store->get(id));
    CHECK(f.service.session_state(id) == SessionState::CLOSED);
    CHECK_THROWS_AS_CODE(f.service.session_state("never"), ErrorCode::NotFound);
}

TEST_CASE("end_session: double end is not-found") {
    Fixture f;
    const auto id = f.service.create_session().id;
    f.service.end_session(id);
    CHECK_THROWS_AS_CODE(f.service.end_session(id), ErrorCode::NotFound);
    CHECK_THROWS_AS_CODE(f.service.end_session("never"), ErrorCode::NotFound);
}

// ------------------------------------------------------------- message JSON

TEST_CASE("Message: JSON round trip with optional fields") {
    Message m;
    m.id = 3;
    m.session_id = "abc";
    m.sender = Sender::BOT;
    m.kind = MessageKind::CONFIRMATION;
    m.text = "apply Pauli Z to |1⟩ — correct?";
    m.category = Category::APPLY;
    m.gate = GateId::Z;
    m.initial_state = StateLabel::ONE;
    m.params = engine::GateParams{};
    m.timestamp = "2026-01-02T03:04:05.678Z";
    const auto j = to_json(m);
    CHECK(j.at("gate_name") == "Z");
    CHECK(j.at("initial_state") == "ONE");
    CHECK(j.at("sender") == "BOT");
    CHECK(message_from_json(j) == m);

    Message plain;
    plain.text = "hello";
    const auto pj = to_json(plain);
    CHECK_FALSE(pj.contains("category"));
    CHECK_FALSE(pj.contains("params"));
}

TEST_CASE("Session: JSON round trip and pending invariant") {
    Fixture f;
    const auto id = f.service.create_session().id;
    (void)f.service.post_message(id, "apply h to |0>");
    const auto s = f.store->get(id);
    REQUIRE(s);
    const auto back = session_from_json(to_json(*s));
    CHECK(back.state == SessionState::AWAITING_CONFIRMATION);
    CHECK(back.messages == s->messages);
    CHECK(back.pending_question == "apply h to |0>");
    auto broken = to_json(*s);
    broken["state"] = "AWAITING_QUESTION";
    CHECK_THROWS_AS_CODE(session_from_json(broken), ErrorCode::InvalidArgument);
}

TEST_CASE("format_timestamp: ISO-8601 with milliseconds") {
    using namespace std::chrono;
    CHECK(format_timestamp(system_clock::time_point(milliseconds(0))) == "1970-01-01T00:00:00.000Z");
    CHECK(format_timestamp(system_clock::time_point(milliseconds(1'700'000'000'123))) == "2023-11-14T22:13:20.123Z");
    const auto id = random_session_id();
    CHECK(id.size() == 32);
    CHECK(id.find_first_not_of("0123456789abcdef") == std::string::npos);
}

// ------------------------------------------------------------------- stores

TEST_CASE("FileSessionStore: persists across instances") {
    test_util::TempDir dir;
    const auto log_path = dir / "training_log.jsonl";
    std::string id;
    {
        auto store = std::make_shared<FileSessionStore>(dir / "sessions");
        ChatService service(model(), store, std::make_shared<TrainingLog>(log_path));
        id = service.create_session().id;
        (void)service.post_message(id, "Apply the Pauli Z on |1⟩");
    }
    auto store = std::make_shared<FileSessionStore>(dir / "sessions");
    ChatService service(model(), store, std::make_shared<TrainingLog>(log_path));
    CHECK(service.session_state(id) == SessionState::AWAITING_CONFIRMATION);
    const auto out = service.post_message(id, "yes");
    CHECK(out[0].kind == MessageKind::ANSWER);
    CHECK(service.list_messages(id).size() == 5);
    CHECK(read_training_log(log_path).size() == 1);
}

TEST_CASE("FileSessionStore: erase removes the file and leaves no temporaries") {
    test_util::TempDir dir;
    FileSessionStore store(dir / "sessions");
    Session s;
    s.id = "abc";
    store.put(s);
    CHECK(std::filesystem::exists(dir / "sessions" / "abc.json"));
    s.messages.push_back(Message{});
    store.put(s);
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir / "sessions")) {
        ++files;
        CHECK(e.path().extension() == ".json");
    }
    CHECK(files == 1);
    CHECK(store.get("abc")->messages.size() == 1);
    CHECK(store.ids() == std::vector<std::string>{"abc"});
    CHECK(store.erase("abc"));
    CHECK_FALSE(store.erase("abc"));
    CHECK_FALSE(std::filesystem::exists(dir / "sessions" / "abc.json"));
    CHECK_FALSE(store.get("abc"));
}

TEST_CASE("FileSessionStore: ids that would escape the directory are refused") {
    test_util::TempDir dir;
    FileSessionStore store(dir / "sessions");
    CHECK_FALSE(store.get("../etc/passwd"));
    Session s;
    s.id = "../evil";
    CHECK_THROWS_AS_CODE(store.put(s), ErrorCode::InvalidArgument);
}

TEST_CASE("MemorySessionStore: put, get, erase, ids") {
    MemorySessionStore store;
    Session s;
    s.id = "one";
    store.put(s);
    CHECK(store.get("one").has_value());
    CHECK(store.ids().size() == 1);
    CHECK(store.erase("one"));
    CHECK_FALSE(store.get("one"));
    CHECK_FALSE(store.erase("one"));
}

TEST_CASE("TrainingLog: JSONL file survives reopen") {
    test_util::TempDir dir;
    const auto path = dir / "nested" / "log.jsonl";
    {
        TrainingLog log(path);
        log.append({"define x", Category::DEFINE, "2026-01-01T00:00:00.000Z"});
        log.append({"draw h", Category::DRAW, "2026-01-01T00:00:01.000Z"});
        CHECK(log.size() == 2);
    }
    TrainingLog reopened(path);
    CHECK(reopened.size() == 2);
    reopened.append({"apply z to |1>", Category::APPLY, "2026-01-01T00:00:02.000Z"});
    const auto recs = read_training_log(path);
    REQUIRE(recs.size() == 3);
    CHECK(recs[2].question == "apply z to |1>");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    const auto j = json::parse(line);
    CHECK(j.at("question") == "define x");
    CHECK(j.at("category") == "DEFINE");
    CHECK(j.contains("confirmed_at"));
}

TEST_CASE("read_training_log: errors") {
    test_util::TempDir dir;
    CHECK_THROWS_AS_CODE(read_training_log(dir / "missing.jsonl"), ErrorCode::Io);
    { std::ofstream(dir / "bad.jsonl") << "{not json\n"; }
    CHECK_THROWS_AS_CODE(read_training_log(dir / "bad.jsonl"), ErrorCode::InvalidArgument);
}

// --------------------------------------------------------------------- HTTP

TEST_CASE("handle_request: full flow and status codes") {
    Fixture f;
    auto r = handle_request(f.service, "POST", "/api/sessions", "");
    CHECK(r.status == 201);
    const std::string id = json::parse(r.body).at("session_id");

    r = handle_request(f.service, "GET", "/api/sessions/" + id + "/messages", "");
    CHECK(r.status == 200);
    CHECK(json::parse(r.body).at("messages").size() == 1);

    r = handle_request(f.service, "POST", "/api/sessions/" + id + "/messages", R"({"text": "Apply the Pauli Z on |1⟩"})");
    CHECK(r.status == 200);
    auto msgs = json::parse(r.body).at("messages");
    REQUIRE(msgs.size() == 1);
    CHECK(msgs[0].at("category") == "APPLY");
    CHECK(msgs[0].at("gate_name") == "Z");

    r = handle_request(f.service, "POST", "/api/sessions/" + id + "/messages", R"({"text": "yes"})");
    msgs = json::parse(r.body).at("messages");
    CHECK(msgs[0].at("text").get<std::string>().find("−|1⟩") != std::string::npos);

    r = handle_request(f.service, "DELETE", "/api/sessions/" + id, "");
    CHECK(r.status == 204);
    CHECK(r.body.empty());

    r = handle_request(f.service, "GET", "/api/sessions/" + id + "/messages", "");
    CHECK(r.status == 404);
    CHECK(json::parse(r.body).at("error") == "not_found");
    r = handle_request(f.service, "POST", "/api/sessions/" + id + "/messages", R"({"text": "hi"})");
    CHECK(r.status == 410);
    CHECK(json::parse(r.body).at("error") == "session_closed");
    r = handle_request(f.service, "DELETE", "/api/sessions/" + id, "");
    CHECK(r.status == 404);
}

TEST_CASE("handle_request: malformed requests") {
    Fixture f;
    const std::string id = json::parse(handle_request(f.service, "POST", "/api/sessions", "").body).at("session_id");
    const std::string path = "/api/sessions/" + id + "/messages";
    CHECK(handle_request(f.service, "POST", path, "not json").status == 400);
    CHECK(handle_request(f.service, "POST", path, R"({"txt": "hi"})").status == 400);
    CHECK(handle_request(f.service, "POST", path, R"({"text": 5})").status == 400);
    const auto blank = handle_request(f.service, "POST", path, R"({"text": "   "})");
    CHECK(blank.status == 400);
    CHECK(json::parse(blank.body).contains("detail"));
    CHECK(handle_request(f.service, "GET", "/api/nothing", "").status == 404);
    CHECK(handle_request(f.service, "PUT", "/api/sessions", "").status == 405);
    CHECK(handle_request(f.service, "GET", "/api/sessions/" + id, "").status == 405);
    CHECK(handle_request(f.service, "GET", path + "?since=3", "").status == 200);
}

TEST_CASE("parse_listen_address: forms and errors") {
    auto a = parse_listen_address("127.0.0.1:8080");
    CHECK(a.host == "127.0.0.1");
    CHECK(a.port == 8080);
    a = parse_listen_address(":9000");
    CHECK(a.host == "127.0.0.1");
    CHECK(a.port == 9000);
    a = parse_listen_address("0.0.0.0:0");
    CHECK(a.port == 0);
    CHECK(parse_listen_address("7000").port == 7000);
    CHECK_THROWS_AS_CODE(parse_listen_address("host:"), ErrorCode::InvalidArgument);
    CHECK_THROWS_AS_CODE(parse_listen_address("host:99999"), ErrorCode::InvalidArgument);
    CHECK_THROWS_AS_CODE(parse_listen_address("a:b"), ErrorCode::InvalidArgument);
}

TEST_CASE("HttpServer: serves the API over a socket") {
    Fixture f;
    HttpServer server(f.service);
    const int port = server.bind({"127.0.0.1", 0});
    REQUIRE(port > 0);
    std::thread runner([&] { server.run(); });

    httplib::Client client("127.0.0.1", port);
    auto res = client.Post("/api/sessions", "", "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    const std::string id = json::parse(res->body).at("session_id");
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    res = client.Post("/api/sessions/" + id + "/messages", R"({"text": "draw cnot"})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    res = client.Options("/api/sessions");
    REQUIRE(res);
    CHECK(res->status == 204);
    res = client.Delete("/api/sessions/" + id);
    REQUIRE(res);
    CHECK(res->status == 204);

    server.stop();
    runner.join();
}

// -------------------------------------------------------------- concurrency

TEST_CASE("ChatService: concurrent sessions and posts keep per-session order") {
    Fixture f;
    constexpr int kThreads = 8;
    constexpr int kRounds = 10;
    const auto shared = f.service.create_session().id;
    std::atomic<int> failures{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < kThreads; ++t) {
        threads.emplace_back([&] {
            try {
                const auto own = f.service.create_session().id;
                for (int r = 0; r < kRounds; ++r) {
                    (void)f.service.post_message(own, "define the hadamard");
                    (void)f.service.post_message(own, "yes");
                    (void)f.service.post_message(shared, "maybe");
                }
            } catch (...) {
                ++failures;
            }
        });
    }
    for (auto& t : threads) t.join();
    CHECK(failures == 0);
    CHECK(f.log->size() == kThreads * kRounds);
    const auto msgs = f.service.list_messages(shared);
    CHECK(msgs.size() == 1 + 2 * kThreads * kRounds);
    for (std::size_t i = 1; i < msgs.size(); ++i) CHECK(msgs[i].id == msgs[i - 1].id + 1);
}

// -------------------------------------------------------------------- fuzz

TEST_CASE("property: 500-session dialogue fuzz keeps the gate, log and purge invariants") {
    test_util::TempDir dir;
    auto store = std::make_shared<FileSessionStore>(dir / "sessions");
    auto log = std::make_shared<TrainingLog>(dir / "log.jsonl");
    ChatService service(model(), store, log);

    const std::vector<std::string> inputs{
        "Apply the Pauli Z on |1⟩", "define the hadamard", "draw cnot", "apply rx to |0>", "apply the toffoli gate",
        "apply x and z", "apply cnot to |1>", "rotate |1> about the y axis by pi/2", "what is the swap gate?",
        "yes", "y", "correct", "right", "Yes.", "no", "n", "wrong", "maybe", "hello", "yes please", "", "   ",
    };
    SeededRng rng(2024);
    std::size_t affirmations = 0;
    std::size_t violations = 0;
    std::vector<std::string> ended;

    for (int s = 0; s < 500; ++s) {
        const auto id = service.create_session().id;
        bool awaiting = false;  // test-side mirror of the state machine
        const auto turns = 1 + rng.below(12);
        for (std::uint64_t t = 0; t < turns; ++t) {
            const auto& text = inputs[rng.below(inputs.size())];
            std::vector<Message> out;
            try {
                out = service.post_message(id, text);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::EmptyInput) ++violations;
                continue;
            }
            if (text.find_first_not_of(' ') == std::string::npos) ++violations;  // blank must throw
            if (out.size() != 1) ++violations;
            const auto kind = out.empty() ? MessageKind::USER : out[0].kind;
            if (awaiting) {
                const auto reply = classify_reply(text);
                if (reply == Reply::AFFIRMATIVE) {
                    ++affirmations;
                    if (kind != MessageKind::ANSWER) ++violations;
                    awaiting = false;
                } else if (reply == Reply::NEGATIVE) {
                    if (kind != MessageKind::REASK) ++violations;
                    awaiting = false;
                } else if (kind != MessageKind::PROMPT) {
                    ++violations;
                }
            } else {
                if (kind == MessageKind::ANSWER) ++violations;
                awaiting = kind == MessageKind::CONFIRMATION;
            }
            const bool state_awaiting = service.session_state(id) == SessionState::AWAITING_CONFIRMATION;
            if (state_awaiting != awaiting) ++violations;
        }

        // Confirmation gate over the stored transcript.
        const auto msgs = service.list_messages(id);
        for (std::size_t i = 0; i < msgs.size(); ++i) {
            if (i > 0 && msgs[i].id <= msgs[i - 1].id) ++violations;
            const bool carries = msgs[i].category || msgs[i].gate || msgs[i].params;
            if (carries && msgs[i].kind != MessageKind::CONFIRMATION && msgs[i].kind != MessageKind::ANSWER) ++violations;
            if (msgs[i].kind != MessageKind::ANSWER) continue;
            if (i < 2 || msgs[i - 1].sender != Sender::USER || !is_affirmative(msgs[i - 1].text)) ++violations;
            // The nearest earlier bot message must be a confirmation or a prompt for it.
            std::size_t j = i - 1;
            while (j > 0 && msgs[j].sender == Sender::USER) --j;
            if (msgs[j].kind != MessageKind::CONFIRMATION && msgs[j].kind != MessageKind::PROMPT) ++violations;
        }

        if (rng.below(2) == 0) {
            service.end_session(id);
            ended.push_back(id);
        }
    }

    CHECK(violations == 0);
    // Log integrity, in memory and on disk.
    CHECK(log->size() == affirmations);
    CHECK(read_training_log(dir / "log.jsonl").size() == affirmations);
    CHECK(affirmations > 50);

    // Purge completeness through every interface.
    std::size_t leaks = 0;
    for (const auto& id : ended) {
        if (store->get(id)) ++leaks;
        if (std::filesystem::exists(dir / "sessions" / (id + ".json"))) ++leaks;
        try {
            (void)service.list_messages(id);
            ++leaks;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotFound) ++leaks;
        }
        if (handle_request(service, "GET", "/api/sessions/" + id + "/messages", "").status != 404) ++leaks;
    }
    CHECK(ended.size() > 100);
    CHECK(leaks == 0);
    const auto remaining = store->ids();
    CHECK(remaining.size() == 500 - ended.size());
}
