#include "c4q/c4q.h"

#include "chat/http.hpp"
#include "chat/service.hpp"
#include "common/error.hpp"
#include "datagen/corpus.hpp"
#include "datagen/harness.hpp"
#include "engine/engine.hpp"
#include "nlu/interpret.hpp"

#include "json.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

using nlohmann::json;
using namespace c4q;

struct c4q_model {
    std::shared_ptr<const nlu::ClassifierModel> model;
};

struct c4q_service {
    std::shared_ptr<chat::ChatService> service;
};

struct c4q_server {
    std::unique_ptr<chat::HttpServer> server;
};

namespace {

namespace fs = std::filesystem;

thread_local std::string g_last_error;

c4q_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return C4Q_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParameterMissing: return C4Q_ERR_PARAMETER_MISSING;
    case ErrorCode::ArityMismatch: return C4Q_ERR_ARITY_MISMATCH;
    case ErrorCode::EmptyInput: return C4Q_ERR_EMPTY_INPUT;
    case ErrorCode::AmbiguousGate: return C4Q_ERR_AMBIGUOUS_GATE;
    case ErrorCode::AmbiguousState: return C4Q_ERR_AMBIGUOUS_STATE;
    case ErrorCode::AmbiguousAxis: return C4Q_ERR_AMBIGUOUS_AXIS;
    case ErrorCode::AngleParse: return C4Q_ERR_ANGLE_PARSE;
    case ErrorCode::TemplateValidation: return C4Q_ERR_TEMPLATE_VALIDATION;
    case ErrorCode::CorpusTooSmall: return C4Q_ERR_CORPUS_TOO_SMALL;
    case ErrorCode::DegenerateCorpus: return C4Q_ERR_DEGENERATE_CORPUS;
    case ErrorCode::VersionMismatch: return C4Q_ERR_VERSION_MISMATCH;
    case ErrorCode::NotFound: return C4Q_ERR_NOT_FOUND;
    case ErrorCode::SessionClosed: return C4Q_ERR_SESSION_CLOSED;
    case ErrorCode::Io: return C4Q_ERR_IO;
    }
    return C4Q_ERR_INTERNAL;
}

// Every entry point runs its body through guard(); nothing may escape the C boundary.
template <class F>
c4q_status guard(F&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return C4Q_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const json::exception& e) {
        g_last_error = std::string("malformed JSON: ") + e.what();
        return C4Q_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return C4Q_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return C4Q_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(std::string_view s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

const engine::GateSpec& gate_arg(const char* key) {
    require(key, "gate");
    const auto id = engine::gate_from_key(key);
    if (!id) throw Error(ErrorCode::InvalidArgument, std::string("unknown gate \"") + key + "\"");
    return engine::gate_spec(*id);
}

engine::StateLabel state_arg(const char* key) {
    require(key, "state");
    const auto label = engine::state_from_key(key);
    if (!label) throw Error(ErrorCode::InvalidArgument, std::string("unknown state \"") + key + "\"");
    return *label;
}

engine::GateParams params_arg(const engine::GateSpec& gate, const char* params_json) {
    engine::GateParams p;
    if (params_json == nullptr || *params_json == '\0') return p;
    const json j = json::parse(params_json);
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "params must be a JSON object");
    if (j.contains("phase")) p.phase = j["phase"].get<double>();
    if (j.contains("angle")) p.angle = j["angle"].get<double>();
    if (const auto axis = engine::rotation_axis(gate.id)) p.axis = axis;
    return p;
}

json complex_array(std::span<const engine::Amplitude> values) {
    json out = json::array();
    for (const auto& a : values) out.push_back(json::array({a.real(), a.imag()}));
    return out;
}

json messages_json(const std::vector<chat::Message>& messages) {
    json out = json::array();
    for (const auto& m : messages) out.push_back(chat::to_json(m));
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

} // namespace

extern "C" {

const char* c4q_version(void) { return "1.0.0"; }

const char* c4q_status_name(c4q_status status) {
    switch (status) {
    case C4Q_OK: return "ok";
    case C4Q_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case C4Q_ERR_PARAMETER_MISSING: return "parameter_missing";
    case C4Q_ERR_ARITY_MISMATCH: return "arity_mismatch";
    case C4Q_ERR_EMPTY_INPUT: return "empty_input";
    case C4Q_ERR_AMBIGUOUS_GATE: return "ambiguous_gate";
    case C4Q_ERR_AMBIGUOUS_STATE: return "ambiguous_state";
    case C4Q_ERR_AMBIGUOUS_AXIS: return "ambiguous_axis";
    case C4Q_ERR_ANGLE_PARSE: return "angle_parse";
    case C4Q_ERR_TEMPLATE_VALIDATION: return "template_validation";
    case C4Q_ERR_CORPUS_TOO_SMALL: return "corpus_too_small";
    case C4Q_ERR_DEGENERATE_CORPUS: return "degenerate_corpus";
    case C4Q_ERR_VERSION_MISMATCH: return "version_mismatch";
    case C4Q_ERR_NOT_FOUND: return "not_found";
    case C4Q_ERR_SESSION_CLOSED: return "session_closed";
    case C4Q_ERR_IO: return "io_error";
    case C4Q_ERR_INTERNAL: return "internal";
    }
    return "internal";
}

const char* c4q_last_error(void) { return g_last_error.c_str(); }

void c4q_string_free(char* s) { std::free(s); }

c4q_status c4q_define(const char* gate, char** out_text) {
    return guard([&] {
        require(out_text, "out_text");
        *out_text = dup(engine::define(gate_arg(gate)));
    });
}

c4q_status c4q_draw(const char* gate, const char* params_json, char** out_text) {
    return guard([&] {
        require(out_text, "out_text");
        const auto& spec = gate_arg(gate);
        *out_text = dup(engine::draw(spec, params_arg(spec, params_json)).text);
    });
}

c4q_status c4q_apply(const char* gate, const char* params_json, const char* state, char** out_json) {
    return guard([&] {
        require(out_json, "out_json");
        const auto& spec = gate_arg(gate);
        const auto result = engine::apply(spec, params_arg(spec, params_json), state_arg(state));
        *out_json = dup(json{{"ket", result.ket_text}, {"amplitudes", complex_array(result.state.amplitudes)}}.dump());
    });
}

c4q_status c4q_gate_matrix(const char* gate, const char* params_json, char** out_json) {
    return guard([&] {
        require(out_json, "out_json");
        const auto& spec = gate_arg(gate);
        const auto m = engine::gate_matrix(spec, params_arg(spec, params_json));
        std::vector<engine::Amplitude> entries;
        for (std::size_t r = 0; r < m.dim(); ++r)
            for (std::size_t c = 0; c < m.dim(); ++c) entries.push_back(m(r, c));
        *out_json = dup(json{{"dim", m.dim()}, {"entries", complex_array(entries)}}.dump());
    });
}

c4q_status c4q_generate(uint64_t seed, const char* out_dir, const char* templates_path, char** out_manifest_json) {
    return guard([&] {
        require(out_dir, "out_dir");
        const datagen::TemplateBank bank = templates_path ? datagen::load_template_bank(read_file(templates_path))
                                                          : datagen::builtin_template_bank();
        const fs::path dir(out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::Io, "cannot create directory " + dir.string());

        const datagen::CorpusFile classification{std::string(datagen::kClassificationKind), seed,
                                                 datagen::generate_classification_corpus(bank, seed)};
        const datagen::CorpusFile qa{std::string(datagen::kQaKind), seed, datagen::generate_qa_corpus(bank, seed)};
        datagen::write_corpus(dir / "classification.jsonl", classification);
        datagen::write_corpus(dir / "qa.jsonl", qa);

        json per_category = json::object();
        for (auto c : nlu::kCategories) per_category[std::string(nlu::category_name(c))] = 0;
        for (const auto& t : bank.templates) per_category[std::string(nlu::category_name(t.category))] =
            per_category[std::string(nlu::category_name(t.category))].get<int>() + 1;
        const json manifest{{"c4q_manifest", 1},
                            {"seed", seed},
                            {"templates", per_category},
                            {"classification", {{"file", "classification.jsonl"}, {"count", classification.examples.size()}}},
                            {"qa", {{"file", "qa.jsonl"}, {"count", qa.examples.size()}}}};
        const std::string text = manifest.dump(2) + "\n";
        write_file(dir / "manifest.json", text);
        if (out_manifest_json) *out_manifest_json = dup(text);
    });
}

c4q_status c4q_model_train(const char* corpus_path, double ratio, uint64_t seed, c4q_model** out_model,
                           char** out_report_json) {
    return guard([&] {
        require(corpus_path, "corpus_path");
        require(out_model, "out_model");
        const auto corpus = datagen::read_corpus(corpus_path);
        const auto parts = datagen::split(corpus.examples, ratio, seed);
        auto model = std::make_shared<const nlu::ClassifierModel>(datagen::train_classifier(parts.train));
        std::string report;
        if (out_report_json) {
            json j = datagen::to_json(datagen::evaluate_classifier(*model, parts.eval));
            j["train_size"] = parts.train.size();
            j["ratio"] = ratio;
            j["seed"] = seed;
            report = j.dump(2);
        }
        *out_model = new c4q_model{std::move(model)};
        if (out_report_json) *out_report_json = dup(report);
    });
}

c4q_status c4q_model_builtin(uint64_t seed, c4q_model** out_model) {
    return guard([&] {
        require(out_model, "out_model");
        const auto corpus = datagen::generate_classification_corpus(datagen::builtin_template_bank(), seed);
        *out_model = new c4q_model{std::make_shared<const nlu::ClassifierModel>(datagen::train_classifier(corpus))};
    });
}

c4q_status c4q_model_load(const char* path, c4q_model** out_model) {
    return guard([&] {
        require(path, "path");
        require(out_model, "out_model");
        json doc;
        try {
            doc = json::parse(read_file(path));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::InvalidArgument, std::string(path) + " is not a model file: " + e.what());
        }
        *out_model = new c4q_model{std::make_shared<const nlu::ClassifierModel>(nlu::ClassifierModel::from_json(doc))};
    });
}

c4q_status c4q_model_save(const c4q_model* model, const char* path) {
    return guard([&] {
        require(model, "model");
        require(path, "path");
        write_file(path, model->model->serialize());
    });
}

c4q_status c4q_model_serialize(const c4q_model* model, char** out_json) {
    return guard([&] {
        require(model, "model");
        require(out_json, "out_json");
        *out_json = dup(model->model->serialize());
    });
}

void c4q_model_free(c4q_model* model) { delete model; }

c4q_status c4q_evaluate(const c4q_model* model, const char* corpus_path, double ratio, uint64_t seed,
                        char** out_report_json) {
    return guard([&] {
        require(corpus_path, "corpus_path");
        require(out_report_json, "out_report_json");
        const auto corpus = datagen::read_corpus(corpus_path);
        if (ratio < 0.0) ratio = corpus.kind == datagen::kQaKind ? 0.5 : 0.8;
        std::vector<datagen::LabeledExample> held_out =
            ratio == 0.0 ? corpus.examples : datagen::split(corpus.examples, ratio, seed).eval;
        json report;
        if (corpus.kind == datagen::kQaKind) {
            report = datagen::to_json(datagen::evaluate_extractor(held_out));
        } else {
            require(model, "model");
            report = datagen::to_json(datagen::evaluate_classifier(*model->model, held_out));
        }
        report["corpus"] = corpus_path;
        report["ratio"] = ratio;
        report["seed"] = seed;
        *out_report_json = dup(report.dump(2));
    });
}

c4q_status c4q_interpret(const c4q_model* model, const char* text, char** out_json) {
    return guard([&] {
        require(model, "model");
        require(text, "text");
        require(out_json, "out_json");
        *out_json = dup(nlu::to_json(nlu::interpret(*model->model, text)).dump());
    });
}

c4q_status c4q_service_create(const c4q_model* model, const char* data_dir, c4q_service** out_service) {
    return guard([&] {
        require(model, "model");
        require(out_service, "out_service");
        std::shared_ptr<chat::SessionStore> store;
        std::shared_ptr<chat::TrainingLog> log;
        if (data_dir) {
            store = std::make_shared<chat::FileSessionStore>(fs::path(data_dir) / "sessions");
            log = std::make_shared<chat::TrainingLog>(fs::path(data_dir) / "training_log.jsonl");
        } else {
            store = std::make_shared<chat::MemorySessionStore>();
            log = std::make_shared<chat::TrainingLog>();
        }
        *out_service = new c4q_service{std::make_shared<chat::ChatService>(model->model, store, log)};
    });
}

void c4q_service_free(c4q_service* service) { delete service; }

c4q_status c4q_service_create_session(c4q_service* service, char** out_json) {
    return guard([&] {
        require(service, "service");
        require(out_json, "out_json");
        const auto created = service->service->create_session();
        *out_json = dup(json{{"session_id", created.id}, {"greeting", chat::to_json(created.greeting)}}.dump());
    });
}

c4q_status c4q_service_post_message(c4q_service* service, const char* session_id, const char* text, char** out_json) {
    return guard([&] {
        require(service, "service");
        require(session_id, "session_id");
        require(text, "text");
        require(out_json, "out_json");
        *out_json = dup(json{{"messages", messages_json(service->service->post_message(session_id, text))}}.dump());
    });
}

c4q_status c4q_service_list_messages(c4q_service* service, const char* session_id, char** out_json) {
    return guard([&] {
        require(service, "service");
        require(session_id, "session_id");
        require(out_json, "out_json");
        *out_json = dup(json{{"messages", messages_json(service->service->list_messages(session_id))}}.dump());
    });
}

c4q_status c4q_service_end_session(c4q_service* service, const char* session_id) {
    return guard([&] {
        require(service, "service");
        require(session_id, "session_id");
        service->service->end_session(session_id);
    });
}

c4q_status c4q_service_training_log_size(const c4q_service* service, size_t* out_size) {
    return guard([&] {
        require(service, "service");
        require(out_size, "out_size");
        *out_size = service->service->training_log().size();
    });
}

c4q_status c4q_service_handle_http(c4q_service* service, const char* method, const char* path, const char* body,
                                   int* out_status, char** out_body) {
    return guard([&] {
        require(service, "service");
        require(method, "method");
        require(path, "path");
        require(out_status, "out_status");
        require(out_body, "out_body");
        const auto response = chat::handle_request(*service->service, method, path, body ? body : "");
        *out_body = dup(response.body);
        *out_status = response.status;
    });
}

c4q_status c4q_server_create(c4q_service* service, const char* listen, c4q_server** out_server) {
    return guard([&] {
        require(service, "service");
        require(listen, "listen");
        require(out_server, "out_server");
        auto server = std::make_unique<chat::HttpServer>(*service->service);
        server->bind(chat::parse_listen_address(listen));
        *out_server = new c4q_server{std::move(server)};
    });
}

int c4q_server_port(const c4q_server* server) { return server ? server->server->port() : -1; }

c4q_status c4q_server_run(c4q_server* server) {
    return guard([&] {
        require(server, "server");
        server->server->run();
    });
}

void c4q_server_stop(c4q_server* server) {
    if (server) server->server->stop();
}

void c4q_server_free(c4q_server* server) { delete server; }

} // extern "C"
