#include "c4q/c4q.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <array>
#include <csignal>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <pthread.h>
#include <string>
#include <thread>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

struct Failure {
    int exit_code;
};

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : std::move(fallback);
}

std::string data_dir() { return env_or("C4Q_DATA_DIR", "c4q-data"); }

std::optional<std::string> model_env() {
    const char* v = std::getenv("C4Q_MODEL");
    if (v && *v) return std::string(v);
    return std::nullopt;
}

// Prints the library's error and unwinds to main with the mapped exit code.
void check(c4q_status status) {
    if (status == C4Q_OK) return;
    std::cerr << "c4q: " << c4q_status_name(status) << ": " << c4q_last_error() << "\n";
    throw Failure{status == C4Q_ERR_IO ? kExitIo : kExitData};
}

struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { c4q_string_free(p); }
    [[nodiscard]] std::string str() const { return p ? std::string(p) : std::string(); }
};

using ModelPtr = std::unique_ptr<c4q_model, decltype(&c4q_model_free)>;
using ServicePtr = std::unique_ptr<c4q_service, decltype(&c4q_service_free)>;

// Explicit path, then C4Q_MODEL, then a model trained in-process on the
// built-in templates with seed 0.
ModelPtr resolve_model(const std::string& flag) {
    c4q_model* raw = nullptr;
    std::optional<std::string> path = flag.empty() ? model_env() : std::optional(flag);
    if (path)
        check(c4q_model_load(path->c_str(), &raw));
    else
        check(c4q_model_builtin(0, &raw));
    return {raw, c4q_model_free};
}

void write_report(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text << "\n";
    if (!out) {
        std::cerr << "c4q: io_error: cannot write " << path.string() << "\n";
        throw Failure{kExitIo};
    }
}

void print_metrics(const json& report) {
    std::cout << report.at("kind").get<std::string>() << " accuracy: " << report.at("accuracy").get<double>() << " ("
              << report.at("total").get<std::size_t>() - report.at("failed").get<std::size_t>() << "/"
              << report.at("total").get<std::size_t>() << ")\n";
    if (report.contains("confusion")) {
        std::cout << "confusion (rows expected, columns predicted):\n";
        constexpr std::array<const char*, 3> order{"DEFINE", "DRAW", "APPLY"};
        const json& confusion = report["confusion"];
        for (const char* expected : order) {
            std::cout << "  " << expected << ":";
            for (const char* predicted : order)
                std::cout << " " << predicted << "=" << confusion.at(expected).at(predicted).get<std::size_t>();
            std::cout << "\n";
        }
    }
    if (report.contains("slot_errors") && !report["slot_errors"].empty()) {
        std::cout << "slot errors:";
        for (const auto& [slot, n] : report["slot_errors"].items()) std::cout << " " << slot << "=" << n.get<std::size_t>();
        std::cout << "\n";
    }
}

int cmd_gen(std::uint64_t seed, const std::string& out, const std::string& templates) {
    OwnedString manifest;
    check(c4q_generate(seed, out.c_str(), templates.empty() ? nullptr : templates.c_str(), &manifest.p));
    const json m = json::parse(manifest.str());
    std::cout << "wrote " << m["classification"]["count"].get<std::size_t>() << " classification and "
              << m["qa"]["count"].get<std::size_t>() << " QA examples (seed " << seed << ") to " << out << "\n";
    return kExitOk;
}

int cmd_train(const std::string& corpus, const std::string& out, std::uint64_t seed, double ratio) {
    c4q_model* raw = nullptr;
    OwnedString report;
    check(c4q_model_train(corpus.c_str(), ratio, seed, &raw, &report.p));
    ModelPtr model(raw, c4q_model_free);
    std::error_code ec;
    if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path(), ec);
    check(c4q_model_save(model.get(), out.c_str()));
    const json r = json::parse(report.str());
    std::cout << "model written to " << out << "\n";
    std::cout << "held-out ";
    print_metrics(r);
    return kExitOk;
}

int cmd_eval(const std::string& model_path, const std::string& corpus, double ratio, std::uint64_t seed,
             const std::string& report_path) {
    const ModelPtr model = resolve_model(model_path);
    OwnedString report;
    check(c4q_evaluate(model.get(), corpus.c_str(), ratio, seed, &report.p));
    write_report(report_path, report.str());
    const json r = json::parse(report.str());
    print_metrics(r);
    std::cout << r["failures"].size() << " failures listed in " << report_path << "\n";
    return kExitOk;
}

struct Chat {
    ServicePtr service;
    std::string session;

    explicit Chat(const c4q_model* model, const char* dir) : service(nullptr, c4q_service_free) {
        c4q_service* raw = nullptr;
        check(c4q_service_create(model, dir, &raw));
        service.reset(raw);
        OwnedString created;
        check(c4q_service_create_session(service.get(), &created.p));
        const json j = json::parse(created.str());
        session = j["session_id"].get<std::string>();
        greeting = j["greeting"]["text"].get<std::string>();
    }
    ~Chat() {
        if (service) c4q_service_end_session(service.get(), session.c_str());
    }

    json post(const std::string& text) {
        OwnedString out;
        check(c4q_service_post_message(service.get(), session.c_str(), text.c_str(), &out.p));
        return json::parse(out.str())["messages"];
    }

    std::string greeting;
};

// One question through the chat protocol. With --yes the confirmation is
// answered automatically and only the answer is printed.
int cmd_ask(const std::string& text, bool yes, const std::string& model_path) {
    const ModelPtr model = resolve_model(model_path);
    Chat chat(model.get(), nullptr);
    json replies = chat.post(text);
    for (;;) {
        const json& last = replies.back();
        const std::string kind = last["kind"].get<std::string>();
        if (kind != "CONFIRMATION" && kind != "PROMPT") {
            std::cout << last["text"].get<std::string>() << "\n";
            return kExitOk;
        }
        std::string reply;
        if (yes) {
            reply = "yes";
        } else {
            std::cout << last["text"].get<std::string>() << "\n> " << std::flush;
            do {
                if (!std::getline(std::cin, reply)) return kExitOk;
            } while (reply.find_first_not_of(" \t\r") == std::string::npos);
        }
        replies = chat.post(reply);
    }
}

int cmd_chat(const std::string& model_path) {
    const ModelPtr model = resolve_model(model_path);
    Chat chat(model.get(), nullptr);
    std::cout << chat.greeting << "\n";
    std::string line;
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        if (line == "quit" || line == "exit") break;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        for (const auto& m : chat.post(line)) std::cout << m["text"].get<std::string>() << "\n";
    }
    return kExitOk;
}

int cmd_serve(const std::string& listen, const std::string& model_path, const std::string& dir) {
    const ModelPtr model = resolve_model(model_path);
    c4q_service* raw_service = nullptr;
    check(c4q_service_create(model.get(), dir.c_str(), &raw_service));
    ServicePtr service(raw_service, c4q_service_free);

    // Signals are taken synchronously by a watcher thread; the mask is set
    // before any thread starts so the server threads inherit it.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    c4q_server* raw_server = nullptr;
    check(c4q_server_create(service.get(), listen.c_str(), &raw_server));
    std::unique_ptr<c4q_server, decltype(&c4q_server_free)> server(raw_server, c4q_server_free);
    std::cout << "serving on port " << c4q_server_port(server.get()) << " (data in " << dir << ")" << std::endl;

    std::thread watcher([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        c4q_server_stop(server.get());
    });
    const c4q_status status = c4q_server_run(server.get());
    pthread_kill(watcher.native_handle(), SIGTERM);
    watcher.join();
    check(status);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"C4Q: define, draw and apply quantum gates from natural-language questions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(c4q_version()));

    const std::string dir = data_dir();

    std::uint64_t gen_seed = 0;
    std::string gen_out = dir;
    std::string gen_templates;
    auto* gen = app.add_subcommand("gen", "Generate the classification and QA corpora");
    gen->add_option("--seed", gen_seed, "Generation seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory (C4Q_DATA_DIR)")->capture_default_str();
    gen->add_option("--templates", gen_templates, "Template bank JSON (built-in when omitted)");

    std::string train_corpus = (fs::path(dir) / "classification.jsonl").string();
    std::string train_out = model_env().value_or((fs::path(dir) / "model.json").string());
    std::uint64_t train_seed = 0;
    double train_ratio = 0.8;
    auto* train = app.add_subcommand("train", "Train the classifier and report held-out accuracy");
    train->add_option("--corpus", train_corpus, "Classification corpus")->capture_default_str();
    train->add_option("--out", train_out, "Model file (C4Q_MODEL)")->capture_default_str();
    train->add_option("--seed", train_seed, "Split seed")->capture_default_str();
    train->add_option("--ratio", train_ratio, "Training share")->capture_default_str()->check(CLI::Range(0.0, 1.0));

    std::string eval_model;
    std::string eval_corpus = (fs::path(dir) / "classification.jsonl").string();
    double eval_ratio = -1.0;
    std::uint64_t eval_seed = 0;
    std::string eval_report;
    auto* eval = app.add_subcommand("eval", "Score a model or the slot extractor on a corpus");
    eval->add_option("--model", eval_model, "Model file (C4Q_MODEL, else built-in)");
    eval->add_option("--corpus", eval_corpus, "Classification or QA corpus")->capture_default_str();
    eval->add_option("--ratio", eval_ratio, "Training share to skip; 0 scores everything (default 0.8 or 0.5 by kind)");
    eval->add_option("--seed", eval_seed, "Split seed")->capture_default_str();
    eval->add_option("--report", eval_report, "Report file (default <data dir>/eval_<corpus>.json)");

    std::string ask_text;
    bool ask_yes = false;
    std::string ask_model;
    auto* ask = app.add_subcommand("ask", "Ask one question");
    ask->add_option("text", ask_text, "Question")->required();
    ask->add_flag("--yes", ask_yes, "Confirm automatically and print only the answer");
    ask->add_option("--model", ask_model, "Model file (C4Q_MODEL, else built-in)");

    std::string chat_model;
    auto* chat = app.add_subcommand("chat", "Interactive chat on the terminal");
    chat->add_option("--model", chat_model, "Model file (C4Q_MODEL, else built-in)");

    std::string serve_listen = env_or("C4Q_LISTEN", "127.0.0.1:8080");
    std::string serve_model;
    std::string serve_dir = dir;
    auto* serve = app.add_subcommand("serve", "Serve the chat HTTP API");
    serve->add_option("--listen", serve_listen, "host:port (C4Q_LISTEN)")->capture_default_str();
    serve->add_option("--model", serve_model, "Model file (C4Q_MODEL, else built-in)");
    serve->add_option("--data-dir", serve_dir, "Sessions and training log (C4Q_DATA_DIR)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return cmd_gen(gen_seed, gen_out, gen_templates);
        if (*train) return cmd_train(train_corpus, train_out, train_seed, train_ratio);
        if (*eval) {
            if (eval_report.empty())
                eval_report = (fs::path(dir) / ("eval_" + fs::path(eval_corpus).stem().string() + ".json")).string();
            return cmd_eval(eval_model, eval_corpus, eval_ratio, eval_seed, eval_report);
        }
        if (*ask) return cmd_ask(ask_text, ask_yes, ask_model);
        if (*chat) return cmd_chat(chat_model);
        if (*serve) return cmd_serve(serve_listen, serve_model, serve_dir);
    } catch (const Failure& f) {
        return f.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "c4q: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
