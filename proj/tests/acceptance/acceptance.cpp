// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Needs C4Q_CLI_PATH, C4Q_SOURCE_DIR and C4Q_UNIT_TESTS (':'-separated) at
// compile time.

#include "chat/http.hpp"
#include "chat/replies.hpp"
#include "chat/service.hpp"
#include "chat/store.hpp"
#include "chat/training_log.hpp"
#include "common/error.hpp"
#include "common/rng.hpp"
#include "datagen/corpus.hpp"
#include "datagen/harness.hpp"
#include "datagen/templates.hpp"
#include "engine/engine.hpp"
#include "nlu/interpret.hpp"
#include "nlu/normalize.hpp"
#include "support/oracle.hpp"

#include "json.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace c4q;
using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kTol = 1e-12;
const double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream out;
    out.precision(precision);
    out << v;
    return out.str();
}

std::string quote(std::string_view s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'') q += "'\\''";
        else q += c;
    }
    return q + "'";
}

struct Run {
    int exit_code = -1;
    std::string out;
};

Run run(const std::string& command) {
    Run r;
    FILE* pipe = popen((command + " 2>/dev/null </dev/null").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Run run_cli(const std::vector<std::string>& args) {
    std::string cmd = "env -u C4Q_MODEL -u C4Q_DATA_DIR " + quote(C4Q_CLI_PATH);
    for (const auto& a : args) cmd += " " + quote(a);
    return run(cmd);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class ScratchDir {
public:
    ScratchDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("c4q-accept-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
    [[nodiscard]] fs::path operator/(std::string_view name) const { return path_ / name; }
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::vector<std::string> unit_test_binaries() {
    std::vector<std::string> out;
    std::string all = C4Q_UNIT_TESTS;
    std::size_t start = 0;
    while (start <= all.size()) {
        const auto end = all.find(':', start);
        const auto piece = all.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!piece.empty()) out.push_back(piece);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

// ------------------------------------------------------------------ engine

double max_diff(const engine::UnitaryMatrix& a, const engine::UnitaryMatrix& b) { return a.max_abs_diff(b); }

engine::GateParams params_for(const engine::GateSpec& g, double v) {
    engine::GateParams p;
    if (g.param_kind == engine::ParamKind::Phase) p.phase = v;
    if (g.param_kind == engine::ParamKind::Angle) p.angle = v;
    return p;
}

Outcome engine_correctness() {
    using namespace c4q::engine;
    const auto start = Clock::now();
    std::vector<double> grid;
    for (int k = 0; k <= 16; ++k) grid.push_back(-2 * kPi + k * kPi / 4);

    double worst_unitarity = 0.0, worst_norm = 0.0, worst_identity = 0.0, worst_oracle = 0.0;
    std::size_t gates = 0, oracle_cases = 0, identity_checks = 0;

    for (const auto& g : all_gates()) {
        ++gates;
        const bool param = g.param_kind != ParamKind::None;
        const std::vector<double> values = param ? grid : std::vector<double>{0.0};
        for (double v : values) {
            const auto params = params_for(g, v);
            const auto u = gate_matrix(g, params);
            worst_unitarity = std::max(worst_unitarity, max_diff(u.adjoint() * u, UnitaryMatrix::identity(u.dim())));
            for (auto s : all_states()) {
                if (state_qubits(s) != g.arity) continue;
                const auto result = apply(g, params, s);
                double norm = 0.0;
                for (const auto& a : result.state.amplitudes) norm += std::norm(a);
                worst_norm = std::max(worst_norm, std::abs(std::sqrt(norm) - 1.0));
                const auto expected = oracle::apply(oracle::gate(g.key, v), oracle::state(state_key(s)));
                for (std::size_t i = 0; i < expected.size(); ++i)
                    worst_oracle = std::max(worst_oracle, std::abs(result.state.amplitudes[i] - expected[i]));
                ++oracle_cases;
            }
        }
    }

    const auto m = [](GateId id, std::optional<double> v = std::nullopt) {
        const auto& g = gate_spec(id);
        return gate_matrix(g, v ? params_for(g, *v) : GateParams{});
    };
    const auto identity = [&](const UnitaryMatrix& a, const UnitaryMatrix& b) {
        worst_identity = std::max(worst_identity, max_diff(a, b));
        ++identity_checks;
    };
    const auto I2 = UnitaryMatrix::identity(2);
    const auto I4 = UnitaryMatrix::identity(4);
    identity(m(GateId::H) * m(GateId::H), I2);
    identity(m(GateId::X) * m(GateId::X), I2);
    identity(m(GateId::Y) * m(GateId::Y), I2);
    identity(m(GateId::Z) * m(GateId::Z), I2);
    identity(m(GateId::S) * m(GateId::S), m(GateId::Z));
    identity(m(GateId::S) * m(GateId::SDG), I2);
    identity(m(GateId::RX, 0.0), I2);
    identity(m(GateId::RY, 0.0), I2);
    identity(m(GateId::RZ, 0.0), I2);
    identity(m(GateId::CNOT) * m(GateId::CNOT), I4);
    identity(m(GateId::CZ) * m(GateId::CZ), I4);
    identity(m(GateId::SWAP) * m(GateId::SWAP), I4);
    for (double a : grid) {
        for (double b : grid) identity(m(GateId::P, a) * m(GateId::P, b), m(GateId::P, a + b));
        identity(m(GateId::RZ, a), m(GateId::P, a).scaled(std::polar(1.0, -a / 2)));
    }

    const double elapsed = seconds_since(start);
    Outcome o;
    o.pass = gates == 14 && worst_unitarity < kTol && worst_norm < kTol && worst_identity < kTol && worst_oracle < kTol
             && elapsed < 5.0;
    o.detail = std::to_string(gates) + " gates, 17-point grid; max |U†U-I| " + fmt(worst_unitarity) + ", max norm error "
               + fmt(worst_norm) + ", " + std::to_string(identity_checks) + " identities max " + fmt(worst_identity)
               + ", " + std::to_string(oracle_cases) + " oracle cases max " + fmt(worst_oracle) + ", "
               + fmt(elapsed, 3) + " s";
    return o;
}

// ------------------------------------------------------------------ golden

Outcome golden_scenarios() {
    const fs::path dir = fs::path(C4Q_SOURCE_DIR) / "tests" / "golden";
    const std::array<std::pair<const char*, const char*>, 3> cases{{
        {"define the pauli z", "define_z.txt"},
        {"draw the pauli z", "draw_z.txt"},
        {"apply the pauli z on |1>", "apply_z_ket1.txt"},
    }};
    Outcome o{true, ""};
    std::string apply_out;
    for (const auto& [question, file] : cases) {
        const auto r = run_cli({"ask", question, "--yes"});
        const auto expected = slurp(dir / file);
        const bool ok = r.exit_code == 0 && !expected.empty() && r.out == expected;
        if (!ok) o.pass = false;
        o.detail += std::string(file) + (ok ? " ok; " : " MISMATCH; ");
        if (std::string(file) == "apply_z_ket1.txt") apply_out = r.out;
    }
    const auto define_text = slurp(dir / "define_z.txt");
    const bool has_diag = define_text.find("diag(1, −1)") != std::string::npos;
    const bool has_minus_one = apply_out.find("−|1⟩") != std::string::npos;
    o.pass = o.pass && has_diag && has_minus_one;
    o.detail += std::string("definition shows diag(1, −1): ") + (has_diag ? "yes" : "no")
                + "; answer contains −|1⟩: " + (has_minus_one ? "yes" : "no");
    return o;
}

// ---------------------------------------------------------- classification

Outcome classification_accuracy() {
    const auto corpus = datagen::generate_classification_corpus(datagen::builtin_template_bank(), 0);
    const auto parts = datagen::split(corpus, 0.8, 0);
    const auto model = datagen::train_classifier(parts.train);
    const auto metrics = datagen::evaluate_classifier(model, parts.eval);
    Outcome o;
    o.pass = corpus.size() >= 1000 && metrics.accuracy >= 0.98;
    o.detail = "corpus " + std::to_string(corpus.size()) + " (seed 0), 80/20 split, held-out accuracy "
               + fmt(metrics.accuracy) + " (" + std::to_string(metrics.total - metrics.failures.size()) + "/"
               + std::to_string(metrics.total) + ")";
    return o;
}

// -------------------------------------------------------------- extraction

Outcome extraction_accuracy() {
    const auto corpus = datagen::generate_qa_corpus(datagen::builtin_template_bank(), 0);
    const auto parts = datagen::split(corpus, 0.5, 0);
    const auto metrics = datagen::evaluate_extractor(parts.eval);
    const auto report = datagen::to_json(metrics);
    const fs::path report_path = fs::current_path() / "acceptance_extraction_report.json";
    std::ofstream(report_path) << report.dump(2) << "\n";

    // The report must enumerate every miss: recount independently.
    std::size_t misses = 0;
    for (const auto& e : parts.eval) {
        try {
            const auto q = nlu::extract_query(nlu::normalize(e.text), e.category);
            bool ok = q.gate == e.truth.gate;
            if (e.category == nlu::Category::APPLY && e.truth.gate)
                ok = ok && (e.truth.state ? q.initial_state == e.truth.state : q.is_defaulted(nlu::kSlotInitialState));
            if (e.truth.gate == engine::GateId::P)
                ok = ok && (e.truth.phase ? (q.params.phase && std::abs(*q.params.phase - *e.truth.phase) < 1e-9)
                                          : q.is_defaulted(nlu::kSlotPhase));
            else
                ok = ok && (e.truth.angle ? (q.params.angle && std::abs(*q.params.angle - *e.truth.angle) < 1e-9)
                                          : q.is_defaulted(nlu::kSlotAngle));
            if (e.truth.axis) ok = ok && q.params.axis == e.truth.axis;
            if (!ok) ++misses;
        } catch (const Error&) {
            ++misses;
        }
    }
    const auto listed = report.at("failures").size();
    Outcome o;
    o.pass = parts.eval.size() >= 2000 && metrics.accuracy >= 0.98 && listed == misses;
    o.detail = std::to_string(parts.eval.size()) + " held-out QA examples of " + std::to_string(corpus.size())
               + ", whole-example accuracy " + fmt(metrics.accuracy) + ", " + std::to_string(listed)
               + " failures listed, " + std::to_string(misses) + " recounted; report " + report_path.filename().string();
    return o;
}

// -------------------------------------------------------------------- fuzz

Outcome dialogue_fuzz() {
    using namespace c4q::chat;
    ScratchDir dir;
    const auto corpus = datagen::generate_classification_corpus(datagen::builtin_template_bank(), 0);
    auto model = std::make_shared<const nlu::ClassifierModel>(datagen::train_classifier(datagen::split(corpus, 0.8, 0).train));
    auto store = std::make_shared<FileSessionStore>(dir / "sessions");
    auto log = std::make_shared<TrainingLog>(dir / "training_log.jsonl");
    ChatService service(model, store, log);

    // Questions come from the corpus, replies from the lexicons plus noise.
    const std::vector<std::string> replies{"yes", "y", "correct", "right", "Yes!", "no", "n", "wrong", "No.",
                                           "maybe", "what?", "sure", "yes no", "42", "apply it"};
    const std::vector<std::string> extra{"apply the toffoli gate", "apply x and z", "apply cnot to |1>", "hello"};
    SeededRng rng(500);

    std::size_t gate_violations = 0, affirmations = 0;
    std::vector<std::string> ended;
    for (int s = 0; s < 500; ++s) {
        const auto id = service.create_session().id;
        const auto turns = 1 + rng.below(10);
        for (std::uint64_t t = 0; t < turns; ++t) {
            std::string text;
            switch (rng.below(3)) {
            case 0: text = corpus[rng.below(corpus.size())].text; break;
            case 1: text = extra[rng.below(extra.size())]; break;
            default: text = replies[rng.below(replies.size())]; break;
            }
            const bool awaiting = service.session_state(id) == SessionState::AWAITING_CONFIRMATION;
            if (awaiting && classify_reply(text) == Reply::AFFIRMATIVE) ++affirmations;
            (void)service.post_message(id, text);
        }
        // Confirmation gate: every answer directly follows an affirmative user
        // reply, which follows a confirmation or a yes/no prompt.
        const auto msgs = service.list_messages(id);
        for (std::size_t i = 0; i < msgs.size(); ++i) {
            if (msgs[i].kind != MessageKind::ANSWER) continue;
            const bool user_yes = i >= 2 && msgs[i - 1].sender == Sender::USER
                                  && classify_reply(msgs[i - 1].text) == Reply::AFFIRMATIVE;
            const bool asked = i >= 2 && (msgs[i - 2].kind == MessageKind::CONFIRMATION || msgs[i - 2].kind == MessageKind::PROMPT);
            if (!user_yes || !asked) ++gate_violations;
        }
        if (rng.below(2) == 0) {
            service.end_session(id);
            ended.push_back(id);
        }
    }

    const std::size_t on_disk = read_training_log(dir / "training_log.jsonl").size();
    const bool log_ok = log->size() == affirmations && on_disk == affirmations;

    std::size_t leaks = 0;
    for (const auto& id : ended) {
        if (store->get(id) || fs::exists(dir / "sessions" / (id + ".json"))) ++leaks;
        try {
            (void)service.list_messages(id);
            ++leaks;
        } catch (const Error&) {
        }
        if (handle_request(service, "GET", "/api/sessions/" + id + "/messages", "").status != 404) ++leaks;
    }

    Outcome o;
    o.pass = gate_violations == 0 && log_ok && leaks == 0;
    o.detail = "500 sessions; confirmation-gate violations " + std::to_string(gate_violations) + "; log records "
               + std::to_string(log->size()) + " (file " + std::to_string(on_disk) + ") for "
               + std::to_string(affirmations) + " affirmations; " + std::to_string(ended.size())
               + " ended sessions, " + std::to_string(leaks) + " retrievable";
    return o;
}

// -------------------------------------------------------------- test count

const std::vector<std::string> kPublicOperations{
    "lookup_gate", "gate_matrix", "state_vector", "define", "draw", "apply", "format_state",
    "normalize", "classify", "extract_gate", "extract_state", "extract_phase", "extract_rotation", "interpret",
    "generate_classification_corpus", "generate_qa_corpus", "split", "train_classifier", "evaluate_classifier",
    "evaluate_extractor",
    "create_session", "post_message", "list_messages", "end_session",
    "cmd_gen", "cmd_train", "cmd_eval", "cmd_ask", "cmd_serve",
};

std::vector<std::string> list_test_names(const std::string& binary) {
    const auto r = run(quote(binary) + " --list-test-cases");
    std::vector<std::string> names;
    std::istringstream in(r.out);
    std::string line;
    int rules = 0;
    while (std::getline(in, line)) {
        if (line.rfind("=====", 0) == 0) {
            ++rules;
            continue;
        }
        if (rules == 1 && !line.empty()) names.push_back(line);
    }
    return names;
}

Outcome test_count() {
    std::vector<std::string> names;
    for (const auto& b : unit_test_binaries()) {
        const auto n = list_test_names(b);
        names.insert(names.end(), n.begin(), n.end());
    }
    std::vector<std::string> uncovered;
    for (const auto& op : kPublicOperations) {
        const bool covered = std::any_of(names.begin(), names.end(),
                                         [&](const std::string& n) { return n.rfind(op + ":", 0) == 0; });
        if (!covered) uncovered.push_back(op);
    }
    Outcome o;
    o.pass = names.size() >= 151 && uncovered.empty();
    o.detail = std::to_string(names.size()) + " test cases across " + std::to_string(unit_test_binaries().size())
               + " suites; " + std::to_string(kPublicOperations.size() - uncovered.size()) + "/"
               + std::to_string(kPublicOperations.size()) + " public operations covered";
    for (const auto& op : uncovered) o.detail += "; missing " + op;
    return o;
}

// ------------------------------------------------------------- determinism

Outcome determinism() {
    ScratchDir a, b;
    bool ok = run_cli({"gen", "--seed", "0", "--out", a.path().string()}).exit_code == 0
              && run_cli({"gen", "--seed", "0", "--out", b.path().string()}).exit_code == 0;
    std::size_t identical = 0, compared = 0;
    for (auto name : {"classification.jsonl", "qa.jsonl", "manifest.json"}) {
        ++compared;
        const auto x = slurp(a / name);
        if (!x.empty() && x == slurp(b / name)) ++identical;
    }
    ok = ok
         && run_cli({"train", "--corpus", (a / "classification.jsonl").string(), "--out", (a / "model.json").string(),
                     "--seed", "0"})
                    .exit_code
                == 0
         && run_cli({"train", "--corpus", (b / "classification.jsonl").string(), "--out", (b / "model.json").string(),
                     "--seed", "0"})
                    .exit_code
                == 0;
    ++compared;
    if (!slurp(a / "model.json").empty() && slurp(a / "model.json") == slurp(b / "model.json")) ++identical;
    Outcome o;
    o.pass = ok && identical == compared;
    o.detail = std::to_string(identical) + "/" + std::to_string(compared)
               + " files byte-identical across two seed-0 runs (two corpora, manifest, model)";
    return o;
}

// ----------------------------------------------------------------- runtime

Outcome total_runtime(double own_seconds) {
    const auto start = Clock::now();
    std::size_t failed = 0;
    for (const auto& b : unit_test_binaries())
        if (run(quote(b)).exit_code != 0) ++failed;
    const double units = seconds_since(start);
    const double total = units + own_seconds;
    Outcome o;
    o.pass = failed == 0 && total < 60.0;
    o.detail = "unit suites " + fmt(units, 3) + " s (" + std::to_string(failed) + " failing) + acceptance checks "
               + fmt(own_seconds, 3) + " s = " + fmt(total, 3) + " s";
    return o;
}

} // namespace

int main() {
    const auto start = Clock::now();
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"engine-correctness", engine_correctness},
        {"golden-scenarios", golden_scenarios},
        {"classification-accuracy", classification_accuracy},
        {"extraction-accuracy", extraction_accuracy},
        {"dialogue-fuzz", dialogue_fuzz},
        {"test-count", test_count},
        {"determinism", determinism},
    };
    int failures = 0;
    const auto report = [&](const char* name, const Outcome& o) {
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
        if (!o.pass) ++failures;
    };
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        report(c.name, o);
    }
    report("total-runtime", total_runtime(seconds_since(start)));
    return failures == 0 ? 0 : 1;
}
