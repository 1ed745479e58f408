#include "datagen/harness.hpp"

#include "common/error.hpp"
#include "common/rng.hpp"
#include "engine/gates.hpp"
#include "nlu/interpret.hpp"

#include <cmath>
#include <numeric>

namespace c4q::datagen {

using nlohmann::json;

namespace {

constexpr double kAngleTol = 1e-9;

json failure_json(const Failure& f) { return json{{"text", f.text}, {"expected", f.expected}, {"got", f.got}}; }

bool same_angle(std::optional<double> got, double want) { return got && std::abs(*got - want) <= kAngleTol; }

} // namespace

SplitCorpus split(std::span<const LabeledExample> corpus, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw Error(ErrorCode::InvalidArgument, "split ratio must lie strictly between 0 and 1");
    if (corpus.size() < 10)
        throw Error(ErrorCode::CorpusTooSmall,
                    "a corpus of " + std::to_string(corpus.size()) + " examples is too small to split");
    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    SeededRng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));

    const auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(corpus.size())));
    SplitCorpus out;
    out.seed = seed;
    out.ratio = ratio;
    out.train.reserve(n_train);
    out.eval.reserve(corpus.size() - n_train);
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < n_train ? out.train : out.eval).push_back(corpus[order[i]]);
    return out;
}

nlu::ClassifierModel train_classifier(std::span<const LabeledExample> train) {
    if (train.empty()) throw Error(ErrorCode::DegenerateCorpus, "training set is empty");
    nlu::ClassifierModel::Builder builder(1.0);
    for (const auto& e : train) builder.add(nlu::normalize(e.text).tokens, e.category);
    return builder.build();
}

ClassificationMetrics evaluate_classifier(const nlu::ClassifierModel& model, std::span<const LabeledExample> eval) {
    if (eval.empty()) throw Error(ErrorCode::InvalidArgument, "evaluation set is empty");
    ClassificationMetrics m;
    m.total = eval.size();
    for (const auto& e : eval) {
        const auto predicted = model.classify(nlu::normalize(e.text)).category;
        ++m.confusion[static_cast<std::size_t>(e.category)][static_cast<std::size_t>(predicted)];
        if (predicted != e.category)
            m.failures.push_back({e.text, nlu::category_name(e.category), nlu::category_name(predicted)});
    }
    m.accuracy = 1.0 - static_cast<double>(m.failures.size()) / static_cast<double>(m.total);
    return m;
}

ExtractionMetrics evaluate_extractor(std::span<const LabeledExample> eval) {
    if (eval.empty()) throw Error(ErrorCode::InvalidArgument, "evaluation set is empty");
    ExtractionMetrics m;
    m.total = eval.size();
    for (const auto& e : eval) {
        const json expected = to_json(e)["truth"];
        nlu::ParsedQuery q;
        try {
            q = nlu::extract_query(nlu::normalize(e.text), e.category);
        } catch (const Error& err) {
            ++m.slot_errors["error"];
            m.failures.push_back({e.text, expected, json{{"error", error_code_name(err.code())}, {"detail", err.what()}}});
            continue;
        }

        std::vector<std::string> wrong;
        if (q.gate != e.truth.gate) wrong.emplace_back("gate");
        if (e.category == nlu::Category::APPLY && e.truth.gate) {
            const bool ok = e.truth.state ? q.initial_state == e.truth.state && !q.is_defaulted(nlu::kSlotInitialState)
                                          : q.is_defaulted(nlu::kSlotInitialState);
            if (!ok) wrong.emplace_back("state");
        }
        if (e.category != nlu::Category::DEFINE && e.truth.gate) {
            const auto kind = engine::gate_spec(*e.truth.gate).param_kind;
            if (kind == engine::ParamKind::Phase) {
                const bool ok = e.truth.phase ? same_angle(q.params.phase, *e.truth.phase) && !q.is_defaulted(nlu::kSlotPhase)
                                              : q.is_defaulted(nlu::kSlotPhase);
                if (!ok) wrong.emplace_back("phase");
            }
            if (kind == engine::ParamKind::Angle) {
                const bool ok = e.truth.angle ? same_angle(q.params.angle, *e.truth.angle) && !q.is_defaulted(nlu::kSlotAngle)
                                              : q.is_defaulted(nlu::kSlotAngle);
                if (!ok) wrong.emplace_back("angle");
            }
        }
        if (e.truth.axis && q.params.axis != e.truth.axis) wrong.emplace_back("axis");

        if (!wrong.empty()) {
            for (const auto& slot : wrong) ++m.slot_errors[slot];
            json got = nlu::to_json(q);
            got.erase("confidence");
            got["wrong_slots"] = wrong;
            m.failures.push_back({e.text, expected, std::move(got)});
        }
    }
    m.accuracy = 1.0 - static_cast<double>(m.failures.size()) / static_cast<double>(m.total);
    return m;
}

json to_json(const ClassificationMetrics& m) {
    json confusion = json::object();
    for (std::size_t r = 0; r < 3; ++r) {
        json row = json::object();
        for (std::size_t c = 0; c < 3; ++c) row[std::string(nlu::category_name(nlu::kCategories[c]))] = m.confusion[r][c];
        confusion[std::string(nlu::category_name(nlu::kCategories[r]))] = std::move(row);
    }
    json failures = json::array();
    for (const auto& f : m.failures) failures.push_back(failure_json(f));
    return json{{"kind", "classification"},
                {"accuracy", m.accuracy},
                {"total", m.total},
                {"failed", m.failures.size()},
                {"confusion", std::move(confusion)},
                {"failures", std::move(failures)}};
}

json to_json(const ExtractionMetrics& m) {
    json failures = json::array();
    for (const auto& f : m.failures) failures.push_back(failure_json(f));
    return json{{"kind", "extraction"},
                {"accuracy", m.accuracy},
                {"total", m.total},
                {"failed", m.failures.size()},
                {"slot_errors", m.slot_errors},
                {"failures", std::move(failures)}};
}

} // namespace c4q::datagen
