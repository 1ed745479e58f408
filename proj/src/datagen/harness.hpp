#pragma once

#include "datagen/corpus.hpp"
#include "nlu/classifier.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace c4q::datagen {

struct SplitCorpus {
    std::vector<LabeledExample> train;
    std::vector<LabeledExample> eval;
    std::uint64_t seed = 0;
    double ratio = 0.0;
};

/// Seeded Fisher-Yates shuffle, then the first round(ratio * n) examples
/// train. Throws CorpusTooSmall below 10 examples, InvalidArgument unless
/// 0 < ratio < 1.
[[nodiscard]] SplitCorpus split(std::span<const LabeledExample> corpus, double ratio, std::uint64_t seed);

/// Single counting pass. Throws DegenerateCorpus when empty or when a
/// category is missing.
[[nodiscard]] nlu::ClassifierModel train_classifier(std::span<const LabeledExample> train);

struct Failure {
    std::string text;
    nlohmann::json expected;
    nlohmann::json got;
};

struct ClassificationMetrics {
    double accuracy = 0.0;
    std::size_t total = 0;
    std::array<std::array<std::size_t, 3>, 3> confusion{};  ///< [expected][predicted]
    std::vector<Failure> failures;
};

struct ExtractionMetrics {
    double accuracy = 0.0;
    std::size_t total = 0;
    std::map<std::string, std::size_t> slot_errors;  ///< gate, state, phase, angle, axis, error
    std::vector<Failure> failures;
};

/// Throws InvalidArgument on an empty evaluation set.
[[nodiscard]] ClassificationMetrics evaluate_classifier(const nlu::ClassifierModel& model,
                                                        std::span<const LabeledExample> eval);

/// Runs slot filling with the labeled category and compares slot by slot; one
/// wrong slot fails the example. Slots the template left out must come back
/// defaulted. Throws InvalidArgument on an empty evaluation set.
[[nodiscard]] ExtractionMetrics evaluate_extractor(std::span<const LabeledExample> eval);

[[nodiscard]] nlohmann::json to_json(const ClassificationMetrics& m);
[[nodiscard]] nlohmann::json to_json(const ExtractionMetrics& m);

} // namespace c4q::datagen
