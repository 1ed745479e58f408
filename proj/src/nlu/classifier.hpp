#pragma once

#include "nlu/normalize.hpp"
#include "nlu/query.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace c4q::nlu {

struct Classification {
    Category category;
    std::array<double, 3> log_scores;     ///< unnormalized log posterior, kCategories order
    std::array<double, 3> probabilities;  ///< softmax of log_scores
};

/// Multinomial token-count classifier with additive (Laplace) smoothing.
/// Immutable once built; classify is const and thread-safe.
class ClassifierModel {
public:
    static constexpr int kFormatVersion = 1;

    /// Accumulates token counts; build() freezes them into a model.
    class Builder {
    public:
        explicit Builder(double alpha = 1.0) : alpha_(alpha) {}
        void add(std::span<const std::string> tokens, Category category);
        /// Throws DegenerateCorpus when a category has no documents.
        [[nodiscard]] ClassifierModel build() const;

    private:
        double alpha_;
        std::array<std::map<std::string, std::uint64_t, std::less<>>, 3> counts_;
        std::array<std::uint64_t, 3> documents_{};
    };

    /// Argmax of the log posterior; ties go to the earlier of DEFINE, DRAW, APPLY.
    [[nodiscard]] Classification classify(const NormalizedText& text) const;

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::array<double, 3>& priors() const noexcept { return priors_; }
    [[nodiscard]] std::size_t vocabulary_size() const noexcept { return vocabulary_.size(); }
    /// Count of `token` in category c, 0 for unknown tokens.
    [[nodiscard]] std::uint64_t count(Category c, std::string_view token) const;

    /// {version, alpha, priors, vocabulary, counts}
    [[nodiscard]] nlohmann::json to_json() const;
    /// Throws VersionMismatch for another format version, InvalidArgument for
    /// structurally broken documents.
    [[nodiscard]] static ClassifierModel from_json(const nlohmann::json& j);

    /// Canonical bytes written to model files.
    [[nodiscard]] std::string serialize() const;

    friend bool operator==(const ClassifierModel&, const ClassifierModel&) = default;

private:
    ClassifierModel() = default;
    void finalize_totals();

    double alpha_ = 1.0;
    std::map<std::string, std::size_t, std::less<>> vocabulary_;
    std::array<std::vector<std::uint64_t>, 3> counts_;
    std::array<double, 3> priors_{};
    std::array<std::uint64_t, 3> totals_{};
};

} // namespace c4q::nlu
