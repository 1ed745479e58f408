#include "nlu/classifier.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace c4q::nlu {

using nlohmann::json;

void ClassifierModel::Builder::add(std::span<const std::string> tokens, Category category) {
    const auto c = static_cast<std::size_t>(category);
    ++documents_[c];
    for (const auto& t : tokens) ++counts_[c][t];
}

ClassifierModel ClassifierModel::Builder::build() const {
    for (auto c : kCategories) {
        if (documents_[static_cast<std::size_t>(c)] == 0) {
            throw Error(ErrorCode::DegenerateCorpus,
                        "training data has no example of category " + std::string(category_name(c)),
                        {std::string(category_name(c))});
        }
    }
    ClassifierModel m;
    m.alpha_ = alpha_;
    std::set<std::string, std::less<>> words;
    for (const auto& per_category : counts_)
        for (const auto& [w, n] : per_category) words.insert(w);
    std::size_t index = 0;
    for (const auto& w : words) m.vocabulary_.emplace(w, index++);

    std::uint64_t total_docs = 0;
    for (auto d : documents_) total_docs += d;
    for (std::size_t c = 0; c < 3; ++c) {
        m.counts_[c].assign(words.size(), 0);
        for (const auto& [w, n] : counts_[c]) m.counts_[c][m.vocabulary_.at(w)] = n;
        m.priors_[c] = static_cast<double>(documents_[c]) / static_cast<double>(total_docs);
    }
    m.finalize_totals();
    return m;
}

void ClassifierModel::finalize_totals() {
    for (std::size_t c = 0; c < 3; ++c) {
        totals_[c] = 0;
        for (auto n : counts_[c]) totals_[c] += n;
    }
}

std::uint64_t ClassifierModel::count(Category c, std::string_view token) const {
    auto it = vocabulary_.find(token);
    if (it == vocabulary_.end()) return 0;
    return counts_[static_cast<std::size_t>(c)][it->second];
}

Classification ClassifierModel::classify(const NormalizedText& text) const {
    Classification out{};
    const double v = static_cast<double>(vocabulary_.size());
    for (std::size_t c = 0; c < 3; ++c) {
        const double denom = std::log(static_cast<double>(totals_[c]) + alpha_ * v);
        double score = std::log(priors_[c]);
        for (const auto& t : text.tokens) {
            auto it = vocabulary_.find(t);
            const double n = it == vocabulary_.end() ? 0.0 : static_cast<double>(counts_[c][it->second]);
            score += std::log(n + alpha_) - denom;
        }
        out.log_scores[c] = score;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < 3; ++c)
        if (out.log_scores[c] > out.log_scores[best]) best = c;
    out.category = kCategories[best];

    double sum = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        out.probabilities[c] = std::exp(out.log_scores[c] - out.log_scores[best]);
        sum += out.probabilities[c];
    }
    for (auto& p : out.probabilities) p /= sum;
    return out;
}

json ClassifierModel::to_json() const {
    json j;
    j["version"] = kFormatVersion;
    j["alpha"] = alpha_;
    json priors = json::object();
    json counts = json::object();
    for (std::size_t c = 0; c < 3; ++c) {
        const std::string name(category_name(kCategories[c]));
        priors[name] = priors_[c];
        counts[name] = counts_[c];
    }
    j["priors"] = std::move(priors);
    json vocabulary = json::object();
    for (const auto& [w, i] : vocabulary_) vocabulary[w] = i;
    j["vocabulary"] = std::move(vocabulary);
    j["counts"] = std::move(counts);
    return j;
}

ClassifierModel ClassifierModel::from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "model document is not a JSON object");
    if (!j.contains("version") || !j["version"].is_number_integer()) {
        throw Error(ErrorCode::VersionMismatch, "model document has no format version");
    }
    const int version = j["version"].get<int>();
    if (version != kFormatVersion) {
        throw Error(ErrorCode::VersionMismatch,
                    "model format version " + std::to_string(version) + " is not supported (expected "
                        + std::to_string(kFormatVersion) + ")");
    }
    try {
        ClassifierModel m;
        m.alpha_ = j.at("alpha").get<double>();
        for (const auto& [w, i] : j.at("vocabulary").items()) m.vocabulary_.emplace(w, i.get<std::size_t>());
        double prior_sum = 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
            const std::string name(category_name(kCategories[c]));
            m.priors_[c] = j.at("priors").at(name).get<double>();
            prior_sum += m.priors_[c];
            m.counts_[c] = j.at("counts").at(name).get<std::vector<std::uint64_t>>();
            if (m.counts_[c].size() != m.vocabulary_.size())
                throw Error(ErrorCode::InvalidArgument, "count vector length does not match the vocabulary");
        }
        if (std::abs(prior_sum - 1.0) > 1e-9 || m.alpha_ <= 0.0)
            throw Error(ErrorCode::InvalidArgument, "model priors or smoothing constant are invalid");
        for (const auto& [w, i] : m.vocabulary_)
            if (i >= m.vocabulary_.size()) throw Error(ErrorCode::InvalidArgument, "vocabulary index out of range");
        m.finalize_totals();
        return m;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed model document: ") + e.what());
    }
}

std::string ClassifierModel::serialize() const { return to_json().dump(1) + "\n"; }

} // namespace c4q::nlu
