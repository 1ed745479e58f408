#pragma once

#include "common/error.hpp"
#include "nlu/query.hpp"

#include <string>
#include <string_view>

namespace c4q::chat {

enum class Reply { AFFIRMATIVE, NEGATIVE, OTHER };

/// Exactly one lexicon word, case-insensitive, surrounding whitespace and
/// trailing ".!" ignored. Affirmative: yes, y, correct, right. Negative: no,
/// n, wrong. Anything else is OTHER.
[[nodiscard]] Reply classify_reply(std::string_view text) noexcept;

[[nodiscard]] std::string greeting_text();
/// Names every supported gate.
[[nodiscard]] std::string lacks_information_text();
/// "apply Pauli Z to |1⟩ — correct?", noting defaulted slots.
[[nodiscard]] std::string confirmation_text(const nlu::ParsedQuery& q);
/// Runs the engine for the query's category. The gate must be resolved.
[[nodiscard]] std::string answer_text(const nlu::ParsedQuery& q);
[[nodiscard]] std::string reask_text();
[[nodiscard]] std::string prompt_text();
/// Reply to a question the pipeline rejected.
[[nodiscard]] std::string clarify_text(const Error& error);

} // namespace c4q::chat
