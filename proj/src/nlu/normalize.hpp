#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace c4q::nlu {

struct NormalizedText {
    std::vector<std::string> tokens;
    std::string raw;

    /// Tokens joined by single spaces. Normalizing this again yields the same tokens.
    [[nodiscard]] std::string joined() const;
};

/// Lowercases, maps math symbols (π → pi, † → dagger, ⟩ → >, φ → phi, ° →
/// degrees), collapses kets ("|1⟩", "|+>", "\ket{0}") into single tokens
/// (ket_1, ket_plus, ket_0), and strips punctuation. "/" and "*" survive
/// everywhere, "." only as a decimal point. Throws EmptyInput on blank input.
[[nodiscard]] NormalizedText normalize(std::string_view raw);

} // namespace c4q::nlu
