#include "nlu/normalize.hpp"

#include "common/error.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace c4q::nlu {

namespace {

using Replacement = std::pair<std::string_view, std::string_view>;

constexpr std::array<Replacement, 20> kSymbols{{
    {"π", "pi"},      {"†", " dagger"}, {"⟩", ">"},     {"〉", ">"},
    {"⟨", "<"},       {"φ", "phi"},     {"ϕ", "phi"},   {"Φ", "phi"},
    {"ψ", "psi"},     {"Ψ", "psi"},     {"⁺", "+"},     {"⁻", "-"},
    {"−", "-"},       {"–", " "},       {"—", " "},     {"°", " degrees"},
    {"θ", " theta "}, {"’", "'"},       {"‘", "'"},     {"√", "sqrt"},
}};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_digit(c) || (c >= 'a' && c <= 'z'); }

std::size_t codepoint_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead & 0xE0) == 0xC0) return 2;
    if ((lead & 0xF0) == 0xE0) return 3;
    if ((lead & 0xF8) == 0xF0) return 4;
    return 1;
}

// Maps known math symbols, drops any other non-ASCII code point, lowercases.
std::string map_symbols(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        const auto lead = static_cast<unsigned char>(raw[i]);
        if (lead < 0x80) {
            out += static_cast<char>(std::tolower(lead));
            ++i;
            continue;
        }
        const std::size_t len = codepoint_length(lead);
        const std::string_view cp = raw.substr(i, len);
        bool mapped = false;
        for (const auto& [from, to] : kSymbols) {
            if (cp == from) {
                out += to;
                mapped = true;
                break;
            }
        }
        if (!mapped) out += ' ';
        i += len;
    }
    return out;
}

bool ket_inner_char(char c) {
    return is_alnum(c) || c == '+' || c == '-' || c == '^' || c == '\\' || c == ' ';
}

std::string ket_token(std::string_view inner) {
    std::string name;
    for (char c : inner)
        if (c != ' ' && c != '^' && c != '\\') name += c;
    if (name == "+") name = "plus";
    if (name == "-") name = "minus";
    return name.empty() ? std::string{} : " ket_" + name + " ";
}

// "|x>", "\ket{x}" and "ket{x}" become " ket_x ".
std::string collapse_kets(const std::string& s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '|') {
            const std::size_t close = s.find('>', i + 1);
            if (close != std::string::npos && close - i - 1 <= 12) {
                const std::string_view inner(s.data() + i + 1, close - i - 1);
                bool ok = true;
                for (char c : inner) ok = ok && ket_inner_char(c);
                const std::string token = ok ? ket_token(inner) : std::string{};
                if (!token.empty()) {
                    out += token;
                    i = close + 1;
                    continue;
                }
            }
            out += ' ';
            ++i;
            continue;
        }
        const bool slash_ket = s.compare(i, 5, "\\ket{") == 0;
        const bool bare_ket = s.compare(i, 4, "ket{") == 0;
        if (slash_ket || bare_ket) {
            const std::size_t open = i + (slash_ket ? 5 : 4);
            const std::size_t close = s.find('}', open);
            if (close != std::string::npos && close - open <= 12) {
                const std::string token = ket_token(std::string_view(s.data() + open, close - open));
                if (!token.empty()) {
                    out += token;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += s[i];
        ++i;
    }
    return out;
}

// Splits one whitespace-delimited chunk into clean tokens.
void split_chunk(std::string_view chunk, std::vector<std::string>& tokens) {
    if (chunk.starts_with("ket_")) {
        std::string t(chunk);
        while (!t.empty() && !(is_alnum(t.back()) || t.back() == '+' || t.back() == '-')) t.pop_back();
        if (t.size() > 4) {
            tokens.push_back(std::move(t));
            return;
        }
    }
    std::string current;
    auto flush = [&] {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
    };
    for (std::size_t k = 0; k < chunk.size(); ++k) {
        const char c = chunk[k];
        const char next = k + 1 < chunk.size() ? chunk[k + 1] : '\0';
        if (is_alnum(c) || c == '/' || c == '*') {
            current += c;
        } else if (c == '.' && is_digit(next) && (current.empty() || is_digit(current.back()))) {
            current += c;
        } else if (c == '\'') {
            // "what's" -> "whats"
        } else {
            flush();
        }
    }
    flush();
}

// Glues "pi / 4" and "3 * pi" into single tokens.
std::vector<std::string> merge_operators(std::vector<std::string> tokens) {
    std::vector<std::string> out;
    bool glue_next = false;
    for (auto& t : tokens) {
        const bool is_ket = t.starts_with("ket_");
        if (!out.empty() && !is_ket && !out.back().starts_with("ket_")
            && (glue_next || t.front() == '/' || t.front() == '*')) {
            out.back() += t;
        } else {
            out.push_back(std::move(t));
        }
        const char last = out.back().back();
        glue_next = !is_ket && (last == '/' || last == '*');
    }
    // Dangling operators carry no meaning.
    std::vector<std::string> cleaned;
    for (auto& t : out) {
        while (!t.empty() && (t.back() == '/' || t.back() == '*')) t.pop_back();
        std::size_t lead = 0;
        while (lead < t.size() && (t[lead] == '/' || t[lead] == '*')) ++lead;
        if (lead > 0) t.erase(0, lead);
        if (!t.empty()) cleaned.push_back(std::move(t));
    }
    return cleaned;
}

} // namespace

std::string NormalizedText::joined() const {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

NormalizedText normalize(std::string_view raw) {
    const std::string collapsed = collapse_kets(map_symbols(raw));
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < collapsed.size()) {
        while (i < collapsed.size() && std::isspace(static_cast<unsigned char>(collapsed[i]))) ++i;
        std::size_t j = i;
        while (j < collapsed.size() && !std::isspace(static_cast<unsigned char>(collapsed[j]))) ++j;
        if (j > i) split_chunk(std::string_view(collapsed).substr(i, j - i), tokens);
        i = j;
    }
    tokens = merge_operators(std::move(tokens));
    if (tokens.empty()) throw Error(ErrorCode::EmptyInput, "the question is empty");
    return NormalizedText{std::move(tokens), std::string(raw)};
}

} // namespace c4q::nlu
