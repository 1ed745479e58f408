#include "nlu/angle.hpp"

#include "common/error.hpp"
#include "nlu/normalize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

namespace c4q::nlu {

namespace {

using namespace std::string_view_literals;

constexpr std::array kRadianUnits{"rad"sv, "rads"sv, "radian"sv, "radians"sv};
constexpr std::array kDegreeUnits{"deg"sv, "degree"sv, "degrees"sv};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void malformed(std::string_view span) {
    throw Error(ErrorCode::AngleParse, "cannot read the angle '" + std::string(span) + "'", {std::string(span)});
}

// decimal := digits ['.' digits] | '.' digits
std::optional<double> parse_decimal(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t dots = 0;
    std::size_t digits = 0;
    for (char c : s) {
        if (c == '.') ++dots;
        else if (is_digit(c)) ++digits;
        else return std::nullopt;
    }
    if (dots > 1 || digits == 0 || s.back() == '.') return std::nullopt;
    double value = 0.0;
    const std::string padded = s.front() == '.' ? "0" + std::string(s) : std::string(s);
    auto [ptr, ec] = std::from_chars(padded.data(), padded.data() + padded.size(), value);
    if (ec != std::errc{} || ptr != padded.data() + padded.size()) return std::nullopt;
    return value;
}

bool numeric_looking(std::string_view s) {
    bool digit = false;
    for (char c : s) {
        if (is_digit(c)) digit = true;
        else if (c != '.' && c != '/' && c != '*') return false;
    }
    return digit;
}

struct PiExpr {
    double radians;
    bool has_coefficient;
};

// coeff ['*'] 'pi' ['/' int]. nullopt when the token is not pi-like at all.
std::optional<PiExpr> parse_pi_token(std::string_view token) {
    const std::size_t at = token.find("pi");
    if (at == std::string_view::npos) return std::nullopt;
    const std::string_view prefix = token.substr(0, at);
    const std::string_view suffix = token.substr(at + 2);
    for (char c : prefix)
        if (!is_digit(c) && c != '.' && c != '*') return std::nullopt;
    for (char c : suffix)
        if (!is_digit(c) && c != '.' && c != '/' && c != '*') return std::nullopt;

    double coeff = 1.0;
    bool has_coefficient = false;
    if (!prefix.empty()) {
        std::string_view number = prefix;
        if (number.back() == '*') number.remove_suffix(1);
        auto parsed = parse_decimal(number);
        if (!parsed) malformed(token);
        coeff = *parsed;
        has_coefficient = true;
    }
    double denominator = 1.0;
    if (!suffix.empty()) {
        if (suffix.front() != '/' || suffix.size() < 2) malformed(token);
        const std::string_view den = suffix.substr(1);
        for (char c : den)
            if (!is_digit(c)) malformed(token);
        auto parsed = parse_decimal(den);
        if (!parsed || *parsed == 0.0) malformed(token);
        denominator = *parsed;
    }
    return PiExpr{coeff * std::numbers::pi / denominator, has_coefficient};
}

template <std::size_t N>
bool one_of(std::string_view token, const std::array<std::string_view, N>& words) {
    for (auto w : words)
        if (token == w) return true;
    return false;
}

std::string join(std::span<const std::string> tokens, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin) out += ' ';
        out += tokens[i];
    }
    return out;
}

} // namespace

std::optional<AngleSpan> parse_angle_at(std::span<const std::string> tokens, std::size_t pos) {
    const std::string_view token = tokens[pos];
    if (auto pi = parse_pi_token(token)) {
        return AngleSpan{{pi->radians, std::string(token)}, pos, pos + 1, true};
    }
    auto number = parse_decimal(token);
    if (!number) {
        if (numeric_looking(token)) malformed(token);
        return std::nullopt;
    }
    if (pos + 1 < tokens.size()) {
        const std::string_view next = tokens[pos + 1];
        if (one_of(next, kRadianUnits))
            return AngleSpan{{*number, join(tokens, pos, pos + 2)}, pos, pos + 2, true};
        if (one_of(next, kDegreeUnits))
            return AngleSpan{{*number * std::numbers::pi / 180.0, join(tokens, pos, pos + 2)}, pos, pos + 2, true};
        if (auto pi = parse_pi_token(next); pi && !pi->has_coefficient)
            return AngleSpan{{*number * pi->radians, join(tokens, pos, pos + 2)}, pos, pos + 2, true};
    }
    return AngleSpan{{*number, std::string(token)}, pos, pos + 1, false};
}

std::vector<AngleSpan> find_angles(std::span<const std::string> tokens) {
    std::vector<AngleSpan> found;
    std::size_t pos = 0;
    while (pos < tokens.size()) {
        if (tokens[pos].starts_with("ket_")) {
            ++pos;
            continue;
        }
        if (auto span = parse_angle_at(tokens, pos)) {
            pos = span->end;
            found.push_back(std::move(*span));
        } else {
            ++pos;
        }
    }
    return found;
}

double parse_angle(std::string_view text) {
    const NormalizedText norm = normalize(text);
    auto span = parse_angle_at(norm.tokens, 0);
    if (!span || span->end != norm.tokens.size()) malformed(norm.joined());
    return span->angle.radians;
}

} // namespace c4q::nlu
