#include "engine/format.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace c4q::engine {

namespace {

constexpr double kSnapTol = 1e-9;
constexpr std::string_view kMinus = "−";

std::string fixed4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

std::string basis_ket(std::size_t index, std::size_t dim) {
    if (dim == 2) return index == 0 ? "|0⟩" : "|1⟩";
    std::string ket = "|";
    ket += (index & 2U) ? '1' : '0';
    ket += (index & 1U) ? '1' : '0';
    ket += "⟩";
    return ket;
}

bool near(Amplitude a, Amplitude b) { return std::abs(a - b) <= kSnapTol; }

struct Term {
    bool negative = false;
    std::string body;         // coefficient text without the sign
    std::string factor;       // "1/√2" or "1/2" when the term is ±c or ±ic
    std::string inner;        // "" or "i" for factorable terms
};

std::optional<Term> snap(Amplitude a, std::optional<double> phase) {
    const Amplitude i{0.0, 1.0};
    const double r2 = 1.0 / std::numbers::sqrt2;

    struct Scaled {
        double scale;
        std::string_view factor;
    };
    for (int sign : {1, -1}) {
        if (near(a, double(sign))) return Term{sign < 0, "", "", ""};
        if (near(a, double(sign) * i)) return Term{sign < 0, "i", "", ""};
    }
    for (auto [scale, factor] : std::array<Scaled, 2>{{{r2, "1/√2"}, {0.5, "1/2"}}}) {
        for (int sign : {1, -1}) {
            if (near(a, sign * scale))
                return Term{sign < 0, "(" + std::string(factor) + ")", std::string(factor), ""};
            if (near(a, sign * scale * i))
                return Term{sign < 0, "(i" + std::string(factor.substr(1)) + ")", std::string(factor), "i"};
        }
    }
    // (±1±i)/2; the negative pair folds into the positive pair.
    if (near(a, Amplitude{0.5, 0.5})) return Term{false, "((1+i)/2)", "", ""};
    if (near(a, Amplitude{0.5, -0.5})) return Term{false, "((1" + std::string(kMinus) + "i)/2)", "", ""};
    if (near(a, Amplitude{-0.5, -0.5})) return Term{true, "((1+i)/2)", "", ""};
    if (near(a, Amplitude{-0.5, 0.5})) return Term{true, "((1" + std::string(kMinus) + "i)/2)", "", ""};
    if (phase && near(a, std::polar(1.0, *phase)))
        return Term{false, "e^(i·" + format_angle(*phase) + ")", "", ""};
    return std::nullopt;
}

Term decimal_term(Amplitude a) {
    double re = a.real();
    double im = a.imag();
    if (std::abs(im) < kSnapTol) return Term{re < 0, fixed4(std::abs(re)), "", ""};
    if (std::abs(re) < kSnapTol) return Term{im < 0, fixed4(std::abs(im)) + "i", "", ""};
    const bool negative = re < 0;
    if (negative) {
        re = -re;
        im = -im;
    }
    std::string body = "(" + fixed4(re) + (im < 0 ? std::string(kMinus) : std::string("+"))
                       + fixed4(std::abs(im)) + "i)";
    return Term{negative, std::move(body), "", ""};
}

} // namespace

std::string format_angle(double radians) {
    if (std::abs(radians) < 1e-12) return "0";
    constexpr std::array<int, 10> kDenominators{1, 2, 3, 4, 5, 6, 8, 10, 12, 16};
    for (int d : kDenominators) {
        const double k = radians * d / std::numbers::pi;
        const double rounded = std::round(k);
        if (std::abs(k - rounded) < 1e-9 && std::abs(rounded) <= 64) {
            const long num = std::lround(rounded);
            std::string out = num < 0 ? "-" : "";
            if (std::labs(num) != 1) out += std::to_string(std::labs(num));
            out += "pi";
            if (d != 1) out += "/" + std::to_string(d);
            return out;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", radians);
    std::string out = buf;
    while (!out.empty() && out.back() == '0') out.pop_back();
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

std::string format_state(const StateVector& v, std::optional<double> phase) {
    const std::size_t dim = v.amplitudes.size();
    std::vector<std::pair<std::size_t, Term>> terms;
    for (std::size_t k = 0; k < dim; ++k) {
        const Amplitude a = v.amplitudes[k];
        if (std::abs(a) <= kSnapTol) continue;
        auto t = snap(a, phase);
        terms.emplace_back(k, t ? *t : decimal_term(a));
    }
    if (terms.empty()) return "0";

    bool common = terms.size() >= 2 && !terms.front().second.factor.empty();
    for (const auto& [k, t] : terms) common = common && t.factor == terms.front().second.factor;

    std::string out;
    if (common) out = "(" + terms.front().second.factor + ")(";
    bool first = true;
    for (const auto& [k, t] : terms) {
        if (first) {
            if (t.negative) out += kMinus;
        } else {
            out += t.negative ? " " + std::string(kMinus) + " " : std::string(" + ");
        }
        out += common ? t.inner : t.body;
        out += basis_ket(k, dim);
        first = false;
    }
    if (common) out += ")";
    return out;
}

} // namespace c4q::engine
