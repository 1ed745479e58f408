#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace c4q::engine {

using Amplitude = std::complex<double>;

enum class GateId { I, X, Y, Z, S, SDG, H, P, RX, RY, RZ, CNOT, CZ, SWAP };

inline constexpr std::size_t kGateCount = 14;

enum class ParamKind { None, Phase, Angle };

enum class Axis { X, Y, Z };

[[nodiscard]] std::string_view axis_name(Axis axis) noexcept;
[[nodiscard]] std::optional<Axis> axis_from_name(std::string_view name) noexcept;

/// Parameters for the parameterized gates. Angles are radians.
struct GateParams {
    std::optional<double> phase;
    std::optional<double> angle;
    std::optional<Axis> axis;

    friend bool operator==(const GateParams&, const GateParams&) = default;
};

/// Dense row-major complex matrix of dimension 2 or 4.
class UnitaryMatrix {
public:
    explicit UnitaryMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
    UnitaryMatrix(std::size_t dim, std::vector<Amplitude> entries);

    static UnitaryMatrix identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<Amplitude>& entries() const noexcept { return entries_; }

    Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Amplitude& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

    [[nodiscard]] UnitaryMatrix adjoint() const;
    [[nodiscard]] UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;
    [[nodiscard]] UnitaryMatrix scaled(Amplitude factor) const;

    /// Largest entrywise modulus of (this - other).
    [[nodiscard]] double max_abs_diff(const UnitaryMatrix& other) const;

private:
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

} // namespace c4q::engine
