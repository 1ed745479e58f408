#include "engine/types.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <cmath>

namespace c4q::engine {

std::string_view axis_name(Axis axis) noexcept {
    switch (axis) {
    case Axis::X: return "X";
    case Axis::Y: return "Y";
    case Axis::Z: return "Z";
    }
    return "?";
}

std::optional<Axis> axis_from_name(std::string_view name) noexcept {
    if (name == "X" || name == "x") return Axis::X;
    if (name == "Y" || name == "y") return Axis::Y;
    if (name == "Z" || name == "z") return Axis::Z;
    return std::nullopt;
}

UnitaryMatrix::UnitaryMatrix(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw Error(ErrorCode::InvalidArgument, "matrix entry count does not match dimension");
    }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    UnitaryMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    UnitaryMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
    UnitaryMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) {
            Amplitude acc = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) acc += (*this)(r, k) * rhs(k, c);
            out(r, c) = acc;
        }
    return out;
}

UnitaryMatrix UnitaryMatrix::scaled(Amplitude factor) const {
    UnitaryMatrix out = *this;
    for (auto& e : out.entries_) e *= factor;
    return out;
}

double UnitaryMatrix::max_abs_diff(const UnitaryMatrix& other) const {
    if (other.dim_ != dim_) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    return worst;
}

} // namespace c4q::engine
