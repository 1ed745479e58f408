#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace c4q::nlu {

struct Angle {
    double radians;
    std::string surface;  ///< the normalized tokens that produced it
};

/// One angle found in a token list, covering tokens [begin, end).
struct AngleSpan {
    Angle angle;
    std::size_t begin;
    std::size_t end;
    bool strong;  ///< mentions pi or a unit; a bare number is weak
};

// Grammar over normalized tokens:
//   angle := number | number unit | coeff ['*'] 'pi' ['/' int] | 'pi' ['/' int]
//   unit  := rad | rads | radian | radians | deg | degree | degrees
// A coefficient may also be a separate token ("3 pi/4"). Degrees convert by pi/180.

/// Angle starting exactly at tokens[pos], if any. Throws AngleParse when the
/// token is numeric or pi-like but malformed ("pi/0", "2**pi", "1.2.3").
[[nodiscard]] std::optional<AngleSpan> parse_angle_at(std::span<const std::string> tokens, std::size_t pos);

/// All non-overlapping angles, left to right.
[[nodiscard]] std::vector<AngleSpan> find_angles(std::span<const std::string> tokens);

/// Whole-string convenience: normalizes `text` and requires it to be exactly
/// one angle. Throws AngleParse otherwise.
[[nodiscard]] double parse_angle(std::string_view text);

} // namespace c4q::nlu
