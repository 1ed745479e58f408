#pragma once

#include <cstddef>
#include <string_view>

namespace c4q {

/// Number of code points in a UTF-8 string (continuation bytes skipped).
[[nodiscard]] inline std::size_t utf8_length(std::string_view text) noexcept {
    std::size_t n = 0;
    for (unsigned char c : text)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

} // namespace c4q
