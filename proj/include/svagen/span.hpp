// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace svagen {

/// Half-open byte range into a source string, with 1-based line/column of
/// the range start.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;
    int line = 1;
    int column = 1;

    bool operator==(const Span&) const = default;
};

/// Computes line/column for a byte offset and fills in a Span.
Span make_span(std::string_view source, std::size_t start, std::size_t end);

/// The full source line containing `offset` (without trailing newline).
std::string line_at(std::string_view source, std::size_t offset);

} // namespace svagen
