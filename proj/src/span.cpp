// SPDX-License-Identifier: Apache-2.0
#include "svagen/span.hpp"

#include <algorithm>

namespace svagen {

Span make_span(std::string_view source, std::size_t start, std::size_t end) {
    Span s;
    s.start = std::min(start, source.size());
    s.end = std::min(std::max(end, s.start), source.size());
    s.line = 1;
    s.column = 1;
    for (std::size_t i = 0; i < s.start && i < source.size(); ++i) {
        if (source[i] == '\n') {
            ++s.line;
            s.column = 1;
        } else {
            ++s.column;
        }
    }
    return s;
}

std::string line_at(std::string_view source, std::size_t offset) {
    if (source.empty())
        return {};
    offset = std::min(offset, source.size() - 1);
    std::size_t begin = source.rfind('\n', offset);
    begin = (begin == std::string_view::npos) ? 0 : begin + 1;
    std::size_t stop = source.find('\n', offset);
    if (stop == std::string_view::npos)
        stop = source.size();
    if (stop < begin)
        stop = begin;
    return std::string(source.substr(begin, stop - begin));
}

} // namespace svagen
