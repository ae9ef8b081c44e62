// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace svagen {

// FNV-1a, 64-bit: stable across platforms and runs, which is what request
// fingerprints and config hashes need.  Not for security.
constexpr uint64_t fnv1a(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL) {
    uint64_t h = seed;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(uint64_t value);

} // namespace svagen
