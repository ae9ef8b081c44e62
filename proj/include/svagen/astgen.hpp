// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace svagen::sva {

/// Deterministic random assertion generator.  Produces only trees the parser
/// itself can produce, so pretty-printed output always re-parses to an equal
/// tree.  The same engine drives synthetic dataset pairs and round-trip
/// property tests; determinism relies on the raw mt19937_64 stream, not on
/// standard-library distributions.
class AstGenerator {
public:
    struct Options {
        uint64_t seed = 1;
        int max_depth = 3;              // boolean-layer depth
        std::vector<std::string> vocab; // signal names to draw from
        bool allow_temporal = true;     // delays, |=>, $past family
        double clocked_probability = 0.7;
    };

    explicit AstGenerator(Options opts);

    AssertionDecl next_assertion();
    BoolExprPtr next_bool_expr(int depth);

private:
    Options opts_;
    uint64_t state_;

    uint64_t next_raw();
    uint32_t pick(uint32_t bound); // uniform-ish in [0, bound)
    const std::string& pick_name();

    BoolExprPtr gen_bool(int depth, bool allow_syscall);
    SequenceExprPtr gen_sequence(bool temporal);
    PropertyExprPtr gen_property(int depth, bool temporal);
};

} // namespace svagen::sva
