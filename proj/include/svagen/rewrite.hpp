// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagnostic.hpp"

#include <optional>
#include <variant>

namespace svagen::rewrite {

struct RewriteResult {
    std::optional<sva::AssertionDecl> decl;
    std::optional<Diagnostic> diagnostic;
    bool ok() const { return decl.has_value(); }
};

/// Rule-based conversion of a clocked assertion into combinational form:
/// the clocking event and any disable iff wrapper are dropped, every
/// implication `a |-> b` / `a |=> b` becomes `(!a) || b`, and sampled-value
/// functions collapse to their argument.  Delays have no combinational
/// reading and produce E_COMB_DELAY instead.  Idempotent on combinational
/// input.
RewriteResult to_combinational(const sva::AssertionDecl& decl);

} // namespace svagen::rewrite
