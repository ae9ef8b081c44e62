// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagnostic.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace svagen::sva {

/// Either a declaration or at least one diagnostic, never both.
struct ParseResult {
    std::optional<AssertionDecl> decl;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return decl.has_value(); }
};

/// Parses a single `assert property (...)` or immediate `assert(...)`
/// statement.  Total: any UTF-8 input yields either a declaration or
/// diagnostics with spans inside the input.
ParseResult parse_assertion(std::string_view source);

/// Parses a bare boolean-layer expression (used for behavioral model files
/// and unit tests).  The whole input must be consumed.
struct BoolParseResult {
    BoolExprPtr expr; // null on failure
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return expr != nullptr; }
};
BoolParseResult parse_bool_expr(std::string_view source);

} // namespace svagen::sva
