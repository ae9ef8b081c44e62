// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"

#include <string>

namespace svagen::sva {

/// Canonical, fully parenthesized rendering; the output re-parses to a
/// structurally equal tree.  `assert((!(a)) || (b));` for immediate
/// assertions, `assert property (@(posedge clk) (a) |-> (b));` for
/// concurrent ones.
std::string pretty_print(const AssertionDecl& decl);

std::string print_expr(const BoolExpr& expr);
std::string print_sequence(const SequenceExpr& seq);
std::string print_property(const PropertyExpr& prop);

} // namespace svagen::sva
