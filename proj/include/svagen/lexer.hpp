// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagnostic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace svagen::sva {

enum class TokenKind {
    Identifier,   // possibly hierarchical: foo.bar
    SysIdent,     // $past, $rose, ... (text keeps the $)
    Number,       // sized, unsized decimal, or '0/'1
    KwAssert, KwProperty, KwDisable, KwIff, KwPosedge, KwNegedge, KwNot,
    LParen, RParen, LBracket, RBracket,
    Colon, Semicolon, Comma, At,
    HashHash,                 // ##
    OverlapImpl, NonOverlapImpl, // |->  |=>
    LogicNot, BitNot,         // ! ~
    LogicAnd, LogicOr,        // && ||
    BitAnd, BitOr, BitXor,    // & | ^
    EqEq, NotEq, Lt, Le, Gt, Ge,
    Plus, Minus,
    FatArrow,                 // => (never valid; kept so errors quote it)
    EndOfInput,
};

struct Token {
    TokenKind kind;
    std::string text;       // exact source slice
    Span span;
    // filled for Number tokens
    std::optional<uint32_t> width;
    LiteralBase base = LiteralBase::Decimal;
    uint64_t value = 0;
};

struct LexResult {
    std::vector<Token> tokens; // always ends with EndOfInput
    std::vector<Diagnostic> diagnostics;
};

LexResult lex(std::string_view source);

} // namespace svagen::sva
