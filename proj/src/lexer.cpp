// SPDX-License-Identifier: Apache-2.0
#include "svagen/lexer.hpp"

#include <cctype>

namespace svagen::sva {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

TokenKind keyword_kind(std::string_view text) {
    if (text == "assert") return TokenKind::KwAssert;
    if (text == "property") return TokenKind::KwProperty;
    if (text == "disable") return TokenKind::KwDisable;
    if (text == "iff") return TokenKind::KwIff;
    if (text == "posedge") return TokenKind::KwPosedge;
    if (text == "negedge") return TokenKind::KwNegedge;
    if (text == "not") return TokenKind::KwNot;
    return TokenKind::Identifier;
}

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

LexResult lex(std::string_view src) {
    LexResult out;
    std::size_t i = 0;
    const std::size_t n = src.size();

    auto push = [&](TokenKind kind, std::size_t start, std::size_t end) -> Token& {
        Token t;
        t.kind = kind;
        t.text = std::string(src.substr(start, end - start));
        t.span = make_span(src, start, end);
        out.tokens.push_back(std::move(t));
        return out.tokens.back();
    };

    while (i < n) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        // comments
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            std::size_t close = src.find("*/", i + 2);
            i = (close == std::string_view::npos) ? n : close + 2;
            continue;
        }

        std::size_t start = i;

        if (is_ident_start(c)) {
            ++i;
            while (i < n && is_ident_char(src[i])) ++i;
            // hierarchical names lex as one identifier and are rejected later
            // during name resolution, so the whole dotted path gets quoted
            while (i < n && src[i] == '.' && i + 1 < n && is_ident_start(src[i + 1])) {
                i += 2;
                while (i < n && is_ident_char(src[i])) ++i;
            }
            std::string_view text = src.substr(start, i - start);
            push(keyword_kind(text), start, i);
            continue;
        }

        if (c == '$') {
            ++i;
            while (i < n && is_ident_char(src[i])) ++i;
            push(TokenKind::SysIdent, start, i);
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
            uint64_t prefix = 0;
            bool has_prefix = false;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                has_prefix = true;
                while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                    if (src[i] != '_')
                        prefix = prefix * 10 + static_cast<uint64_t>(src[i] - '0');
                    ++i;
                }
            }
            if (i < n && src[i] == '\'') {
                ++i;
                if (!has_prefix && i < n && (src[i] == '0' || src[i] == '1')) {
                    // '0 / '1 fill literals
                    uint64_t v = static_cast<uint64_t>(src[i] - '0');
                    ++i;
                    Token& t = push(TokenKind::Number, start, i);
                    t.base = LiteralBase::Fill;
                    t.value = v;
                    continue;
                }
                int radix = 0;
                LiteralBase base = LiteralBase::Decimal;
                if (i < n) {
                    switch (std::tolower(static_cast<unsigned char>(src[i]))) {
                    case 'b': radix = 2; base = LiteralBase::Binary; break;
                    case 'o': radix = 8; base = LiteralBase::Octal; break;
                    case 'd': radix = 10; base = LiteralBase::Decimal; break;
                    case 'h': radix = 16; base = LiteralBase::Hex; break;
                    default: break;
                    }
                }
                if (radix == 0) {
                    while (i < n && is_ident_char(src[i])) ++i;
                    out.diagnostics.push_back(make_diagnostic(
                        Severity::Error, DiagCategory::Lex, "E007", src, start, i,
                        "malformed numeric literal ", ": expected a base letter (b, o, d, h) after the tick"));
                    continue;
                }
                ++i; // consume base letter
                uint64_t value = 0;
                std::size_t digits = 0;
                bool bad_digit = false;
                while (i < n && (is_ident_char(src[i]) || src[i] == '?')) {
                    char d = src[i];
                    if (d == '_') {
                        ++i;
                        continue;
                    }
                    int dv = digit_value(d);
                    if (dv < 0 || dv >= radix) {
                        bad_digit = true;
                        ++i;
                        continue;
                    }
                    value = value * static_cast<uint64_t>(radix) + static_cast<uint64_t>(dv);
                    ++digits;
                    ++i;
                }
                if (bad_digit || digits == 0) {
                    out.diagnostics.push_back(make_diagnostic(
                        Severity::Error, DiagCategory::Lex, "E007", src, start, i,
                        "malformed numeric literal ", ": digits do not match the declared base"));
                    continue;
                }
                Token& t = push(TokenKind::Number, start, i);
                if (has_prefix)
                    t.width = static_cast<uint32_t>(prefix);
                t.base = base;
                t.value = value;
                continue;
            }
            // plain unsized decimal
            Token& t = push(TokenKind::Number, start, i);
            t.base = LiteralBase::Decimal;
            t.value = prefix;
            continue;
        }

        auto two = [&](char a, char b) {
            return c == a && i + 1 < n && src[i + 1] == b;
        };

        if (c == '#' && i + 1 < n && src[i + 1] == '#') {
            push(TokenKind::HashHash, start, i += 2);
            continue;
        }
        if (c == '|' && i + 2 < n && src[i + 1] == '-' && src[i + 2] == '>') {
            push(TokenKind::OverlapImpl, start, i += 3);
            continue;
        }
        if (c == '|' && i + 2 < n && src[i + 1] == '=' && src[i + 2] == '>') {
            push(TokenKind::NonOverlapImpl, start, i += 3);
            continue;
        }
        if (two('|', '|')) { push(TokenKind::LogicOr, start, i += 2); continue; }
        if (two('&', '&')) { push(TokenKind::LogicAnd, start, i += 2); continue; }
        if (two('=', '=')) { push(TokenKind::EqEq, start, i += 2); continue; }
        if (two('!', '=')) { push(TokenKind::NotEq, start, i += 2); continue; }
        if (two('<', '=')) { push(TokenKind::Le, start, i += 2); continue; }
        if (two('>', '=')) { push(TokenKind::Ge, start, i += 2); continue; }
        if (two('=', '>')) { push(TokenKind::FatArrow, start, i += 2); continue; }

        TokenKind kind;
        switch (c) {
        case '(': kind = TokenKind::LParen; break;
        case ')': kind = TokenKind::RParen; break;
        case '[': kind = TokenKind::LBracket; break;
        case ']': kind = TokenKind::RBracket; break;
        case ':': kind = TokenKind::Colon; break;
        case ';': kind = TokenKind::Semicolon; break;
        case ',': kind = TokenKind::Comma; break;
        case '@': kind = TokenKind::At; break;
        case '!': kind = TokenKind::LogicNot; break;
        case '~': kind = TokenKind::BitNot; break;
        case '&': kind = TokenKind::BitAnd; break;
        case '|': kind = TokenKind::BitOr; break;
        case '^': kind = TokenKind::BitXor; break;
        case '<': kind = TokenKind::Lt; break;
        case '>': kind = TokenKind::Gt; break;
        case '+': kind = TokenKind::Plus; break;
        case '-': kind = TokenKind::Minus; break;
        default:
            out.diagnostics.push_back(make_diagnostic(
                Severity::Error, DiagCategory::Lex, "E003", src, start, start + 1,
                "illegal character ", " in assertion text"));
            ++i;
            continue;
        }
        push(kind, start, ++i);
    }

    push(TokenKind::EndOfInput, n, n);
    return out;
}

} // namespace svagen::sva
