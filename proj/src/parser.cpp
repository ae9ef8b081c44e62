// SPDX-License-Identifier: Apache-2.0
#include "svagen/parser.hpp"

#include "svagen/lexer.hpp"

#include <cassert>

namespace svagen::sva {

namespace {

// Binary operator precedence, loosest binding first.  Implication lives a
// layer above and binds looser than everything here.
struct OpLevel {
    TokenKind token;
    BinaryOp op;
    int level;
};
constexpr OpLevel kOpTable[] = {
    {TokenKind::LogicOr, BinaryOp::LogicOr, 0},
    {TokenKind::LogicAnd, BinaryOp::LogicAnd, 1},
    {TokenKind::BitOr, BinaryOp::BitOr, 2},
    {TokenKind::BitXor, BinaryOp::BitXor, 3},
    {TokenKind::BitAnd, BinaryOp::BitAnd, 4},
    {TokenKind::EqEq, BinaryOp::Eq, 5},
    {TokenKind::NotEq, BinaryOp::Ne, 5},
    {TokenKind::Lt, BinaryOp::Lt, 6},
    {TokenKind::Le, BinaryOp::Le, 6},
    {TokenKind::Gt, BinaryOp::Gt, 6},
    {TokenKind::Ge, BinaryOp::Ge, 6},
    {TokenKind::Plus, BinaryOp::Add, 7},
    {TokenKind::Minus, BinaryOp::Sub, 7},
};
constexpr int kMaxLevel = 8; // unary layer

class Parser {
public:
    Parser(std::string_view source, std::vector<Token> tokens)
        : src_(source), toks_(std::move(tokens)) {}

    struct Bail {};

    std::vector<Diagnostic> take_diagnostics() { return std::move(diags_); }

    AssertionDecl parse_statement() {
        std::optional<std::string> label;
        if (peek().kind == TokenKind::Identifier && peek(1).kind == TokenKind::Colon) {
            label = peek().text;
            advance();
            advance();
        }
        if (peek().kind != TokenKind::KwAssert)
            fail("E005", DiagCategory::Parse, "expected an assert statement, found ", "");
        advance();

        AssertionDecl decl;
        decl.label = std::move(label);

        if (peek().kind == TokenKind::KwProperty) {
            advance();
            expect(TokenKind::LParen, "E002", "'('");
            if (peek().kind == TokenKind::At)
                decl.clocking = parse_clocking();
            PropertyExprPtr prop;
            if (peek().kind == TokenKind::KwDisable) {
                BoolExprPtr cond = parse_disable_iff_header();
                PropertyExprPtr body = parse_property();
                prop = mk_prop(PropDisableIff{std::move(cond), std::move(body)},
                               span_from(body->span));
            } else {
                prop = parse_property();
            }
            expect(TokenKind::RParen, "E001", "')'");
            decl.property = std::move(prop);
            decl.immediate = false;
        } else {
            // immediate assertion: boolean layer only
            expect(TokenKind::LParen, "E002", "'('");
            BoolExprPtr expr = parse_bool(0);
            if (peek().kind != TokenKind::RParen && peek().kind != TokenKind::EndOfInput &&
                is_temporal_token(peek().kind)) {
                fail("E002", DiagCategory::Parse, "unexpected ", " inside an immediate assertion",
                     "immediate assertions take a boolean expression; use assert property (...) "
                     "for temporal operators");
            }
            expect(TokenKind::RParen, "E001", "')'");
            decl.property = mk_prop(PropSeq{mk_seq(SeqBool{expr}, expr->span)}, expr->span);
            decl.immediate = true;
        }

        expect(TokenKind::Semicolon, "E002", "';'");
        if (peek().kind != TokenKind::EndOfInput)
            fail("E006", DiagCategory::Parse, "unexpected trailing text ",
                 " after the assertion statement");

        decl.source_span = make_span(src_, 0, src_.size());
        decl.raw_text = std::string(src_);
        validate(decl);
        return decl;
    }

    BoolExprPtr parse_bool_only() {
        BoolExprPtr e = parse_bool(0);
        if (peek().kind != TokenKind::EndOfInput)
            fail("E006", DiagCategory::Parse, "unexpected trailing text ", " after the expression");
        return e;
    }

private:
    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diags_;

    const Token& peek(std::size_t k = 0) const {
        std::size_t i = pos_ + k;
        if (i >= toks_.size())
            i = toks_.size() - 1;
        return toks_[i];
    }
    const Token& advance() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size())
            ++pos_;
        return t;
    }

    static bool is_temporal_token(TokenKind k) {
        return k == TokenKind::HashHash || k == TokenKind::OverlapImpl ||
               k == TokenKind::NonOverlapImpl;
    }

    Span span_from(const Span& s) const { return s; }

    [[noreturn]] void fail(std::string code, DiagCategory cat, std::string_view before,
                           std::string_view after, std::optional<std::string> hint = std::nullopt) {
        const Token* t = &peek();
        std::string_view b = before;
        if (t->kind == TokenKind::EndOfInput && pos_ > 0)
            t = &toks_[pos_ - 1];
        std::size_t start = t->span.start;
        std::size_t end = t->span.end;
        if (start == end) { // empty input: quote everything there is
            start = 0;
            end = src_.size();
        }
        diags_.push_back(make_diagnostic(Severity::Error, cat, std::move(code), src_, start, end,
                                         b, after, std::move(hint)));
        throw Bail{};
    }

    const Token& expect(TokenKind kind, const char* code, std::string_view what) {
        if (peek().kind == kind)
            return advance();
        std::string before = "expected " + std::string(what);
        if (peek().kind == TokenKind::EndOfInput)
            before += " after ";
        else
            before += " before ";
        fail(code, DiagCategory::Parse, before, "");
    }

    ClockingEvent parse_clocking() {
        advance(); // @
        expect(TokenKind::LParen, "E002", "'(' after @");
        ClockingEvent ev;
        if (peek().kind == TokenKind::KwPosedge) {
            ev.edge = ClockEdge::Posedge;
        } else if (peek().kind == TokenKind::KwNegedge) {
            ev.edge = ClockEdge::Negedge;
        } else {
            fail("E002", DiagCategory::Parse, "expected posedge or negedge, found ", "");
        }
        advance();
        if (peek().kind != TokenKind::Identifier)
            fail("E002", DiagCategory::Parse, "expected a clock signal name, found ", "");
        ev.signal = advance().text;
        expect(TokenKind::RParen, "E001", "')'");
        return ev;
    }

    BoolExprPtr parse_disable_iff_header() {
        advance(); // disable
        if (peek().kind != TokenKind::KwIff)
            fail("E002", DiagCategory::Parse, "expected iff after disable, found ", "");
        advance();
        expect(TokenKind::LParen, "E002", "'('");
        BoolExprPtr cond = parse_bool(0);
        expect(TokenKind::RParen, "E001", "')'");
        return cond;
    }

    PropertyExprPtr parse_property() {
        if (peek().kind == TokenKind::KwDisable)
            fail("E004", DiagCategory::Parse, "only one disable iff clause is allowed; found another ",
                 " — disable iff must be the outermost wrapper");
        if (peek().kind == TokenKind::KwNot) {
            Span sp = peek().span;
            advance();
            PropertyExprPtr inner = parse_property();
            return mk_prop(PropNot{std::move(inner)}, sp);
        }
        SequenceExprPtr seq = parse_sequence();
        if (peek().kind == TokenKind::OverlapImpl || peek().kind == TokenKind::NonOverlapImpl) {
            ImplKind kind = peek().kind == TokenKind::OverlapImpl ? ImplKind::Overlapped
                                                                  : ImplKind::NonOverlapped;
            Span sp = peek().span;
            advance();
            PropertyExprPtr cons = parse_property();
            return mk_prop(PropImplication{kind, std::move(seq), std::move(cons)}, sp);
        }
        if (peek().kind == TokenKind::FatArrow)
            fail("E002", DiagCategory::Parse, "unknown operator ", "",
                 "use |-> for same-cycle or |=> for next-cycle implication");
        Span sp = seq->span;
        return mk_prop(PropSeq{std::move(seq)}, sp);
    }

    SequenceExprPtr parse_sequence() {
        SequenceExprPtr seq;
        if (peek().kind == TokenKind::HashHash) {
            // leading delay: ##N expr is shorthand for 1'b1 ##N expr
            NumericLiteral one;
            one.width = 1;
            one.base = LiteralBase::Binary;
            one.value = 1;
            seq = mk_seq(SeqBool{mk_bool(std::move(one), peek().span)}, peek().span);
        } else {
            BoolExprPtr first = parse_bool(0);
            seq = mk_seq(SeqBool{first}, first->span);
        }
        while (peek().kind == TokenKind::HashHash) {
            Span sp = peek().span;
            advance();
            auto [min_c, max_c] = parse_delay_spec();
            BoolExprPtr rhs = parse_bool(0);
            SequenceExprPtr rseq = mk_seq(SeqBool{rhs}, rhs->span);
            seq = mk_seq(SeqDelay{std::move(seq), min_c, max_c, std::move(rseq)}, sp);
        }
        return seq;
    }

    uint32_t parse_plain_count(const char* what) {
        if (peek().kind != TokenKind::Number)
            fail("E002", DiagCategory::Parse,
                 std::string("expected ") + what + ", found ", "");
        const Token& t = peek();
        if (t.width.has_value() || t.base != LiteralBase::Decimal)
            fail("E009", DiagCategory::Parse,
                 std::string("expected a plain decimal ") + what + ", found ", "");
        advance();
        return static_cast<uint32_t>(t.value);
    }

    std::pair<uint32_t, std::optional<uint32_t>> parse_delay_spec() {
        if (peek().kind == TokenKind::LBracket) {
            advance();
            const Token& lo_tok = peek();
            uint32_t lo = parse_plain_count("delay count");
            expect(TokenKind::Colon, "E002", "':' in delay range");
            uint32_t hi = parse_plain_count("delay count");
            expect(TokenKind::RBracket, "E002", "']'");
            if (hi < lo) {
                diags_.push_back(make_diagnostic(
                    Severity::Error, DiagCategory::Parse, "E009", src_, lo_tok.span.start,
                    peek().span.start, "delay range ", " has a maximum smaller than its minimum"));
                throw Bail{};
            }
            return {lo, hi};
        }
        uint32_t d = parse_plain_count("delay count");
        return {d, std::nullopt};
    }

    BoolExprPtr parse_bool(int level) {
        if (level >= kMaxLevel)
            return parse_unary();
        BoolExprPtr lhs = parse_bool(level + 1);
        for (;;) {
            const OpLevel* hit = nullptr;
            for (const auto& entry : kOpTable) {
                if (entry.level == level && entry.token == peek().kind) {
                    hit = &entry;
                    break;
                }
            }
            if (!hit)
                return lhs;
            Span sp = peek().span;
            advance();
            BoolExprPtr rhs = parse_bool(level + 1);
            lhs = mk_bool(Binary{hit->op, std::move(lhs), std::move(rhs)}, sp);
        }
    }

    BoolExprPtr parse_unary() {
        TokenKind k = peek().kind;
        if (k == TokenKind::LogicNot || k == TokenKind::BitNot || k == TokenKind::Minus) {
            Span sp = peek().span;
            advance();
            UnaryOp op = k == TokenKind::LogicNot ? UnaryOp::LogicNot
                       : k == TokenKind::BitNot   ? UnaryOp::BitNot
                                                  : UnaryOp::Minus;
            BoolExprPtr operand = parse_unary();
            return mk_bool(Unary{op, std::move(operand)}, sp);
        }
        return parse_primary();
    }

    BoolExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::LParen: {
            Span sp = t.span;
            advance();
            BoolExprPtr inner = parse_bool(0);
            expect(TokenKind::RParen, "E001", "')'");
            return mk_bool(Paren{std::move(inner)}, sp);
        }
        case TokenKind::Number: {
            advance();
            NumericLiteral lit;
            lit.width = t.width;
            lit.base = t.base;
            lit.value = t.value;
            return mk_bool(std::move(lit), t.span);
        }
        case TokenKind::Identifier: {
            advance();
            Identifier id;
            id.name = t.text;
            if (peek().kind == TokenKind::LBracket)
                id.select = parse_select();
            return mk_bool(std::move(id), t.span);
        }
        case TokenKind::SysIdent:
            return parse_system_call();
        default:
            fail("E002", DiagCategory::Parse, "unexpected ", " where an expression was expected");
        }
    }

    Select parse_select() {
        advance(); // [
        uint32_t first = parse_plain_count("index");
        if (peek().kind == TokenKind::Colon) {
            advance();
            const Token& lo_tok = peek();
            uint32_t lo = parse_plain_count("index");
            expect(TokenKind::RBracket, "E002", "']'");
            if (first < lo) {
                diags_.push_back(make_diagnostic(
                    Severity::Error, DiagCategory::Parse, "E010", src_, lo_tok.span.start,
                    lo_tok.span.end, "part-select high bound is below low bound ", ""));
                throw Bail{};
            }
            return PartSelect{first, lo};
        }
        expect(TokenKind::RBracket, "E002", "']'");
        return BitSelect{first};
    }

    BoolExprPtr parse_system_call() {
        const Token& t = advance();
        SysFunc func;
        if (t.text == "$past") func = SysFunc::Past;
        else if (t.text == "$rose") func = SysFunc::Rose;
        else if (t.text == "$fell") func = SysFunc::Fell;
        else if (t.text == "$stable") func = SysFunc::Stable;
        else {
            diags_.push_back(make_diagnostic(
                Severity::Error, DiagCategory::Parse, "E008", src_, t.span.start, t.span.end,
                "unknown system function ", "",
                "supported system functions: $past, $rose, $fell, $stable"));
            throw Bail{};
        }
        expect(TokenKind::LParen, "E002", "'('");
        BoolExprPtr arg = parse_bool(0);
        std::optional<uint32_t> cycles;
        if (peek().kind == TokenKind::Comma) {
            if (func != SysFunc::Past)
                fail("E002", DiagCategory::Parse, "unexpected ", " — only $past takes a cycle count");
            advance();
            const Token& count_tok = peek();
            uint32_t n = parse_plain_count("cycle count");
            if (n < 1) {
                diags_.push_back(make_diagnostic(
                    Severity::Error, DiagCategory::Parse, "E009", src_, count_tok.span.start,
                    count_tok.span.end, "$past cycle count ", " must be at least 1"));
                throw Bail{};
            }
            cycles = n;
        }
        expect(TokenKind::RParen, "E001", "')'");
        return mk_bool(SystemCall{func, std::move(arg), cycles}, t.span);
    }

    // Post-parse structural check: an unclocked assertion cannot contain
    // constructs that need a sampling clock.
    void validate(const AssertionDecl& decl) {
        if (decl.clocking)
            return;
        std::optional<std::pair<Span, const char*>> offender = find_temporal(*decl.property);
        if (!offender)
            return;
        diags_.push_back(make_diagnostic(
            Severity::Error, DiagCategory::Semantic, "E011", src_, offender->first.start,
            offender->first.end, "", std::string(" (") + offender->second +
            ") requires a clocking event such as @(posedge clk)"));
        throw Bail{};
    }

    static std::optional<std::pair<Span, const char*>> find_temporal_bool(const BoolExpr& e) {
        if (std::holds_alternative<SystemCall>(e.node))
            return std::make_pair(e.span, "sampled-value function");
        if (const auto* u = std::get_if<Unary>(&e.node))
            return find_temporal_bool(*u->operand);
        if (const auto* b = std::get_if<Binary>(&e.node)) {
            if (auto r = find_temporal_bool(*b->lhs))
                return r;
            return find_temporal_bool(*b->rhs);
        }
        if (const auto* p = std::get_if<Paren>(&e.node))
            return find_temporal_bool(*p->inner);
        return std::nullopt;
    }

    static std::optional<std::pair<Span, const char*>> find_temporal_seq(const SequenceExpr& s) {
        if (const auto* b = std::get_if<SeqBool>(&s.node))
            return find_temporal_bool(*b->expr);
        return std::make_pair(s.span, "delay operator");
    }

    static std::optional<std::pair<Span, const char*>> find_temporal(const PropertyExpr& p) {
        if (const auto* s = std::get_if<PropSeq>(&p.node))
            return find_temporal_seq(*s->seq);
        if (const auto* i = std::get_if<PropImplication>(&p.node)) {
            if (i->kind == ImplKind::NonOverlapped)
                return std::make_pair(p.span, "next-cycle implication");
            if (auto r = find_temporal_seq(*i->antecedent))
                return r;
            return find_temporal(*i->consequent);
        }
        if (const auto* n = std::get_if<PropNot>(&p.node))
            return find_temporal(*n->inner);
        const auto& d = std::get<PropDisableIff>(p.node);
        if (auto r = find_temporal_bool(*d.condition))
            return r;
        return find_temporal(*d.body);
    }
};

} // namespace

ParseResult parse_assertion(std::string_view source) {
    ParseResult result;
    LexResult lexed = lex(source);
    if (!lexed.diagnostics.empty()) {
        result.diagnostics = std::move(lexed.diagnostics);
        return result;
    }
    Parser parser(source, std::move(lexed.tokens));
    try {
        result.decl = parser.parse_statement();
    } catch (const Parser::Bail&) {
        result.diagnostics = parser.take_diagnostics();
        assert(!result.diagnostics.empty());
    }
    return result;
}

BoolParseResult parse_bool_expr(std::string_view source) {
    BoolParseResult result;
    LexResult lexed = lex(source);
    if (!lexed.diagnostics.empty()) {
        result.diagnostics = std::move(lexed.diagnostics);
        return result;
    }
    Parser parser(source, std::move(lexed.tokens));
    try {
        result.expr = parser.parse_bool_only();
    } catch (const Parser::Bail&) {
        result.diagnostics = parser.take_diagnostics();
    }
    return result;
}

} // namespace svagen::sva
