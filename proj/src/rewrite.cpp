// SPDX-License-Identifier: Apache-2.0
#include "svagen/rewrite.hpp"

#include "svagen/printer.hpp"

namespace svagen::rewrite {

using namespace sva;

namespace {

struct DelayFound {
    Span span;
};

// Strips $past/$rose/$fell/$stable down to their argument.  They are
// clock-relative observations, so in a clockless reading only the current
// value remains.
BoolExprPtr strip_sampled(const BoolExpr& e) {
    if (const auto* u = std::get_if<Unary>(&e.node))
        return mk_bool(Unary{u->op, strip_sampled(*u->operand)}, e.span);
    if (const auto* b = std::get_if<Binary>(&e.node))
        return mk_bool(Binary{b->op, strip_sampled(*b->lhs), strip_sampled(*b->rhs)}, e.span);
    if (const auto* p = std::get_if<Paren>(&e.node))
        return mk_bool(Paren{strip_sampled(*p->inner)}, e.span);
    if (const auto* s = std::get_if<SystemCall>(&e.node))
        return strip_sampled(*s->arg);
    return mk_bool(e.node, e.span);
}

BoolExprPtr seq_to_bool(const SequenceExpr& seq) {
    if (const auto* b = std::get_if<SeqBool>(&seq.node))
        return strip_sampled(*b->expr);
    throw DelayFound{seq.span};
}

BoolExprPtr prop_to_bool(const PropertyExpr& prop) {
    if (const auto* s = std::get_if<PropSeq>(&prop.node))
        return seq_to_bool(*s->seq);
    if (const auto* i = std::get_if<PropImplication>(&prop.node)) {
        // both implication kinds become (!a) || b
        BoolExprPtr nota = mk_bool(Unary{UnaryOp::LogicNot, seq_to_bool(*i->antecedent)});
        return mk_bool(Binary{BinaryOp::LogicOr, std::move(nota), prop_to_bool(*i->consequent)});
    }
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return mk_bool(Unary{UnaryOp::LogicNot, prop_to_bool(*n->inner)});
    // disable iff drops its condition
    return prop_to_bool(*std::get<PropDisableIff>(prop.node).body);
}

bool already_combinational(const AssertionDecl& decl) {
    return !decl.clocking && decl.immediate && !contains_implication(*decl.property) &&
           !contains_system_call(*decl.property) && !contains_disable_iff(*decl.property) &&
           !contains_delay(*decl.property);
}

} // namespace

RewriteResult to_combinational(const AssertionDecl& decl) {
    RewriteResult result;
    if (already_combinational(decl)) {
        result.decl = decl; // fixed point: nothing to rewrite
        return result;
    }
    try {
        BoolExprPtr expr = prop_to_bool(*decl.property);
        AssertionDecl out;
        out.label = decl.label;
        out.immediate = true;
        out.property = mk_prop(PropSeq{mk_seq(SeqBool{expr}, expr->span)}, expr->span);
        out.raw_text = pretty_print(out);
        out.source_span = make_span(out.raw_text, 0, out.raw_text.size());
        result.decl = std::move(out);
    } catch (const DelayFound& df) {
        std::size_t start = df.span.start;
        std::size_t end = df.span.end;
        if (end <= start) { // synthesized tree without source spans
            std::size_t at = decl.raw_text.find("##");
            start = at == std::string::npos ? 0 : at;
            end = at == std::string::npos ? 0 : at + 2;
        }
        result.diagnostic = make_diagnostic(
            Severity::Error, DiagCategory::Semantic, "E_COMB_DELAY", decl.raw_text, start,
            end, "delay ",
            " has no combinational reading; remove the ## delay or rephrase the behavior as a "
            "single-cycle boolean");
    }
    return result;
}

} // namespace svagen::rewrite
