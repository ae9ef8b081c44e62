// SPDX-License-Identifier: Apache-2.0
#include "svagen/ast.hpp"

namespace svagen::sva {

BoolExprPtr mk_bool(decltype(BoolExpr::node) node, Span span) {
    return std::make_shared<const BoolExpr>(BoolExpr{std::move(node), span});
}
SequenceExprPtr mk_seq(decltype(SequenceExpr::node) node, Span span) {
    return std::make_shared<const SequenceExpr>(SequenceExpr{std::move(node), span});
}
PropertyExprPtr mk_prop(decltype(PropertyExpr::node) node, Span span) {
    return std::make_shared<const PropertyExpr>(PropertyExpr{std::move(node), span});
}

namespace {

const BoolExpr& strip_parens(const BoolExpr& e) {
    const BoolExpr* cur = &e;
    while (const auto* p = std::get_if<Paren>(&cur->node))
        cur = p->inner.get();
    return *cur;
}

} // namespace

bool structurally_equal(const BoolExpr& lhs, const BoolExpr& rhs) {
    const BoolExpr& a = strip_parens(lhs);
    const BoolExpr& b = strip_parens(rhs);
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* ia = std::get_if<Identifier>(&a.node)) {
        const auto& ib = std::get<Identifier>(b.node);
        return ia->name == ib.name && ia->select == ib.select;
    }
    if (const auto* na = std::get_if<NumericLiteral>(&a.node)) {
        const auto& nb = std::get<NumericLiteral>(b.node);
        return na->width == nb.width && na->base == nb.base && na->value == nb.value;
    }
    if (const auto* ua = std::get_if<Unary>(&a.node)) {
        const auto& ub = std::get<Unary>(b.node);
        return ua->op == ub.op && structurally_equal(*ua->operand, *ub.operand);
    }
    if (const auto* ba = std::get_if<Binary>(&a.node)) {
        const auto& bb = std::get<Binary>(b.node);
        return ba->op == bb.op && structurally_equal(*ba->lhs, *bb.lhs) &&
               structurally_equal(*ba->rhs, *bb.rhs);
    }
    if (const auto* sa = std::get_if<SystemCall>(&a.node)) {
        const auto& sb = std::get<SystemCall>(b.node);
        return sa->func == sb.func && sa->cycles == sb.cycles &&
               structurally_equal(*sa->arg, *sb.arg);
    }
    return false; // Paren handled by strip
}

bool structurally_equal(const SequenceExpr& a, const SequenceExpr& b) {
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* sa = std::get_if<SeqBool>(&a.node))
        return structurally_equal(*sa->expr, *std::get<SeqBool>(b.node).expr);
    const auto& da = std::get<SeqDelay>(a.node);
    const auto& db = std::get<SeqDelay>(b.node);
    return da.min_cycles == db.min_cycles && da.max_cycles == db.max_cycles &&
           structurally_equal(*da.lhs, *db.lhs) && structurally_equal(*da.rhs, *db.rhs);
}

bool structurally_equal(const PropertyExpr& a, const PropertyExpr& b) {
    if (a.node.index() != b.node.index())
        return false;
    if (const auto* pa = std::get_if<PropSeq>(&a.node))
        return structurally_equal(*pa->seq, *std::get<PropSeq>(b.node).seq);
    if (const auto* ia = std::get_if<PropImplication>(&a.node)) {
        const auto& ib = std::get<PropImplication>(b.node);
        return ia->kind == ib.kind && structurally_equal(*ia->antecedent, *ib.antecedent) &&
               structurally_equal(*ia->consequent, *ib.consequent);
    }
    if (const auto* na = std::get_if<PropNot>(&a.node))
        return structurally_equal(*na->inner, *std::get<PropNot>(b.node).inner);
    const auto& da = std::get<PropDisableIff>(a.node);
    const auto& db = std::get<PropDisableIff>(b.node);
    return structurally_equal(*da.condition, *db.condition) &&
           structurally_equal(*da.body, *db.body);
}

bool structurally_equal(const AssertionDecl& a, const AssertionDecl& b) {
    return a.label == b.label && a.clocking == b.clocking && a.immediate == b.immediate &&
           structurally_equal(*a.property, *b.property);
}

void for_each_identifier(const BoolExpr& expr,
                         const std::function<void(const Identifier&, const Span&)>& fn) {
    if (const auto* id = std::get_if<Identifier>(&expr.node)) {
        fn(*id, expr.span);
    } else if (const auto* u = std::get_if<Unary>(&expr.node)) {
        for_each_identifier(*u->operand, fn);
    } else if (const auto* b = std::get_if<Binary>(&expr.node)) {
        for_each_identifier(*b->lhs, fn);
        for_each_identifier(*b->rhs, fn);
    } else if (const auto* p = std::get_if<Paren>(&expr.node)) {
        for_each_identifier(*p->inner, fn);
    } else if (const auto* s = std::get_if<SystemCall>(&expr.node)) {
        for_each_identifier(*s->arg, fn);
    }
}

namespace {

void visit_sequence(const SequenceExpr& seq,
                    const std::function<void(const Identifier&, const Span&)>& fn) {
    if (const auto* b = std::get_if<SeqBool>(&seq.node)) {
        for_each_identifier(*b->expr, fn);
    } else {
        const auto& d = std::get<SeqDelay>(seq.node);
        visit_sequence(*d.lhs, fn);
        visit_sequence(*d.rhs, fn);
    }
}

} // namespace

void for_each_identifier(const PropertyExpr& prop,
                         const std::function<void(const Identifier&, const Span&)>& fn) {
    if (const auto* s = std::get_if<PropSeq>(&prop.node)) {
        visit_sequence(*s->seq, fn);
    } else if (const auto* i = std::get_if<PropImplication>(&prop.node)) {
        visit_sequence(*i->antecedent, fn);
        for_each_identifier(*i->consequent, fn);
    } else if (const auto* n = std::get_if<PropNot>(&prop.node)) {
        for_each_identifier(*n->inner, fn);
    } else {
        const auto& d = std::get<PropDisableIff>(prop.node);
        for_each_identifier(*d.condition, fn);
        for_each_identifier(*d.body, fn);
    }
}

namespace {

bool seq_contains_delay(const SequenceExpr& seq) {
    return std::holds_alternative<SeqDelay>(seq.node);
}

bool seq_contains_syscall(const SequenceExpr& seq) {
    if (const auto* b = std::get_if<SeqBool>(&seq.node))
        return contains_system_call(*b->expr);
    const auto& d = std::get<SeqDelay>(seq.node);
    return seq_contains_syscall(*d.lhs) || seq_contains_syscall(*d.rhs);
}

} // namespace

bool contains_system_call(const BoolExpr& expr) {
    if (std::holds_alternative<SystemCall>(expr.node))
        return true;
    if (const auto* u = std::get_if<Unary>(&expr.node))
        return contains_system_call(*u->operand);
    if (const auto* b = std::get_if<Binary>(&expr.node))
        return contains_system_call(*b->lhs) || contains_system_call(*b->rhs);
    if (const auto* p = std::get_if<Paren>(&expr.node))
        return contains_system_call(*p->inner);
    return false;
}

bool contains_delay(const PropertyExpr& prop) {
    if (const auto* s = std::get_if<PropSeq>(&prop.node))
        return seq_contains_delay(*s->seq);
    if (const auto* i = std::get_if<PropImplication>(&prop.node))
        return seq_contains_delay(*i->antecedent) || contains_delay(*i->consequent);
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return contains_delay(*n->inner);
    return contains_delay(*std::get<PropDisableIff>(prop.node).body);
}

bool contains_system_call(const PropertyExpr& prop) {
    if (const auto* s = std::get_if<PropSeq>(&prop.node))
        return seq_contains_syscall(*s->seq);
    if (const auto* i = std::get_if<PropImplication>(&prop.node))
        return seq_contains_syscall(*i->antecedent) || contains_system_call(*i->consequent);
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return contains_system_call(*n->inner);
    const auto& d = std::get<PropDisableIff>(prop.node);
    return contains_system_call(*d.condition) || contains_system_call(*d.body);
}

bool contains_nonoverlapped_implication(const PropertyExpr& prop) {
    if (const auto* i = std::get_if<PropImplication>(&prop.node)) {
        return i->kind == ImplKind::NonOverlapped ||
               contains_nonoverlapped_implication(*i->consequent);
    }
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return contains_nonoverlapped_implication(*n->inner);
    if (const auto* d = std::get_if<PropDisableIff>(&prop.node))
        return contains_nonoverlapped_implication(*d->body);
    return false;
}

bool contains_implication(const PropertyExpr& prop) {
    if (std::holds_alternative<PropImplication>(prop.node))
        return true;
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return contains_implication(*n->inner);
    if (const auto* d = std::get_if<PropDisableIff>(&prop.node))
        return contains_implication(*d->body);
    return false;
}

bool contains_disable_iff(const PropertyExpr& prop) {
    if (std::holds_alternative<PropDisableIff>(prop.node))
        return true;
    if (const auto* i = std::get_if<PropImplication>(&prop.node))
        return contains_disable_iff(*i->consequent);
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return contains_disable_iff(*n->inner);
    return false;
}

bool is_combinationally_well_formed(const AssertionDecl& decl) {
    if (decl.clocking)
        return true;
    return !contains_delay(*decl.property) && !contains_system_call(*decl.property) &&
           !contains_nonoverlapped_implication(*decl.property);
}

} // namespace svagen::sva
