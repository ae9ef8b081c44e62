// SPDX-License-Identifier: Apache-2.0
#include "svagen/printer.hpp"

#include <sstream>

namespace svagen::sva {

namespace {

const char* binary_op_text(BinaryOp op) {
    switch (op) {
    case BinaryOp::LogicAnd: return "&&";
    case BinaryOp::LogicOr: return "||";
    case BinaryOp::BitAnd: return "&";
    case BinaryOp::BitOr: return "|";
    case BinaryOp::BitXor: return "^";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    }
    return "?";
}

std::string digits_in_base(uint64_t value, int radix) {
    if (value == 0)
        return "0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    while (value > 0) {
        out.insert(out.begin(), digits[value % static_cast<uint64_t>(radix)]);
        value /= static_cast<uint64_t>(radix);
    }
    return out;
}

std::string print_literal(const NumericLiteral& lit) {
    if (lit.base == LiteralBase::Fill)
        return lit.value ? "'1" : "'0";
    std::ostringstream out;
    if (lit.width) {
        char letter = 'd';
        int radix = 10;
        switch (lit.base) {
        case LiteralBase::Binary: letter = 'b'; radix = 2; break;
        case LiteralBase::Octal: letter = 'o'; radix = 8; break;
        case LiteralBase::Hex: letter = 'h'; radix = 16; break;
        default: break;
        }
        out << *lit.width << '\'' << letter << digits_in_base(lit.value, radix);
    } else {
        out << lit.value;
    }
    return out.str();
}

// Operands are always printed inside parentheses; an explicit Paren node
// supplies its own pair, so it is passed through unchanged.
std::string operand(const BoolExpr& e) {
    if (std::holds_alternative<Paren>(e.node))
        return print_expr(e);
    return "(" + print_expr(e) + ")";
}

std::string seq_operand(const SequenceExpr& seq);

std::string print_property_inner(const PropertyExpr& prop, bool top);

} // namespace

std::string print_expr(const BoolExpr& expr) {
    if (const auto* id = std::get_if<Identifier>(&expr.node)) {
        std::ostringstream out;
        out << id->name;
        if (const auto* bit = std::get_if<BitSelect>(&id->select))
            out << '[' << bit->index << ']';
        else if (const auto* part = std::get_if<PartSelect>(&id->select))
            out << '[' << part->msb << ':' << part->lsb << ']';
        return out.str();
    }
    if (const auto* lit = std::get_if<NumericLiteral>(&expr.node))
        return print_literal(*lit);
    if (const auto* u = std::get_if<Unary>(&expr.node)) {
        const char* op = u->op == UnaryOp::LogicNot ? "!" : u->op == UnaryOp::BitNot ? "~" : "-";
        return std::string(op) + operand(*u->operand);
    }
    if (const auto* b = std::get_if<Binary>(&expr.node))
        return operand(*b->lhs) + " " + binary_op_text(b->op) + " " + operand(*b->rhs);
    if (const auto* p = std::get_if<Paren>(&expr.node))
        return "(" + print_expr(*p->inner) + ")";
    const auto& call = std::get<SystemCall>(expr.node);
    const char* name = call.func == SysFunc::Past ? "$past"
                     : call.func == SysFunc::Rose ? "$rose"
                     : call.func == SysFunc::Fell ? "$fell"
                                                  : "$stable";
    std::ostringstream out;
    out << name << '(' << print_expr(*call.arg);
    if (call.cycles)
        out << ", " << *call.cycles;
    out << ')';
    return out.str();
}

namespace {

std::string seq_operand(const SequenceExpr& seq) {
    if (const auto* b = std::get_if<SeqBool>(&seq.node))
        return operand(*b->expr);
    // nested delay chains print bare; ## is left-associative, so the chain
    // re-parses to the same left-leaning tree
    return print_sequence(seq);
}

std::string print_property_inner(const PropertyExpr& prop, bool top) {
    if (const auto* s = std::get_if<PropSeq>(&prop.node)) {
        if (top) {
            if (const auto* b = std::get_if<SeqBool>(&s->seq->node))
                return print_expr(*b->expr);
            return print_sequence(*s->seq);
        }
        return seq_operand(*s->seq);
    }
    if (const auto* i = std::get_if<PropImplication>(&prop.node)) {
        const char* arrow = i->kind == ImplKind::Overlapped ? "|->" : "|=>";
        return seq_operand(*i->antecedent) + " " + arrow + " " +
               print_property_inner(*i->consequent, false);
    }
    if (const auto* n = std::get_if<PropNot>(&prop.node))
        return "not " + print_property_inner(*n->inner, false);
    const auto& d = std::get<PropDisableIff>(prop.node);
    return "disable iff (" + print_expr(*d.condition) + ") " +
           print_property_inner(*d.body, true);
}

} // namespace

std::string print_sequence(const SequenceExpr& seq) {
    if (const auto* b = std::get_if<SeqBool>(&seq.node))
        return operand(*b->expr);
    const auto& d = std::get<SeqDelay>(seq.node);
    std::ostringstream out;
    out << print_sequence(*d.lhs) << " ##";
    if (d.max_cycles)
        out << '[' << d.min_cycles << ':' << *d.max_cycles << ']';
    else
        out << d.min_cycles;
    out << ' ' << seq_operand(*d.rhs);
    return out.str();
}

std::string print_property(const PropertyExpr& prop) {
    return print_property_inner(prop, true);
}

std::string pretty_print(const AssertionDecl& decl) {
    std::ostringstream out;
    if (decl.label)
        out << *decl.label << ": ";

    const SeqBool* bare = nullptr;
    if (const auto* s = std::get_if<PropSeq>(&decl.property->node))
        bare = std::get_if<SeqBool>(&s->seq->node);

    if (decl.immediate && !decl.clocking && bare != nullptr) {
        out << "assert(" << print_expr(*bare->expr) << ");";
        return out.str();
    }

    out << "assert property (";
    if (decl.clocking) {
        out << "@(" << (decl.clocking->edge == ClockEdge::Posedge ? "posedge" : "negedge") << ' '
            << decl.clocking->signal << ") ";
    }
    out << print_property_inner(*decl.property, true) << ");";
    return out.str();
}

} // namespace svagen::sva
