// SPDX-License-Identifier: Apache-2.0
#include "svagen/astgen.hpp"

#include "svagen/printer.hpp"

namespace svagen::sva {

namespace {
constexpr uint64_t kMixMultiplier = 0x9e3779b97f4a7c15ULL;
}

AstGenerator::AstGenerator(Options opts) : opts_(std::move(opts)) {
    if (opts_.vocab.empty())
        opts_.vocab = {"a", "b", "c", "sel", "req", "gnt", "valid", "ready", "data", "state"};
    state_ = opts_.seed * kMixMultiplier + 0xbf58476d1ce4e5b9ULL;
    for (int i = 0; i < 4; ++i)
        next_raw();
}

// splitmix64: tiny, stable across platforms, good enough for test-data shapes
uint64_t AstGenerator::next_raw() {
    state_ += kMixMultiplier;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint32_t AstGenerator::pick(uint32_t bound) {
    return bound == 0 ? 0 : static_cast<uint32_t>(next_raw() % bound);
}

const std::string& AstGenerator::pick_name() {
    return opts_.vocab[pick(static_cast<uint32_t>(opts_.vocab.size()))];
}

BoolExprPtr AstGenerator::gen_bool(int depth, bool allow_syscall) {
    // Leaves become more likely as depth runs out.
    uint32_t shape = pick(depth <= 0 ? 2 : 10);
    if (depth <= 0 || shape < 2) {
        if (shape == 1 && pick(3) == 0) {
            NumericLiteral lit;
            switch (pick(4)) {
            case 0: lit.base = LiteralBase::Fill; lit.value = pick(2); break;
            case 1:
                lit.width = 1 + pick(6);
                lit.base = LiteralBase::Binary;
                lit.value = next_raw() & ((1ULL << *lit.width) - 1);
                break;
            case 2:
                lit.width = 4 + pick(5);
                lit.base = LiteralBase::Hex;
                lit.value = next_raw() & ((1ULL << *lit.width) - 1);
                break;
            default: lit.base = LiteralBase::Decimal; lit.value = pick(64); break;
            }
            return mk_bool(std::move(lit));
        }
        Identifier id;
        id.name = pick_name();
        uint32_t sel = pick(8);
        if (sel == 0) {
            id.select = BitSelect{pick(8)};
        } else if (sel == 1) {
            uint32_t lo = pick(4);
            id.select = PartSelect{lo + pick(4), lo};
        }
        return mk_bool(std::move(id));
    }
    if (shape < 4) {
        UnaryOp op = shape == 2 ? UnaryOp::LogicNot : (pick(2) ? UnaryOp::BitNot : UnaryOp::Minus);
        return mk_bool(Unary{op, gen_bool(depth - 1, allow_syscall)});
    }
    if (shape == 4)
        return mk_bool(Paren{gen_bool(depth - 1, allow_syscall)});
    if (shape == 5 && allow_syscall) {
        SystemCall call;
        switch (pick(4)) {
        case 0: call.func = SysFunc::Past; break;
        case 1: call.func = SysFunc::Rose; break;
        case 2: call.func = SysFunc::Fell; break;
        default: call.func = SysFunc::Stable; break;
        }
        call.arg = gen_bool(depth - 1, false);
        if (call.func == SysFunc::Past && pick(2))
            call.cycles = 1 + pick(4);
        return mk_bool(std::move(call));
    }
    static constexpr BinaryOp ops[] = {
        BinaryOp::LogicAnd, BinaryOp::LogicOr, BinaryOp::BitAnd, BinaryOp::BitOr,
        BinaryOp::BitXor,   BinaryOp::Eq,      BinaryOp::Ne,     BinaryOp::Lt,
        BinaryOp::Le,       BinaryOp::Gt,      BinaryOp::Ge,     BinaryOp::Add,
        BinaryOp::Sub,
    };
    BinaryOp op = ops[pick(static_cast<uint32_t>(std::size(ops)))];
    return mk_bool(Binary{op, gen_bool(depth - 1, allow_syscall), gen_bool(depth - 1, allow_syscall)});
}

SequenceExprPtr AstGenerator::gen_sequence(bool temporal) {
    BoolExprPtr first = gen_bool(opts_.max_depth, temporal);
    SequenceExprPtr seq = mk_seq(SeqBool{std::move(first)});
    if (!temporal)
        return seq;
    uint32_t links = pick(3); // 0..2 delay links
    for (uint32_t i = 0; i < links; ++i) {
        uint32_t lo = pick(4);
        std::optional<uint32_t> hi;
        if (pick(3) == 0)
            hi = lo + pick(4);
        SequenceExprPtr rhs = mk_seq(SeqBool{gen_bool(opts_.max_depth - 1, temporal)});
        seq = mk_seq(SeqDelay{std::move(seq), lo, hi, std::move(rhs)});
    }
    return seq;
}

PropertyExprPtr AstGenerator::gen_property(int depth, bool temporal) {
    uint32_t shape = pick(depth <= 0 ? 4 : 8);
    if (shape < 4 || depth <= 0)
        return mk_prop(PropSeq{gen_sequence(temporal)});
    if (shape < 7) {
        ImplKind kind = (temporal && pick(2)) ? ImplKind::NonOverlapped : ImplKind::Overlapped;
        SequenceExprPtr ante = gen_sequence(temporal);
        PropertyExprPtr cons = gen_property(depth - 1, temporal);
        return mk_prop(PropImplication{kind, std::move(ante), std::move(cons)});
    }
    return mk_prop(PropNot{gen_property(depth - 1, temporal)});
}

AssertionDecl AstGenerator::next_assertion() {
    AssertionDecl decl;
    bool clocked = opts_.allow_temporal &&
                   (next_raw() % 1000) < static_cast<uint64_t>(opts_.clocked_probability * 1000);
    bool temporal = clocked; // unclocked assertions must stay combinational
    if (clocked) {
        decl.clocking = ClockingEvent{pick(4) == 0 ? ClockEdge::Negedge : ClockEdge::Posedge,
                                      pick(2) ? "clk" : "clock"};
    }
    PropertyExprPtr prop = gen_property(2, temporal);
    if (clocked && pick(6) == 0) {
        BoolExprPtr cond = gen_bool(1, false);
        prop = mk_prop(PropDisableIff{std::move(cond), std::move(prop)});
    }
    decl.property = std::move(prop);

    // immediate form only when the property is a bare boolean
    if (!clocked) {
        const auto* s = std::get_if<PropSeq>(&decl.property->node);
        if (s && std::holds_alternative<SeqBool>(s->seq->node) && pick(2))
            decl.immediate = true;
    }
    if (pick(5) == 0)
        decl.label = "p" + std::to_string(pick(100));
    decl.raw_text = pretty_print(decl);
    return decl;
}

BoolExprPtr AstGenerator::next_bool_expr(int depth) {
    return gen_bool(depth, false);
}

} // namespace svagen::sva
