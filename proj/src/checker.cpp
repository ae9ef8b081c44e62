// SPDX-License-Identifier: Apache-2.0
#include "svagen/checker.hpp"

#include "svagen/parser.hpp"

#include <algorithm>
#include <sstream>

namespace svagen::check {

using namespace sva;
using model::Trace;

namespace {

uint64_t width_mask(uint32_t width) {
    return width >= 64 ? ~0ULL : ((1ULL << width) - 1);
}

// Cycle-aware value: nullopt means "reads before cycle 0", which makes the
// surrounding attempt vacuous.
struct TriVal {
    std::optional<uint64_t> value;
    uint32_t width = 1;
};

struct TraceEval {
    const Trace& trace;

    uint64_t column(const std::string& name, std::size_t t) const {
        auto it = trace.columns.find(name);
        if (it == trace.columns.end())
            throw CheckError("signal `" + name + "` is not present in the trace");
        return it->second[t];
    }
    uint32_t width(const std::string& name) const {
        auto it = trace.widths.find(name);
        return it == trace.widths.end() ? 1 : it->second;
    }

    TriVal eval(const BoolExpr& e, std::size_t t) const {
        if (const auto* id = std::get_if<Identifier>(&e.node)) {
            uint64_t v = column(id->name, t);
            uint32_t w = width(id->name);
            if (const auto* bit = std::get_if<BitSelect>(&id->select))
                return {(v >> bit->index) & 1ULL, 1};
            if (const auto* part = std::get_if<PartSelect>(&id->select)) {
                uint32_t pw = part->msb - part->lsb + 1;
                return {(v >> part->lsb) & width_mask(pw), pw};
            }
            return {v, w};
        }
        if (const auto* lit = std::get_if<NumericLiteral>(&e.node)) {
            if (lit->base == LiteralBase::Fill)
                return {lit->value & 1ULL, 1};
            uint32_t w = lit->width.value_or(32);
            return {lit->value & width_mask(w), w};
        }
        if (const auto* u = std::get_if<Unary>(&e.node)) {
            TriVal v = eval(*u->operand, t);
            if (!v.value)
                return {std::nullopt, 1};
            switch (u->op) {
            case UnaryOp::LogicNot: return {*v.value == 0 ? 1ULL : 0ULL, 1};
            case UnaryOp::BitNot: return {~*v.value & width_mask(v.width), v.width};
            case UnaryOp::Minus: return {(0 - *v.value) & width_mask(v.width), v.width};
            }
        }
        if (const auto* b = std::get_if<Binary>(&e.node)) {
            TriVal lhs = eval(*b->lhs, t);
            TriVal rhs = eval(*b->rhs, t);
            // short-circuit through unknowns where one side decides
            if (b->op == BinaryOp::LogicAnd) {
                if ((lhs.value && *lhs.value == 0) || (rhs.value && *rhs.value == 0))
                    return {0ULL, 1};
                if (!lhs.value || !rhs.value)
                    return {std::nullopt, 1};
                return {1ULL, 1};
            }
            if (b->op == BinaryOp::LogicOr) {
                if ((lhs.value && *lhs.value != 0) || (rhs.value && *rhs.value != 0))
                    return {1ULL, 1};
                if (!lhs.value || !rhs.value)
                    return {std::nullopt, 1};
                return {0ULL, 1};
            }
            if (!lhs.value || !rhs.value)
                return {std::nullopt, 1};
            uint64_t a = *lhs.value, c = *rhs.value;
            uint32_t w = std::max(lhs.width, rhs.width);
            uint64_t mask = width_mask(w);
            switch (b->op) {
            case BinaryOp::BitAnd: return {a & c & mask, w};
            case BinaryOp::BitOr: return {(a | c) & mask, w};
            case BinaryOp::BitXor: return {(a ^ c) & mask, w};
            case BinaryOp::Eq: return {a == c ? 1ULL : 0ULL, 1};
            case BinaryOp::Ne: return {a != c ? 1ULL : 0ULL, 1};
            case BinaryOp::Lt: return {a < c ? 1ULL : 0ULL, 1};
            case BinaryOp::Le: return {a <= c ? 1ULL : 0ULL, 1};
            case BinaryOp::Gt: return {a > c ? 1ULL : 0ULL, 1};
            case BinaryOp::Ge: return {a >= c ? 1ULL : 0ULL, 1};
            case BinaryOp::Add: return {(a + c) & mask, w};
            case BinaryOp::Sub: return {(a - c) & mask, w};
            default: break;
            }
        }
        if (const auto* p = std::get_if<Paren>(&e.node))
            return eval(*p->inner, t);
        const auto& call = std::get<SystemCall>(e.node);
        switch (call.func) {
        case SysFunc::Past: {
            uint32_t n = call.cycles.value_or(1);
            if (t < n)
                return {std::nullopt, 1};
            return eval(*call.arg, t - n);
        }
        case SysFunc::Rose:
        case SysFunc::Fell: {
            if (t < 1)
                return {std::nullopt, 1};
            TriVal now = eval(*call.arg, t);
            TriVal before = eval(*call.arg, t - 1);
            if (!now.value || !before.value)
                return {std::nullopt, 1};
            uint64_t nb = *now.value & 1ULL;    // LSB, as sampled-value functions do
            uint64_t pb = *before.value & 1ULL;
            bool hit = call.func == SysFunc::Rose ? (nb == 1 && pb == 0) : (nb == 0 && pb == 1);
            return {hit ? 1ULL : 0ULL, 1};
        }
        case SysFunc::Stable: {
            if (t < 1)
                return {std::nullopt, 1};
            TriVal now = eval(*call.arg, t);
            TriVal before = eval(*call.arg, t - 1);
            if (!now.value || !before.value)
                return {std::nullopt, 1};
            return {*now.value == *before.value ? 1ULL : 0ULL, 1};
        }
        }
        throw CheckError("unreachable expression shape");
    }
};

// Matching a delay chain from a start cycle: every completed end cycle where
// the chain holds, plus whether some path ran off the end of the trace or
// read before cycle 0.
struct SeqMatches {
    std::vector<std::size_t> ends;
    bool overflow = false;
    bool unknown = false;
    std::size_t latest = 0; // last cycle examined; feeds disable iff windows
};

struct PropOutcome {
    enum class Status { True, False, Unknown } status = Status::True;
    std::size_t resolve_cycle = 0; // for False: cycle where the violation completed
    bool evaluated = false;        // some obligation actually completed
};

struct Checker {
    TraceEval ev;
    std::size_t len;

    SeqMatches match_seq(const SequenceExpr& seq, std::size_t s) {
        SeqMatches m;
        m.latest = s;
        if (s >= len) {
            m.overflow = true;
            return m;
        }
        if (const auto* b = std::get_if<SeqBool>(&seq.node)) {
            TriVal v = ev.eval(*b->expr, s);
            if (!v.value)
                m.unknown = true;
            else if (*v.value != 0)
                m.ends.push_back(s);
            return m;
        }
        const auto& d = std::get<SeqDelay>(seq.node);
        SeqMatches lhs = match_seq(*d.lhs, s);
        m.overflow = lhs.overflow;
        m.unknown = lhs.unknown;
        m.latest = lhs.latest;
        uint32_t lo = d.min_cycles;
        uint32_t hi = d.max_cycles.value_or(d.min_cycles);
        for (std::size_t e : lhs.ends) {
            for (uint32_t off = lo; off <= hi; ++off) {
                std::size_t t = e + off;
                if (t >= len) {
                    m.overflow = true;
                    continue;
                }
                SeqMatches rhs = match_seq(*d.rhs, t);
                m.overflow |= rhs.overflow;
                m.unknown |= rhs.unknown;
                m.latest = std::max(m.latest, rhs.latest);
                for (std::size_t re : rhs.ends)
                    if (std::find(m.ends.begin(), m.ends.end(), re) == m.ends.end())
                        m.ends.push_back(re);
            }
        }
        std::sort(m.ends.begin(), m.ends.end());
        return m;
    }

    PropOutcome eval_prop(const PropertyExpr& prop, std::size_t s) {
        using Status = PropOutcome::Status;
        if (const auto* ps = std::get_if<PropSeq>(&prop.node)) {
            SeqMatches m = match_seq(*ps->seq, s);
            PropOutcome out;
            if (!m.ends.empty()) {
                out.status = Status::True;
                out.evaluated = true;
                out.resolve_cycle = m.ends.front();
            } else if (m.overflow || m.unknown) {
                out.status = Status::Unknown;
                out.resolve_cycle = m.latest;
            } else {
                out.status = Status::False;
                out.evaluated = true;
                out.resolve_cycle = m.latest;
            }
            return out;
        }
        if (const auto* impl = std::get_if<PropImplication>(&prop.node)) {
            SeqMatches ante = match_seq(*impl->antecedent, s);
            PropOutcome out;
            out.status = Status::True;
            out.resolve_cycle = ante.latest;
            bool any_unknown = ante.unknown || ante.overflow;
            for (std::size_t e : ante.ends) {
                std::size_t cs = impl->kind == ImplKind::Overlapped ? e : e + 1;
                if (cs >= len) {
                    any_unknown = true; // obligation extends past the final cycle
                    continue;
                }
                PropOutcome r = eval_prop(*impl->consequent, cs);
                out.evaluated |= r.evaluated;
                if (r.status == Status::False) {
                    out.status = Status::False;
                    out.resolve_cycle = r.resolve_cycle;
                    return out;
                }
                if (r.status == Status::Unknown)
                    any_unknown = true;
            }
            if (any_unknown)
                out.status = Status::Unknown;
            return out;
        }
        if (const auto* n = std::get_if<PropNot>(&prop.node)) {
            PropOutcome r = eval_prop(*n->inner, s);
            if (r.status == Status::True)
                r.status = Status::False;
            else if (r.status == Status::False)
                r.status = Status::True;
            return r;
        }
        const auto& d = std::get<PropDisableIff>(prop.node);
        PropOutcome r = eval_prop(*d.body, s);
        if (r.status == Status::False) {
            for (std::size_t t = s; t <= r.resolve_cycle && t < len; ++t) {
                TriVal c = ev.eval(*d.condition, t);
                if (c.value && *c.value != 0) {
                    // the attempt was aborted before its violation completed
                    r.status = Status::True;
                    r.evaluated = false;
                    return r;
                }
            }
        }
        return r;
    }
};

} // namespace

CheckOutcome check_on_trace(const AssertionDecl& decl, const Trace& trace) {
    Checker checker{TraceEval{trace}, trace.length};
    CheckOutcome out;
    bool all_vacuous = true;
    for (std::size_t s = 0; s < trace.length; ++s) {
        PropOutcome r = checker.eval_prop(*decl.property, s);
        if (r.status == PropOutcome::Status::False) {
            out.holds = false;
            out.violation_cycle = s;
            out.vacuous = false;
            return out;
        }
        if (r.evaluated && r.status == PropOutcome::Status::True)
            all_vacuous = false;
    }
    out.holds = true;
    out.vacuous = all_vacuous && trace.length > 0;
    return out;
}

std::string verdict_kind_name(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::SyntaxError: return "syntax_error";
    case VerdictKind::FunctionallyIncorrect: return "functionally_incorrect";
    case VerdictKind::FunctionallyCorrect: return "functionally_correct";
    }
    return "?";
}

namespace {

// Decodes sequence index bits into one row of input values per cycle.
std::vector<std::vector<uint64_t>> decode_sequence(uint64_t index, uint32_t depth,
                                                   const model::BehavioralModel& m) {
    std::vector<std::vector<uint64_t>> rows(depth);
    uint32_t bit = 0;
    for (uint32_t t = 0; t < depth; ++t) {
        rows[t].reserve(m.inputs.size());
        for (const auto& p : m.inputs) {
            uint64_t v = (index >> bit) & width_mask(p.width);
            bit += p.width;
            rows[t].push_back(v);
        }
    }
    return rows;
}

struct SplitMix {
    uint64_t state;
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

std::vector<std::vector<uint64_t>> random_sequence(SplitMix& rng, uint32_t depth,
                                                   const model::BehavioralModel& m) {
    std::vector<std::vector<uint64_t>> rows(depth);
    for (uint32_t t = 0; t < depth; ++t)
        for (const auto& p : m.inputs)
            rows[t].push_back(rng.next() & width_mask(p.width));
    return rows;
}

} // namespace

Verdict classify(const std::string& decl_text, const model::BehavioralModel& model,
                 const rtl::ModuleInterface& iface, const StimulusPlan& plan) {
    Verdict verdict;
    auto parsed = sva::parse_assertion(decl_text);
    if (!parsed.ok()) {
        verdict.kind = VerdictKind::SyntaxError;
        verdict.diagnostics = parsed.diagnostics;
        return verdict;
    }
    auto semantic = rtl::resolve_names(*parsed.decl, iface);
    if (!semantic.empty()) {
        verdict.kind = VerdictKind::SyntaxError;
        verdict.diagnostics = std::move(semantic);
        return verdict;
    }

    const uint32_t bits = model.total_input_bits();
    const bool sequential = model.mode == rtl::DesignMode::Sequential;
    const uint32_t depth = sequential ? plan.horizon : 1;

    if (plan.strategy == Strategy::Exhaustive) {
        if (sequential && static_cast<uint64_t>(bits) * plan.horizon > 24)
            throw PlanError("exhaustive enumeration needs input bits x horizon <= 24; design `" +
                            model.name + "` has " + std::to_string(bits) + " input bits at horizon " +
                            std::to_string(plan.horizon) + " — choose the random strategy");
        if (!sequential && bits > 16)
            throw PlanError("exhaustive enumeration needs <= 16 input bits; design `" + model.name +
                            "` has " + std::to_string(bits) + " — choose the random strategy");
    }

    bool all_vacuous = true;
    bool any_trace = false;
    auto try_trace = [&](const std::vector<std::vector<uint64_t>>& rows) -> bool {
        model::Trace trace = simulate(model, rows);
        CheckOutcome outcome = check_on_trace(*parsed.decl, trace);
        any_trace = true;
        if (!outcome.holds) {
            verdict.kind = VerdictKind::FunctionallyIncorrect;
            verdict.counterexample = std::move(trace);
            verdict.violation_cycle = outcome.violation_cycle;
            return true;
        }
        all_vacuous &= outcome.vacuous;
        return false;
    };

    if (plan.strategy == Strategy::Exhaustive) {
        const uint64_t total = 1ULL << (static_cast<uint64_t>(bits) * depth);
        for (uint64_t idx = 0; idx < total; ++idx)
            if (try_trace(decode_sequence(idx, depth, model)))
                return verdict;
    } else {
        SplitMix rng{plan.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL};
        for (uint32_t i = 0; i < plan.random_budget; ++i)
            if (try_trace(random_sequence(rng, depth, model)))
                return verdict;
    }

    verdict.kind = VerdictKind::FunctionallyCorrect;
    verdict.vacuous_pass = any_trace && all_vacuous;
    return verdict;
}

AdaptedPlan adapt_plan(const StimulusPlan& plan, uint32_t input_bits, rtl::DesignMode mode) {
    AdaptedPlan adapted;
    adapted.primary = plan;
    if (plan.strategy == Strategy::Random)
        return adapted;

    std::ostringstream note;
    if (mode == rtl::DesignMode::Combinational) {
        if (input_bits > 16) {
            adapted.primary.strategy = Strategy::Random;
            note << "input space 2^" << input_bits
                 << " exceeds the exhaustive bound; using " << plan.random_budget
                 << " random vectors";
            adapted.note = note.str();
        }
        return adapted;
    }

    // sequential: shrink the exhaustive depth until the sequence space fits
    uint32_t depth = plan.horizon;
    if (input_bits > 0) {
        depth = std::min(depth, 24u / input_bits);
        while (depth > 0 && (static_cast<uint64_t>(input_bits) * depth >= 63 ||
                             (1ULL << (static_cast<uint64_t>(input_bits) * depth)) >
                                 plan.max_sequences))
            --depth;
    }
    if (depth == 0) {
        adapted.primary.strategy = Strategy::Random;
        adapted.note = "sequence space too large for exhaustive enumeration at any depth; "
                       "using the random strategy";
        return adapted;
    }
    if (depth < plan.horizon) {
        adapted.primary.horizon = depth;
        uint64_t exhaustive_count = 1ULL << (static_cast<uint64_t>(input_bits) * depth);
        note << "exhaustive depth reduced to " << depth << " cycles ("
             << exhaustive_count << " sequences)";
        if (exhaustive_count < plan.random_budget) {
            StimulusPlan topup = plan;
            topup.strategy = Strategy::Random;
            topup.random_budget = static_cast<uint32_t>(plan.random_budget - exhaustive_count);
            adapted.topup = topup;
            note << "; topping up with " << topup.random_budget << " random sequences at horizon "
                 << plan.horizon;
        }
        adapted.note = note.str();
    }
    return adapted;
}

Verdict classify_adaptive(const std::string& decl_text, const model::BehavioralModel& model,
                          const rtl::ModuleInterface& iface, const StimulusPlan& plan,
                          std::string* note_out) {
    AdaptedPlan adapted = adapt_plan(plan, model.total_input_bits(), model.mode);
    if (note_out)
        *note_out = adapted.note;
    Verdict verdict = classify(decl_text, model, iface, adapted.primary);
    if (verdict.kind == VerdictKind::FunctionallyCorrect && adapted.topup) {
        Verdict more = classify(decl_text, model, iface, *adapted.topup);
        if (more.kind != VerdictKind::FunctionallyCorrect)
            return more;
        verdict.vacuous_pass = verdict.vacuous_pass && more.vacuous_pass;
    }
    return verdict;
}

} // namespace svagen::check
