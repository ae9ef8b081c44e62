// SPDX-License-Identifier: Apache-2.0
#include "svagen/model.hpp"

#include "svagen/parser.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace svagen::model {

using nlohmann::json;

namespace {

uint64_t width_mask(uint32_t width) {
    return width >= 64 ? ~0ULL : ((1ULL << width) - 1);
}

sva::BoolExprPtr parse_model_expr(const std::string& text, const std::string& where) {
    auto r = sva::parse_bool_expr(text);
    if (!r.ok()) {
        throw ModelError(where + ": expression `" + text + "` does not parse: " +
                         (r.diagnostics.empty() ? "unknown error" : r.diagnostics.front().message));
    }
    if (sva::contains_system_call(*r.expr))
        throw ModelError(where + ": model expressions cannot use sampled-value functions");
    return r.expr;
}

} // namespace

uint32_t BehavioralModel::total_input_bits() const {
    uint32_t bits = 0;
    for (const auto& p : inputs)
        bits += p.width;
    return bits;
}

std::optional<uint32_t> BehavioralModel::width_of(const std::string& name) const {
    for (const auto& p : inputs)
        if (p.name == name)
            return p.width;
    for (const auto& s : state_vars)
        if (s.name == name)
            return s.width;
    for (const auto& o : outputs)
        if (o.first == name)
            return 1; // refined at simulation time from the expression width
    return std::nullopt;
}

BehavioralModel load_model_json(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ModelError(origin + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object())
        throw ModelError(origin + ": model file must hold a JSON object");

    static const std::set<std::string> known = {"name",       "mode",    "inputs",
                                                "state_vars", "next_state", "outputs"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key()))
            throw ModelError(origin + ": unknown field `" + it.key() + "`");

    BehavioralModel m;
    m.name = doc.value("name", "");
    if (m.name.empty())
        throw ModelError(origin + ": missing model name");
    std::string mode = doc.value("mode", "");
    if (mode == "sequential")
        m.mode = rtl::DesignMode::Sequential;
    else if (mode == "combinational")
        m.mode = rtl::DesignMode::Combinational;
    else
        throw ModelError(origin + ": mode must be `sequential` or `combinational`");

    std::set<std::string> names;
    auto declare = [&](const std::string& n, uint32_t width, const char* what) {
        if (n.empty())
            throw ModelError(origin + ": empty " + std::string(what) + " name");
        if (!names.insert(n).second)
            throw ModelError(origin + ": duplicate signal name `" + n + "`");
        if (width < 1 || width > 32)
            throw ModelError(origin + ": width of `" + n + "` must be between 1 and 32");
    };

    for (const auto& item : doc.value("inputs", json::array())) {
        PortDef p;
        p.name = item.value("name", "");
        p.width = item.value("width", 1u);
        declare(p.name, p.width, "input");
        m.inputs.push_back(std::move(p));
    }
    for (const auto& item : doc.value("state_vars", json::array())) {
        StateVarDef s;
        s.name = item.value("name", "");
        s.width = item.value("width", 1u);
        s.init = item.value("init", 0ull);
        declare(s.name, s.width, "state variable");
        s.init &= width_mask(s.width);
        m.state_vars.push_back(std::move(s));
    }
    if (m.mode == rtl::DesignMode::Combinational && !m.state_vars.empty())
        throw ModelError(origin + ": combinational models cannot declare state variables");

    json next = doc.value("next_state", json::object());
    for (const auto& s : m.state_vars) {
        if (!next.contains(s.name))
            throw ModelError(origin + ": missing next_state expression for `" + s.name + "`");
        m.next_state.emplace_back(
            s.name, parse_model_expr(next.at(s.name).get<std::string>(),
                                     origin + " next_state." + s.name));
    }
    if (next.size() != m.state_vars.size())
        throw ModelError(origin + ": next_state has entries for undeclared state variables");

    for (const auto& [key, value] : doc.value("outputs", json::object()).items()) {
        if (names.count(key))
            throw ModelError(origin + ": output `" + key + "` collides with a declared signal");
        m.outputs.emplace_back(key, parse_model_expr(value.get<std::string>(),
                                                     origin + " outputs." + key));
    }

    // every referenced name must be declared
    auto check_refs = [&](const sva::BoolExprPtr& e, const std::string& where) {
        sva::for_each_identifier(*e, [&](const sva::Identifier& id, const Span&) {
            if (!names.count(id.name))
                throw ModelError(origin + " " + where + ": undeclared name `" + id.name + "`");
        });
    };
    for (const auto& [n, e] : m.next_state)
        check_refs(e, "next_state." + n);
    for (const auto& [n, e] : m.outputs)
        check_refs(e, "outputs." + n);
    return m;
}

BehavioralModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ModelError(path + ": cannot open model file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return load_model_json(buf.str(), path);
    } catch (const json::exception& e) {
        throw ModelError(path + ": malformed model file: " + e.what());
    }
}

// ---------------------------------------------------------------------------

Value eval_expr(const sva::BoolExpr& expr, const Env& env) {
    using namespace sva;
    if (const auto* id = std::get_if<Identifier>(&expr.node)) {
        auto it = env.find(id->name);
        if (it == env.end())
            throw EvalError("unbound identifier `" + id->name + "`");
        Value v = it->second;
        if (const auto* bit = std::get_if<BitSelect>(&id->select))
            return {(v.value >> bit->index) & 1ULL, 1};
        if (const auto* part = std::get_if<PartSelect>(&id->select)) {
            uint32_t w = part->msb - part->lsb + 1;
            return {(v.value >> part->lsb) & width_mask(w), w};
        }
        return v;
    }
    if (const auto* lit = std::get_if<NumericLiteral>(&expr.node)) {
        if (lit->base == LiteralBase::Fill)
            return {lit->value & 1ULL, 1};
        uint32_t w = lit->width.value_or(32);
        return {lit->value & width_mask(w), w};
    }
    if (const auto* u = std::get_if<Unary>(&expr.node)) {
        Value v = eval_expr(*u->operand, env);
        switch (u->op) {
        case UnaryOp::LogicNot: return {v.value == 0 ? 1ULL : 0ULL, 1};
        case UnaryOp::BitNot: return {~v.value & width_mask(v.width), v.width};
        case UnaryOp::Minus: return {(0 - v.value) & width_mask(v.width), v.width};
        }
    }
    if (const auto* b = std::get_if<Binary>(&expr.node)) {
        Value lhs = eval_expr(*b->lhs, env);
        Value rhs = eval_expr(*b->rhs, env);
        uint32_t w = std::max(lhs.width, rhs.width);
        uint64_t mask = width_mask(w);
        switch (b->op) {
        case BinaryOp::LogicAnd: return {(lhs.value != 0 && rhs.value != 0) ? 1ULL : 0ULL, 1};
        case BinaryOp::LogicOr: return {(lhs.value != 0 || rhs.value != 0) ? 1ULL : 0ULL, 1};
        case BinaryOp::BitAnd: return {lhs.value & rhs.value & mask, w};
        case BinaryOp::BitOr: return {(lhs.value | rhs.value) & mask, w};
        case BinaryOp::BitXor: return {(lhs.value ^ rhs.value) & mask, w};
        case BinaryOp::Eq: return {lhs.value == rhs.value ? 1ULL : 0ULL, 1};
        case BinaryOp::Ne: return {lhs.value != rhs.value ? 1ULL : 0ULL, 1};
        case BinaryOp::Lt: return {lhs.value < rhs.value ? 1ULL : 0ULL, 1};
        case BinaryOp::Le: return {lhs.value <= rhs.value ? 1ULL : 0ULL, 1};
        case BinaryOp::Gt: return {lhs.value > rhs.value ? 1ULL : 0ULL, 1};
        case BinaryOp::Ge: return {lhs.value >= rhs.value ? 1ULL : 0ULL, 1};
        case BinaryOp::Add: return {(lhs.value + rhs.value) & mask, w};
        case BinaryOp::Sub: return {(lhs.value - rhs.value) & mask, w};
        }
    }
    if (const auto* p = std::get_if<Paren>(&expr.node))
        return eval_expr(*p->inner, env);
    throw EvalError("sampled-value functions are cycle-relative; evaluate them on a trace");
}

std::string Trace::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < order.size(); ++i)
        out << (i ? "," : "") << order[i];
    out << '\n';
    for (std::size_t t = 0; t < length; ++t) {
        for (std::size_t i = 0; i < order.size(); ++i)
            out << (i ? "," : "") << columns.at(order[i])[t];
        out << '\n';
    }
    return out.str();
}

Trace simulate(const BehavioralModel& model, const std::vector<std::vector<uint64_t>>& input_rows) {
    Trace trace;
    trace.length = input_rows.size();
    for (const auto& p : model.inputs) {
        trace.order.push_back(p.name);
        trace.widths[p.name] = p.width;
        trace.columns[p.name] = {};
    }
    for (const auto& s : model.state_vars) {
        trace.order.push_back(s.name);
        trace.widths[s.name] = s.width;
        trace.columns[s.name] = {};
    }
    for (const auto& [n, e] : model.outputs) {
        trace.order.push_back(n);
        trace.widths[n] = 1; // widened below after the first evaluation
        trace.columns[n] = {};
    }

    Env state;
    for (const auto& s : model.state_vars)
        state[s.name] = Value{s.init, s.width};

    for (std::size_t t = 0; t < input_rows.size(); ++t) {
        const auto& row = input_rows[t];
        if (row.size() != model.inputs.size())
            throw EvalError("cycle " + std::to_string(t) + ": expected " +
                            std::to_string(model.inputs.size()) + " input values");
        Env env = state;
        for (std::size_t i = 0; i < model.inputs.size(); ++i) {
            const auto& p = model.inputs[i];
            env[p.name] = Value{row[i] & width_mask(p.width), p.width};
        }
        for (const auto& p : model.inputs)
            trace.columns[p.name].push_back(env[p.name].value);
        for (const auto& s : model.state_vars)
            trace.columns[s.name].push_back(env[s.name].value);
        for (const auto& [n, e] : model.outputs) {
            Value v;
            try {
                v = eval_expr(*e, env);
            } catch (const EvalError& err) {
                throw EvalError("cycle " + std::to_string(t) + ", output " + n + ": " + err.what());
            }
            trace.columns[n].push_back(v.value);
            trace.widths[n] = std::max(trace.widths[n], v.width);
        }
        Env next_state = state;
        for (const auto& [n, e] : model.next_state) {
            Value v;
            try {
                v = eval_expr(*e, env);
            } catch (const EvalError& err) {
                throw EvalError("cycle " + std::to_string(t) + ", next_state " + n + ": " +
                                err.what());
            }
            uint32_t w = next_state[n].width;
            next_state[n] = Value{v.value & width_mask(w), w};
        }
        state = std::move(next_state);
    }
    return trace;
}

} // namespace svagen::model
