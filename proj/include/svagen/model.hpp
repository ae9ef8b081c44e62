// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"
#include "svagen/rtl.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace svagen::model {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PortDef {
    std::string name;
    uint32_t width = 1;
};

struct StateVarDef {
    std::string name;
    uint32_t width = 1;
    uint64_t init = 0;
};

/// Executable golden behavior: next-state and output expressions over the
/// declared names, written in the assertion boolean grammar.  Stands in for
/// verified golden RTL during desk-scale checking.
struct BehavioralModel {
    std::string name;
    rtl::DesignMode mode = rtl::DesignMode::Combinational;
    std::vector<PortDef> inputs;
    std::vector<StateVarDef> state_vars;
    std::vector<std::pair<std::string, sva::BoolExprPtr>> next_state; // state_vars order
    std::vector<std::pair<std::string, sva::BoolExprPtr>> outputs;    // name order

    uint32_t total_input_bits() const;
    std::optional<uint32_t> width_of(const std::string& name) const;
};

/// Loads and validates a model from its JSON file form.  Throws ModelError
/// with a path-qualified message on any structural problem.
BehavioralModel load_model_file(const std::string& path);
BehavioralModel load_model_json(const std::string& json_text, const std::string& origin);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct Value {
    uint64_t value = 0;
    uint32_t width = 1;
};
using Env = std::map<std::string, Value>;

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Single-environment evaluator: two's-complement wraparound at the widest
/// operand width, comparisons and logical operators yield 0/1.  Sampled-value
/// functions ($past and friends) are cycle-relative and rejected here; the
/// trace checker handles them.
Value eval_expr(const sva::BoolExpr& expr, const Env& env);

struct Trace {
    std::size_t length = 0;
    std::vector<std::string> order; // column order: inputs, states, outputs
    std::map<std::string, std::vector<uint64_t>> columns;
    std::map<std::string, uint32_t> widths;

    std::string to_csv() const;
};

/// Runs the model for one value-row per cycle (values follow model.inputs
/// order).  Cycle 0 state is the declared init; outputs are evaluated on the
/// same-cycle environment.
Trace simulate(const BehavioralModel& model,
               const std::vector<std::vector<uint64_t>>& input_rows);

} // namespace svagen::model
