// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/answers.hpp"
#include "svagen/gateway.hpp"
#include "svagen/prompt.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace svagen::decompose {

struct DecomposeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class UnitKind { FsmTransition, FsmOutput, Conditional, VariableRange };

std::string unit_kind_name(UnitKind kind);

/// One atomic spec fact destined to become exactly one assertion.  The
/// payload keeps the exact question-schema field names.
struct CommentUnit {
    UnitKind kind;
    char source_question; // 'A', 'B', 'C'
    nlohmann::ordered_json payload;
    std::string rendered_comment;
};

struct DecompositionResult {
    std::string spec_id;
    std::vector<CommentUnit> units;
    nlohmann::ordered_json raw_answers; // {"question_a": ..., "question_b": ..., "question_c": ...}

    nlohmann::ordered_json to_json() const;
};

/// One deterministic English sentence per unit kind.
std::string render_comment(UnitKind kind, const nlohmann::ordered_json& payload);

/// Pure fan-out from validated answers to units, ordered A-transitions,
/// A-outputs, B, C.  |units| equals transitions + outputs + conditionals +
/// per-variable conditions.
std::vector<CommentUnit> fan_out(const nlohmann::ordered_json& answer_a,
                                 const nlohmann::ordered_json& answer_b,
                                 const nlohmann::ordered_json& answer_c);

/// Asks questions A, B and C about the spec text, validates each answer
/// (one re-ask with the validator's complaint appended, then hard failure)
/// and fans the answers out into comment units.
DecompositionResult decompose(const std::string& spec_id, const std::string& spec_text,
                              llm::Gateway& gateway, const llm::PromptLibrary& prompts,
                              const std::string& model_id);

} // namespace svagen::decompose
