// SPDX-License-Identifier: Apache-2.0
#include "svagen/decompose.hpp"

namespace svagen::decompose {

using nlohmann::ordered_json;

std::string unit_kind_name(UnitKind kind) {
    switch (kind) {
    case UnitKind::FsmTransition: return "fsm_transition";
    case UnitKind::FsmOutput: return "fsm_output";
    case UnitKind::Conditional: return "conditional";
    case UnitKind::VariableRange: return "variable_range";
    }
    return "?";
}

std::string render_comment(UnitKind kind, const ordered_json& payload) {
    auto get = [&](const char* key) -> std::string {
        return payload.contains(key) ? payload.at(key).get<std::string>() : std::string();
    };
    switch (kind) {
    case UnitKind::FsmTransition: {
        std::string text = "When in state " + get("current_state") + ", if " + get("conditions") +
                           ", the FSM moves to " + get("next_state_condition_true");
        if (payload.contains("next_state_condition_false"))
            text += "; otherwise it moves to " + get("next_state_condition_false");
        return text + ".";
    }
    case UnitKind::FsmOutput: {
        std::string text = "When in state " + get("current_state") + ", ";
        if (payload.contains("conditions"))
            text += "if " + get("conditions") + ", ";
        text += "the output " + get("output_name") + " is " + get("output_value_condition_true");
        if (payload.contains("output_value_condition_false"))
            text += "; otherwise it is " + get("output_value_condition_false");
        return text + ".";
    }
    case UnitKind::Conditional:
        return "If " + get("antecedent") + ", then " + get("consequent") + ".";
    case UnitKind::VariableRange: {
        if (payload.contains("condition"))
            return "When " + get("condition") + ", the variable " + get("variable_name") +
                   " stays in the range " + get("range_or_value") + ".";
        return "The variable " + get("variable_name") + " always stays in the range " +
               get("range_or_value") + ".";
    }
    }
    return {};
}

std::vector<CommentUnit> fan_out(const ordered_json& answer_a, const ordered_json& answer_b,
                                 const ordered_json& answer_c) {
    std::vector<CommentUnit> units;
    // A: every transition of every FSM first, then every FSM output
    for (const auto& fsm : answer_a) {
        for (const auto& tr : fsm.at("transitions")) {
            CommentUnit u{UnitKind::FsmTransition, 'A', tr, ""};
            u.rendered_comment = render_comment(u.kind, u.payload);
            units.push_back(std::move(u));
        }
    }
    for (const auto& fsm : answer_a) {
        for (const auto& out : fsm.at("outputs")) {
            CommentUnit u{UnitKind::FsmOutput, 'A', out, ""};
            u.rendered_comment = render_comment(u.kind, u.payload);
            units.push_back(std::move(u));
        }
    }
    for (const auto& cond : answer_b) {
        CommentUnit u{UnitKind::Conditional, 'B', cond, ""};
        u.rendered_comment = render_comment(u.kind, u.payload);
        units.push_back(std::move(u));
    }
    for (const auto& var : answer_c) {
        for (const auto& entry : var.at("condition_list")) {
            ordered_json payload;
            payload["variable_name"] = var.at("variable_name");
            if (entry.contains("condition"))
                payload["condition"] = entry.at("condition");
            payload["range_or_value"] = entry.at("range_or_value");
            CommentUnit u{UnitKind::VariableRange, 'C', std::move(payload), ""};
            u.rendered_comment = render_comment(u.kind, u.payload);
            units.push_back(std::move(u));
        }
    }
    return units;
}

ordered_json DecompositionResult::to_json() const {
    ordered_json doc;
    doc["spec_id"] = spec_id;
    doc["units"] = ordered_json::array();
    for (const auto& u : units) {
        ordered_json j;
        j["kind"] = unit_kind_name(u.kind);
        j["source_question"] = std::string(1, u.source_question);
        j["payload"] = u.payload;
        j["comment"] = u.rendered_comment;
        doc["units"].push_back(std::move(j));
    }
    doc["raw_answers"] = raw_answers;
    return doc;
}

namespace {

ordered_json ask_validated(const std::string& question, const std::string& schema_id,
                           const std::string& spec_text, llm::Gateway& gateway,
                           const llm::PromptLibrary& prompts, const std::string& model_id,
                           ordered_json& raw_out) {
    llm::CompletionRequest request;
    request.model_id = model_id;
    request.messages = prompts.render(question, {{"spec_text", spec_text}});

    std::string answer = gateway.complete(request);
    llm::ValidationResult validated = llm::validate_json_response(schema_id, answer);
    if (!validated.ok()) {
        // one bounded re-ask carrying the validator's complaint
        llm::CompletionRequest retry = request;
        retry.messages.push_back({"assistant", answer});
        retry.messages.push_back(
            {"user", "The previous answer failed validation: " + validated.error +
                         ". Return only the corrected JSON document with exactly the field names "
                         "shown in the example."});
        answer = gateway.complete(retry);
        validated = llm::validate_json_response(schema_id, answer);
        if (!validated.ok())
            throw DecomposeError("question " + question + " failed validation after one re-ask: " +
                                 validated.error);
    }
    raw_out = *validated.value;
    return *validated.value;
}

} // namespace

DecompositionResult decompose(const std::string& spec_id, const std::string& spec_text,
                              llm::Gateway& gateway, const llm::PromptLibrary& prompts,
                              const std::string& model_id) {
    DecompositionResult result;
    result.spec_id = spec_id;
    result.raw_answers = ordered_json::object();

    ordered_json a = ask_validated("question_a", "question_a", spec_text, gateway, prompts,
                                   model_id, result.raw_answers["question_a"]);
    ordered_json b = ask_validated("question_b", "question_b", spec_text, gateway, prompts,
                                   model_id, result.raw_answers["question_b"]);
    ordered_json c = ask_validated("question_c", "question_c", spec_text, gateway, prompts,
                                   model_id, result.raw_answers["question_c"]);
    result.units = fan_out(a, b, c);
    return result;
}

} // namespace svagen::decompose
