// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <optional>
#include <string>

namespace svagen::llm {

/// Validated, normalized form of a question answer, or the first validation
/// failure (path-qualified, suitable for a re-ask prompt).
struct ValidationResult {
    std::optional<nlohmann::ordered_json> value;
    std::string error;
    bool ok() const { return value.has_value(); }
};

/// schema_id is one of question_a, question_b, question_c.
///
/// The raw text is stripped of a wrapping code fence and any surrounding
/// prose before parsing.  Field names must match the question's JSON sketch
/// exactly; unknown fields are rejected with their path.  Optional fields
/// ("leave it empty") may be missing or empty strings; normalization removes
/// them.  A single top-level object is accepted and normalized to a
/// one-element list.
ValidationResult validate_json_response(const std::string& schema_id, const std::string& text);

} // namespace svagen::llm
