// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/decompose.hpp"
#include "svagen/diagnostic.hpp"
#include "svagen/gateway.hpp"
#include "svagen/prompt.hpp"
#include "svagen/rtl.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace svagen::repair {

struct ExtractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RepairPolicy {
    int max_iterations = 5;
    int loop_window = 2;
    bool apply_combinational_rewrite = false; // set from the interface mode
};

enum class SessionStatus { InProgress, Fixed, Exhausted, LoopDetected };

std::string session_status_name(SessionStatus status);

struct CandidateEntry {
    std::string text; // compiler-facing text (post-rewrite in combinational mode)
    std::vector<Diagnostic> diagnostics;
};

struct TranscriptEntry {
    std::string prompt; // flattened messages
    std::string response;
};

struct RepairSession {
    decompose::CommentUnit unit;
    std::string design_id;
    std::vector<CandidateEntry> candidates;
    int iteration = 0; // == candidates.size() - 1 once the initial candidate exists
    SessionStatus status = SessionStatus::InProgress;
    std::vector<TranscriptEntry> transcript;

    const std::string& final_text() const { return candidates.back().text; }
    nlohmann::ordered_json to_json() const;
};

/// Pulls the first `assert ...;` statement out of a model response (fences
/// stripped).  A second statement is tolerated with a warning; none at all is
/// an error.
struct Extracted {
    std::string text;
    std::optional<std::string> warning;
};
Extracted extract_assertion(const std::string& response);

/// Comment -> initial assertion, via the generate template.
Extracted generate_initial(const decompose::CommentUnit& unit, llm::Gateway& gateway,
                           const llm::PromptLibrary& prompts, const std::string& model_id,
                           RepairSession* session = nullptr);

/// Assertion + full RTL text -> assertion over the design's real signal names.
Extracted semantic_align(const std::string& assertion_text, const std::string& rtl_source,
                         llm::Gateway& gateway, const llm::PromptLibrary& prompts,
                         const std::string& model_id, RepairSession* session = nullptr);

/// parse + (combinational rewrite) + name resolution.  Returns the
/// compiler-facing candidate text (rewritten when applicable) and every
/// diagnostic found.
struct CompileOutcome {
    std::string text;
    std::vector<Diagnostic> diagnostics;
    bool clean() const { return diagnostics.empty(); }
};
CompileOutcome compile_candidate(const std::string& text, const rtl::ModuleInterface& iface,
                                 bool combinational);

/// The iterative loop: compile, send every diagnostic back annotated with its
/// quoted fragment, append the model's new candidate, stop on clean output,
/// on a repeated answer inside the loop window, or at the iteration cap.
RepairSession& run_repair(RepairSession& session, const RepairPolicy& policy,
                          const rtl::ModuleInterface& iface, llm::Gateway& gateway,
                          const llm::PromptLibrary& prompts, const std::string& model_id);

/// Whitespace-insensitive comparison key used by loop detection.
std::string normalize_whitespace(const std::string& text);

} // namespace svagen::repair
