// SPDX-License-Identifier: Apache-2.0
#include "svagen/repair.hpp"

#include "svagen/parser.hpp"
#include "svagen/printer.hpp"
#include "svagen/rewrite.hpp"

#include <cctype>
#include <sstream>

namespace svagen::repair {

using nlohmann::ordered_json;

std::string session_status_name(SessionStatus status) {
    switch (status) {
    case SessionStatus::InProgress: return "in_progress";
    case SessionStatus::Fixed: return "fixed";
    case SessionStatus::Exhausted: return "exhausted";
    case SessionStatus::LoopDetected: return "loop_detected";
    }
    return "?";
}

std::string normalize_whitespace(const std::string& text) {
    std::string out;
    bool in_space = true;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space)
                out += ' ';
            in_space = true;
        } else {
            out += c;
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ')
        out.pop_back();
    return out;
}

Extracted extract_assertion(const std::string& response) {
    std::string text = llm::strip_code_fences(response);

    auto find_assert = [&](std::size_t from) -> std::size_t {
        std::size_t at = from;
        while ((at = text.find("assert", at)) != std::string::npos) {
            bool left_ok = at == 0 || !(std::isalnum(static_cast<unsigned char>(text[at - 1])) ||
                                        text[at - 1] == '_');
            std::size_t end = at + 6;
            bool right_ok = end >= text.size() ||
                            !(std::isalnum(static_cast<unsigned char>(text[end])) ||
                              text[end] == '_');
            if (left_ok && right_ok)
                return at;
            ++at;
        }
        return std::string::npos;
    };

    std::size_t start = find_assert(0);
    if (start == std::string::npos)
        throw ExtractError("the response contains no assert statement");

    // include a label prefix when one directly precedes the keyword
    std::size_t stmt_start = start;
    {
        std::size_t i = start;
        while (i > 0 && (text[i - 1] == ' ' || text[i - 1] == '\t'))
            --i;
        if (i > 0 && text[i - 1] == ':') {
            std::size_t label_end = i - 1;
            std::size_t j = label_end;
            while (j > 0 && (std::isalnum(static_cast<unsigned char>(text[j - 1])) ||
                             text[j - 1] == '_'))
                --j;
            if (j < label_end)
                stmt_start = j;
        }
    }

    // take everything through the first top-level semicolon
    int depth = 0;
    std::size_t end = text.size();
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (c == ';' && depth <= 0) {
            end = i + 1;
            break;
        } else if (c == '\n' && depth <= 0 && i > start) {
            // statement ended without a semicolon; stop at the line break
            end = i;
            break;
        }
    }

    Extracted result;
    result.text = text.substr(stmt_start, end - stmt_start);
    if (find_assert(end) != std::string::npos)
        result.warning = "response contained more than one assert statement; the first was kept";
    return result;
}

namespace {

std::string flatten_messages(const std::vector<llm::ChatMessage>& messages) {
    std::ostringstream out;
    for (const auto& m : messages)
        out << m.role << ": " << m.content << "\n";
    return out.str();
}

Extracted call_and_extract(llm::Gateway& gateway, const llm::PromptLibrary& prompts,
                           const std::string& template_id,
                           const std::map<std::string, std::string>& bindings,
                           const std::string& model_id, RepairSession* session) {
    llm::CompletionRequest request;
    request.model_id = model_id;
    request.messages = prompts.render(template_id, bindings);
    std::string response = gateway.complete(request);
    if (session)
        session->transcript.push_back({flatten_messages(request.messages), response});
    return extract_assertion(response);
}

std::string signal_table(const rtl::ModuleInterface& iface) {
    std::ostringstream out;
    for (const auto& s : iface.signals) {
        const char* dir = s.direction == rtl::Direction::Input    ? "input"
                          : s.direction == rtl::Direction::Output ? "output"
                          : s.direction == rtl::Direction::Inout  ? "inout"
                                                                  : "internal";
        out << "  " << dir << ' ';
        if (s.width > 1)
            out << '[' << s.msb << ':' << s.lsb << "] ";
        out << s.name << '\n';
    }
    return out.str();
}

// Conversion instructions handed to the model when the target design is
// combinational.
const char* kCombinationalRules =
    "The target design is combinational. Delete all clock-related functions and sections in the "
    "assertion and convert the implications to the combinational mode: if the assertion contains "
    "a |-> b or a |=> b, convert them to (!a | b). Use an immediate assertion of the form "
    "assert(expression);";

} // namespace

Extracted generate_initial(const decompose::CommentUnit& unit, llm::Gateway& gateway,
                           const llm::PromptLibrary& prompts, const std::string& model_id,
                           RepairSession* session) {
    return call_and_extract(gateway, prompts, "generate", {{"comment", unit.rendered_comment}},
                            model_id, session);
}

Extracted semantic_align(const std::string& assertion_text, const std::string& rtl_source,
                         llm::Gateway& gateway, const llm::PromptLibrary& prompts,
                         const std::string& model_id, RepairSession* session) {
    return call_and_extract(gateway, prompts, "align",
                            {{"assertion", assertion_text}, {"rtl_source", rtl_source}}, model_id,
                            session);
}

CompileOutcome compile_candidate(const std::string& text, const rtl::ModuleInterface& iface,
                                 bool combinational) {
    CompileOutcome outcome;
    outcome.text = text;
    auto parsed = sva::parse_assertion(text);
    if (!parsed.ok()) {
        outcome.diagnostics = std::move(parsed.diagnostics);
        return outcome;
    }
    sva::AssertionDecl decl = *parsed.decl;
    if (combinational) {
        auto rewritten = rewrite::to_combinational(decl);
        if (rewritten.ok()) {
            decl = *rewritten.decl;
            outcome.text = decl.raw_text;
        } else {
            outcome.diagnostics.push_back(*rewritten.diagnostic);
        }
    }
    auto semantic = rtl::resolve_names(decl, iface);
    outcome.diagnostics.insert(outcome.diagnostics.end(), semantic.begin(), semantic.end());
    return outcome;
}

RepairSession& run_repair(RepairSession& session, const RepairPolicy& policy,
                          const rtl::ModuleInterface& iface, llm::Gateway& gateway,
                          const llm::PromptLibrary& prompts, const std::string& model_id) {
    if (session.candidates.empty())
        throw ExtractError("run_repair needs an initial candidate");

    const bool combinational = policy.apply_combinational_rewrite;
    for (;;) {
        CandidateEntry& current = session.candidates.back();
        CompileOutcome compiled = compile_candidate(current.text, iface, combinational);
        current.text = compiled.text; // rewritten form when applicable
        current.diagnostics = compiled.diagnostics;

        if (compiled.clean()) {
            session.status = SessionStatus::Fixed;
            return session;
        }

        // a repeated answer inside the window means the model is stuck
        if (session.candidates.size() > 1) {
            std::string needle = normalize_whitespace(current.text);
            std::size_t previous = session.candidates.size() - 1;
            std::size_t window_begin =
                previous > static_cast<std::size_t>(policy.loop_window)
                    ? previous - static_cast<std::size_t>(policy.loop_window)
                    : 0;
            for (std::size_t i = window_begin; i < previous; ++i) {
                if (normalize_whitespace(session.candidates[i].text) == needle) {
                    session.status = SessionStatus::LoopDetected;
                    return session;
                }
            }
        }

        if (session.iteration >= policy.max_iterations) {
            session.status = SessionStatus::Exhausted;
            return session;
        }

        std::map<std::string, std::string> bindings = {
            {"assertion", current.text},
            {"diagnostics", render_diagnostics(current.diagnostics, current.text)},
            {"module_name", iface.module_name},
            {"signal_table", signal_table(iface)},
            {"conversion_rules", combinational ? kCombinationalRules : ""},
        };
        llm::CompletionRequest request;
        request.model_id = model_id;
        request.messages = prompts.render("repair", bindings);
        std::string response = gateway.complete(request);
        session.transcript.push_back({flatten_messages(request.messages), response});

        Extracted next = extract_assertion(response);
        session.candidates.push_back({next.text, {}});
        session.iteration = static_cast<int>(session.candidates.size()) - 1;
    }
}

ordered_json RepairSession::to_json() const {
    ordered_json doc;
    doc["design_id"] = design_id;
    doc["unit_kind"] = decompose::unit_kind_name(unit.kind);
    doc["comment"] = unit.rendered_comment;
    doc["payload"] = unit.payload;
    doc["status"] = session_status_name(status);
    doc["iteration"] = iteration;
    doc["candidates"] = ordered_json::array();
    for (const auto& c : candidates) {
        ordered_json entry;
        entry["text"] = c.text;
        entry["diagnostics"] = ordered_json::array();
        for (const auto& d : c.diagnostics) {
            ordered_json dd;
            dd["code"] = d.code;
            dd["category"] = category_name(d.category);
            dd["message"] = d.message;
            dd["fragment"] = d.quoted_fragment;
            entry["diagnostics"].push_back(std::move(dd));
        }
        doc["candidates"].push_back(std::move(entry));
    }
    doc["transcript"] = ordered_json::array();
    for (const auto& t : transcript) {
        ordered_json entry;
        entry["prompt"] = t.prompt;
        entry["response"] = t.response;
        doc["transcript"].push_back(std::move(entry));
    }
    return doc;
}

} // namespace svagen::repair
