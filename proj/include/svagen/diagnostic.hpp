// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/span.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svagen {

enum class Severity { Error, Warning };
enum class DiagCategory { Lex, Parse, Semantic };

/// A compiler finding that quotes the offending source fragment inline.
/// Messages never locate an error by word or character count; the fragment
/// itself, wrapped in «guillemets», is the locator a language model can use.
struct Diagnostic {
    Severity severity = Severity::Error;
    DiagCategory category = DiagCategory::Parse;
    std::string code;            // stable short id, e.g. "E001"
    std::string message;         // embeds quoted_fragment between « »
    Span span;
    std::string quoted_fragment; // exact source text at span
    std::optional<std::string> hint;
};

/// Builds a diagnostic whose message is `before«fragment»after`, where the
/// fragment is the exact source substring at [start, end).
Diagnostic make_diagnostic(Severity sev, DiagCategory cat, std::string code,
                           std::string_view source, std::size_t start, std::size_t end,
                           std::string_view message_before, std::string_view message_after,
                           std::optional<std::string> hint = std::nullopt);

/// Renders one diagnostic against its source, quoting the offending line.
std::string render_diagnostic(const Diagnostic& diag, std::string_view source);

/// Renders several diagnostics in input order, separated by blank lines.
std::string render_diagnostics(const std::vector<Diagnostic>& diags, std::string_view source);

std::string severity_name(Severity sev);
std::string category_name(DiagCategory cat);

} // namespace svagen
