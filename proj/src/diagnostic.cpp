// SPDX-License-Identifier: Apache-2.0
#include "svagen/diagnostic.hpp"

#include <sstream>

namespace svagen {

Diagnostic make_diagnostic(Severity sev, DiagCategory cat, std::string code,
                           std::string_view source, std::size_t start, std::size_t end,
                           std::string_view message_before, std::string_view message_after,
                           std::optional<std::string> hint) {
    Diagnostic d;
    d.severity = sev;
    d.category = cat;
    d.code = std::move(code);
    d.span = make_span(source, start, end);
    d.quoted_fragment = std::string(source.substr(d.span.start, d.span.end - d.span.start));
    std::ostringstream msg;
    msg << message_before << "«" << d.quoted_fragment << "»" << message_after;
    d.message = msg.str();
    d.hint = std::move(hint);
    return d;
}

std::string severity_name(Severity sev) {
    return sev == Severity::Error ? "error" : "warning";
}

std::string category_name(DiagCategory cat) {
    switch (cat) {
    case DiagCategory::Lex: return "lex";
    case DiagCategory::Parse: return "parse";
    case DiagCategory::Semantic: return "semantic";
    }
    return "parse";
}

std::string render_diagnostic(const Diagnostic& diag, std::string_view source) {
    // The rendered text identifies the error by quoting it, never by counting
    // words or characters: models reliably match quoted fragments but cannot
    // index into text by position.
    const char* family = diag.category == DiagCategory::Semantic ? "semantic" : "syntax";
    std::ostringstream out;
    out << family << ' ' << severity_name(diag.severity) << " [" << diag.code << "]"
        << " near «" << diag.quoted_fragment << "» — " << diag.message
        << " in: " << line_at(source, diag.span.start);
    if (diag.hint)
        out << "\n  hint: " << *diag.hint;
    return out.str();
}

std::string render_diagnostics(const std::vector<Diagnostic>& diags, std::string_view source) {
    std::ostringstream out;
    for (std::size_t i = 0; i < diags.size(); ++i) {
        if (i > 0)
            out << "\n\n";
        out << render_diagnostic(diags[i], source);
    }
    return out.str();
}

} // namespace svagen
