// SPDX-License-Identifier: Apache-2.0
#include "svagen/rtl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace svagen::rtl {

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool name_in_list(std::string_view name, const std::vector<std::string>& list) {
    std::string lower = to_lower(name);
    return std::any_of(list.begin(), list.end(),
                       [&](const std::string& entry) { return to_lower(entry) == lower; });
}

// Replaces comments with spaces so spans keep pointing at the original text.
std::string blank_comments(std::string_view src) {
    std::string out(src);
    std::size_t i = 0;
    while (i + 1 < out.size()) {
        if (out[i] == '/' && out[i + 1] == '/') {
            while (i < out.size() && out[i] != '\n')
                out[i++] = ' ';
        } else if (out[i] == '/' && out[i + 1] == '*') {
            while (i + 1 < out.size() && !(out[i] == '*' && out[i + 1] == '/')) {
                if (out[i] != '\n')
                    out[i] = ' ';
                ++i;
            }
            if (i + 1 < out.size()) {
                out[i] = ' ';
                out[i + 1] = ' ';
                i += 2;
            }
        } else {
            ++i;
        }
    }
    return out;
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

struct Scanner {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            while (pos < text.size() && is_ident_char(text[pos]))
                ++pos;
        }
        return std::string(text.substr(start, pos - start));
    }
    std::optional<int> integer() {
        skip_ws();
        std::size_t start = pos;
        bool neg = false;
        if (pos < text.size() && text[pos] == '-') {
            neg = true;
            ++pos;
        }
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == digits) {
            pos = start;
            return std::nullopt;
        }
        int v = std::stoi(std::string(text.substr(digits, pos - digits)));
        return neg ? -v : v;
    }
};

struct Range {
    int msb = 0;
    int lsb = 0;
};

std::optional<Range> parse_range(Scanner& sc) {
    if (!sc.consume('['))
        return std::nullopt;
    Range r;
    auto msb = sc.integer();
    sc.consume(':');
    auto lsb = sc.integer();
    sc.consume(']');
    r.msb = msb.value_or(0);
    r.lsb = lsb.value_or(0);
    return r;
}

uint32_t range_width(const Range& r) {
    return static_cast<uint32_t>(r.msb >= r.lsb ? r.msb - r.lsb + 1 : r.lsb - r.msb + 1);
}

} // namespace

const SignalDecl* ModuleInterface::find(std::string_view name) const {
    for (const auto& s : signals)
        if (s.name == name)
            return &s;
    return nullptr;
}

DesignMode detect_mode(const ModuleInterface& iface) {
    return iface.clock ? DesignMode::Sequential : DesignMode::Combinational;
}

ExtractResult extract_interface(std::string_view verilog_source, const NamingConvention& naming) {
    ExtractResult result;
    std::string clean = blank_comments(verilog_source);

    auto fail = [&](const char* code, std::size_t start, std::size_t end,
                    std::string_view before, std::string_view after) {
        result.diagnostics.push_back(make_diagnostic(Severity::Error, DiagCategory::Parse, code,
                                                     verilog_source, start, end, before, after));
    };

    // locate `module ... endmodule`, rejecting files with more than one
    std::vector<std::size_t> module_offsets;
    for (std::size_t i = 0; i + 6 <= clean.size(); ++i) {
        if (clean.compare(i, 6, "module") == 0 &&
            (i == 0 || !is_ident_char(clean[i - 1])) &&
            (i + 6 == clean.size() || !is_ident_char(clean[i + 6]))) {
            // "endmodule" also matches at offset 3; skip those
            if (i >= 3 && clean.compare(i - 3, 9, "endmodule") == 0)
                continue;
            module_offsets.push_back(i);
        }
    }
    if (module_offsets.empty()) {
        fail("E201", 0, std::min<std::size_t>(verilog_source.size(), 16),
             "no module declaration found in ", "");
        return result;
    }
    if (module_offsets.size() > 1) {
        fail("E202", module_offsets[1], module_offsets[1] + 6,
             "expected a single module per file; found another ", "");
        return result;
    }

    Scanner sc{clean, module_offsets[0] + 6};
    ModuleInterface iface;
    iface.module_name = sc.ident();
    if (iface.module_name.empty()) {
        fail("E203", module_offsets[0], module_offsets[0] + 6, "module keyword ",
             " is not followed by a module name");
        return result;
    }
    if (sc.peek() == '#') {
        fail("E203", sc.pos, sc.pos + 1, "parameterized port lists are not supported; found ", "");
        return result;
    }
    if (!sc.consume('(')) {
        fail("E203", sc.pos, std::min(sc.pos + 1, clean.size()),
             "expected a port list after the module name, found ", "");
        return result;
    }

    // ANSI port declarations: direction [net type] [range] name {, ...}
    Direction current_dir = Direction::Internal;
    bool have_dir = false;
    Range current_range{0, 0};
    bool done = sc.consume(')');
    while (!done) {
        std::size_t entry_start = sc.pos;
        std::string word = sc.ident();
        if (word.empty()) {
            fail("E203", entry_start, std::min(entry_start + 1, clean.size()),
                 "unparseable port list entry near ", "");
            return result;
        }
        if (word == "input" || word == "output" || word == "inout") {
            current_dir = word == "input" ? Direction::Input
                        : word == "output" ? Direction::Output
                                           : Direction::Inout;
            have_dir = true;
            // optional net/variable type
            std::size_t save = sc.pos;
            std::string type = sc.ident();
            if (type != "wire" && type != "reg" && type != "logic" && type != "bit")
                sc.pos = save;
            if (auto r = parse_range(sc))
                current_range = *r;
            else
                current_range = Range{0, 0};
            word = sc.ident();
            if (word.empty()) {
                fail("E203", entry_start, sc.pos, "missing port name near ", "");
                return result;
            }
        } else if (!have_dir) {
            // 1995-style list of bare names: not supported
            fail("E203", entry_start, sc.pos,
                 "non-ANSI port declaration ",
                 " — declare ports as `input/output [range] name` inside the port list");
            return result;
        }
        SignalDecl sig;
        sig.name = word;
        sig.direction = current_dir;
        sig.msb = current_range.msb;
        sig.lsb = current_range.lsb;
        sig.width = range_width(current_range);
        iface.signals.push_back(std::move(sig));

        if (sc.consume(','))
            continue;
        if (sc.consume(')')) {
            done = true;
        } else {
            fail("E203", sc.pos, std::min(sc.pos + 1, clean.size()),
                 "expected ',' or ')' in the port list, found ", "");
            return result;
        }
    }
    sc.consume(';');

    // body: top-level reg/wire/logic declarations, everything else skipped
    std::size_t end_off = clean.find("endmodule", sc.pos);
    if (end_off == std::string::npos)
        end_off = clean.size();
    while (!sc.at_end() && sc.pos < end_off) {
        std::size_t stmt_start = sc.pos;
        std::string word = sc.ident();
        if (word.empty()) {
            ++sc.pos;
            continue;
        }
        if (word == "endmodule")
            break;
        if (word == "reg" || word == "wire" || word == "logic" || word == "bit") {
            Range r = parse_range(sc).value_or(Range{0, 0});
            for (;;) {
                std::string name = sc.ident();
                if (name.empty())
                    break;
                if (!iface.find(name)) {
                    SignalDecl sig;
                    sig.name = name;
                    sig.direction = Direction::Internal;
                    sig.msb = r.msb;
                    sig.lsb = r.lsb;
                    sig.width = range_width(r);
                    iface.signals.push_back(std::move(sig));
                }
                // skip initializers and packed dimensions on the name
                while (sc.pos < end_off && sc.peek() != ',' && sc.peek() != ';')
                    ++sc.pos;
                if (!sc.consume(','))
                    break;
            }
            // fall through to statement-end skip
        }
        // skip to the end of the statement
        while (sc.pos < end_off && clean[sc.pos] != ';')
            ++sc.pos;
        sc.consume(';');
        if (sc.pos == stmt_start) // safety against stalls
            ++sc.pos;
    }

    for (const auto& sig : iface.signals) {
        if (!iface.clock && sig.width == 1 && name_in_list(sig.name, naming.clock_names))
            iface.clock = sig.name;
        if (!iface.reset && name_in_list(sig.name, naming.reset_names))
            iface.reset = sig.name;
    }
    iface.mode = detect_mode(iface);
    result.interface = std::move(iface);
    return result;
}

std::vector<Diagnostic> resolve_names(const sva::AssertionDecl& decl, const ModuleInterface& iface) {
    std::vector<Diagnostic> diags;
    const std::string& src = decl.raw_text;

    sva::for_each_identifier(*decl.property, [&](const sva::Identifier& id, const Span& span) {
        const SignalDecl* sig = iface.find(id.name);
        if (!sig) {
            diags.push_back(make_diagnostic(
                Severity::Error, DiagCategory::Semantic, "E101", src, span.start, span.end,
                "unknown identifier ",
                " — it is not a declared signal of module " + iface.module_name));
            return;
        }
        int lo = std::min(sig->msb, sig->lsb);
        int hi = std::max(sig->msb, sig->lsb);
        if (const auto* bit = std::get_if<sva::BitSelect>(&id.select)) {
            int idx = static_cast<int>(bit->index);
            if (idx < lo || idx > hi) {
                std::ostringstream after;
                after << " — bit-select is outside the declared range [" << sig->msb << ":"
                      << sig->lsb << "]";
                diags.push_back(make_diagnostic(Severity::Error, DiagCategory::Semantic, "E102",
                                                src, span.start, span.end, "bit-select on ",
                                                after.str()));
            }
        } else if (const auto* part = std::get_if<sva::PartSelect>(&id.select)) {
            int pm = static_cast<int>(part->msb);
            int pl = static_cast<int>(part->lsb);
            if (pl < lo || pm > hi) {
                std::ostringstream after;
                after << " — part-select is outside the declared range [" << sig->msb << ":"
                      << sig->lsb << "]";
                diags.push_back(make_diagnostic(Severity::Error, DiagCategory::Semantic, "E102",
                                                src, span.start, span.end, "part-select on ",
                                                after.str()));
            }
        }
    });

    if (decl.clocking) {
        const std::string& clk = decl.clocking->signal;
        std::size_t at = src.find(clk);
        std::size_t start = at == std::string::npos ? 0 : at;
        std::size_t end = at == std::string::npos ? 0 : at + clk.size();
        if (!iface.find(clk)) {
            diags.push_back(make_diagnostic(Severity::Error, DiagCategory::Semantic, "E101", src,
                                            start, end, "unknown identifier ",
                                            " in the clocking event"));
        } else if (!iface.clock || *iface.clock != clk) {
            diags.push_back(make_diagnostic(Severity::Error, DiagCategory::Semantic, "E103", src,
                                            start, end, "clocking event samples ",
                                            " which is not the clock of module " +
                                                iface.module_name));
        }
    }
    return diags;
}

} // namespace svagen::rtl
