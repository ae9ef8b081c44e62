// SPDX-License-Identifier: Apache-2.0
#include "svagen/scoreboard.hpp"

#include <sstream>

namespace svagen::scoreboard {

using nlohmann::ordered_json;

std::optional<std::string> Tally::check_invariants() const {
    if (generated != syntax_incorrect + syntax_correct)
        return "generated (" + std::to_string(generated) + ") != syntax_incorrect (" +
               std::to_string(syntax_incorrect) + ") + syntax_correct (" +
               std::to_string(syntax_correct) + ")";
    if (syntax_correct != fixed_by_repair + clean_initially)
        return "syntax_correct (" + std::to_string(syntax_correct) + ") != fixed_by_repair (" +
               std::to_string(fixed_by_repair) + ") + clean_initially (" +
               std::to_string(clean_initially) + ")";
    if (syntax_correct != functionally_correct + functionally_incorrect)
        return "syntax_correct (" + std::to_string(syntax_correct) +
               ") != functionally_correct (" + std::to_string(functionally_correct) +
               ") + functionally_incorrect (" + std::to_string(functionally_incorrect) + ")";
    return std::nullopt;
}

ordered_json Tally::to_json() const {
    ordered_json doc;
    doc["generated"] = generated;
    doc["syntax_incorrect"] = syntax_incorrect;
    doc["syntax_correct"] = syntax_correct;
    doc["fixed_by_repair"] = fixed_by_repair;
    doc["clean_initially"] = clean_initially;
    doc["functionally_correct"] = functionally_correct;
    doc["functionally_incorrect"] = functionally_incorrect;
    doc["vacuous_pass"] = vacuous_pass;
    // both readings of the syntax-failure rate: before the repair loop ran,
    // and after it finished
    if (generated > 0) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.1f",
                      100.0 * static_cast<double>(generated - clean_initially) /
                          static_cast<double>(generated));
        doc["initial_syntax_failure_pct"] = buf;
        std::snprintf(buf, sizeof(buf), "%.1f",
                      100.0 * static_cast<double>(syntax_incorrect) /
                          static_cast<double>(generated));
        doc["final_syntax_failure_pct"] = buf;
    }
    return doc;
}

std::map<std::string, Tally> aggregate(const std::vector<AssertionRecord>& records) {
    std::map<std::string, Tally> tallies;
    for (const auto& record : records) {
        const bool fixed = record.repair_status == "fixed";
        if (fixed && !record.verdict)
            throw TallyError("inconsistent record for design " + record.design_id +
                             ": repair succeeded but no verdict is present");
        if (!fixed && record.verdict)
            throw TallyError("inconsistent record for design " + record.design_id +
                             ": verdict present although the assertion never compiled cleanly");
        if (fixed && *record.verdict == check::VerdictKind::SyntaxError)
            throw TallyError("inconsistent record for design " + record.design_id +
                             ": syntax_error verdict after a successful repair");

        Tally& t = tallies[record.design_id];
        ++t.generated;
        if (!fixed) {
            ++t.syntax_incorrect;
            continue;
        }
        ++t.syntax_correct;
        if (record.initial_clean)
            ++t.clean_initially;
        else
            ++t.fixed_by_repair;
        if (*record.verdict == check::VerdictKind::FunctionallyCorrect) {
            ++t.functionally_correct;
            if (record.vacuous_pass)
                ++t.vacuous_pass;
        } else {
            ++t.functionally_incorrect;
        }
    }

    Tally overall;
    for (const auto& [id, t] : tallies) {
        overall.generated += t.generated;
        overall.syntax_incorrect += t.syntax_incorrect;
        overall.syntax_correct += t.syntax_correct;
        overall.fixed_by_repair += t.fixed_by_repair;
        overall.clean_initially += t.clean_initially;
        overall.functionally_correct += t.functionally_correct;
        overall.functionally_incorrect += t.functionally_incorrect;
        overall.vacuous_pass += t.vacuous_pass;
    }
    tallies["overall"] = overall;

    for (const auto& [id, t] : tallies)
        if (auto violation = t.check_invariants())
            throw TallyError("tally invariant violated for " + id + ": " + *violation);
    return tallies;
}

std::string emit_report(const std::map<std::string, Tally>& tallies, ReportFormat format) {
    // std::map already orders rows by design id; "overall" is emitted last
    std::vector<std::pair<std::string, const Tally*>> rows;
    const Tally* overall = nullptr;
    for (const auto& [id, t] : tallies) {
        if (id == "overall")
            overall = &t;
        else
            rows.emplace_back(id, &t);
    }

    std::ostringstream out;
    switch (format) {
    case ReportFormat::Csv: {
        out << "design,functionally_correct,functionally_incorrect,syntax_error\n";
        for (const auto& [id, t] : rows)
            out << id << ',' << t->functionally_correct << ',' << t->functionally_incorrect << ','
                << t->syntax_incorrect << '\n';
        break;
    }
    case ReportFormat::Markdown: {
        out << "| design | functionally correct | functionally incorrect | syntax error | "
               "vacuous passes |\n";
        out << "|---|---|---|---|---|\n";
        for (const auto& [id, t] : rows)
            out << "| " << id << " | " << t->functionally_correct << " | "
                << t->functionally_incorrect << " | " << t->syntax_incorrect << " | "
                << t->vacuous_pass << " |\n";
        if (overall)
            out << "| **total** | " << overall->functionally_correct << " | "
                << overall->functionally_incorrect << " | " << overall->syntax_incorrect << " | "
                << overall->vacuous_pass << " |\n";
        break;
    }
    case ReportFormat::Json: {
        ordered_json doc;
        doc["designs"] = ordered_json::array();
        for (const auto& [id, t] : rows) {
            ordered_json row;
            row["design"] = id;
            row["functionally_correct"] = t->functionally_correct;
            row["functionally_incorrect"] = t->functionally_incorrect;
            row["syntax_error"] = t->syntax_incorrect;
            row["vacuous_pass"] = t->vacuous_pass;
            doc["designs"].push_back(std::move(row));
        }
        if (overall)
            doc["overall"] = overall->to_json();
        out << doc.dump(2) << '\n';
        break;
    }
    }
    return out.str();
}

std::string emit_tcl(const std::string& template_text, const std::string& design_id,
                     const std::string& rtl_path, const std::vector<std::string>& assertion_paths,
                     rtl::DesignMode mode, const std::string& clock, const std::string& reset) {
    const bool sequential = mode == rtl::DesignMode::Sequential;
    if (sequential && clock.empty())
        throw TallyError("design " + design_id + " is sequential but no clock signal was given");

    std::string files;
    for (const auto& p : assertion_paths) {
        if (!files.empty())
            files += ' ';
        files += p;
    }
    std::map<std::string, std::string> bindings = {
        {"design_id", design_id}, {"rtl_path", rtl_path},   {"assertion_files", files},
        {"clock", clock},         {"reset", reset},
    };

    std::ostringstream out;
    std::istringstream lines(template_text);
    std::string line;
    while (std::getline(lines, line)) {
        // conditional lines: `?seq ` only for clocked designs, `?rst ` only
        // when a reset is known, `?comb ` only for clockless designs
        if (line.rfind("?seq ", 0) == 0) {
            if (!sequential)
                continue;
            line = line.substr(5);
        } else if (line.rfind("?rst ", 0) == 0) {
            if (!sequential || reset.empty())
                continue;
            line = line.substr(5);
        } else if (line.rfind("?comb ", 0) == 0) {
            if (sequential)
                continue;
            line = line.substr(6);
        }
        for (const auto& [name, value] : bindings) {
            std::string placeholder = "<<" + name + ">>";
            std::size_t at;
            while ((at = line.find(placeholder)) != std::string::npos)
                line.replace(at, placeholder.size(), value);
        }
        out << line << '\n';
    }
    return out.str();
}

} // namespace svagen::scoreboard
