// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/checker.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svagen::scoreboard {

struct TallyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Count vector for one design (or summed across designs):
///   generated = syntax_incorrect + syntax_correct
///   syntax_correct = fixed_by_repair + clean_initially
///   syntax_correct = functionally_correct + functionally_incorrect
struct Tally {
    uint64_t generated = 0;
    uint64_t syntax_incorrect = 0;
    uint64_t syntax_correct = 0;
    uint64_t fixed_by_repair = 0;
    uint64_t clean_initially = 0;
    uint64_t functionally_correct = 0;
    uint64_t functionally_incorrect = 0;
    uint64_t vacuous_pass = 0; // warning column, not part of the invariants

    /// First violated invariant, if any.
    std::optional<std::string> check_invariants() const;
    nlohmann::ordered_json to_json() const;
};

/// Per-assertion outcome record feeding the tally.
struct AssertionRecord {
    std::string design_id;
    bool initial_clean = false; // first compile had no diagnostics
    std::string repair_status;  // fixed | exhausted | loop_detected
    std::optional<check::VerdictKind> verdict;
    bool vacuous_pass = false;
};

/// Aggregates records into per-design tallies plus an "overall" sum.
/// A record with a verdict but no successful repair (or vice versa) is
/// inconsistent and raises TallyError.
std::map<std::string, Tally> aggregate(const std::vector<AssertionRecord>& records);

enum class ReportFormat { Json, Csv, Markdown };

/// Per-design rows with functionally_correct / functionally_incorrect /
/// syntax_error counts, ordered by design id; markdown and json add a totals
/// row and the vacuous-pass warning column.
std::string emit_report(const std::map<std::string, Tally>& tallies, ReportFormat format);

/// FPV driver script for an external engine, instantiated from
/// templates/fpv.tcl.tmpl.  Sequential designs must name their clock;
/// reset is optional.
std::string emit_tcl(const std::string& template_text, const std::string& design_id,
                     const std::string& rtl_path, const std::vector<std::string>& assertion_paths,
                     rtl::DesignMode mode, const std::string& clock, const std::string& reset);

} // namespace svagen::scoreboard
