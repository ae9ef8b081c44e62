// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagnostic.hpp"
#include "svagen/model.hpp"
#include "svagen/rtl.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svagen::check {

struct CheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Strategy { Exhaustive, Random };

/// How stimuli are produced for bounded falsification.  Exhaustive
/// enumeration is only permitted while the sequence-choice space stays small:
/// total input bits x horizon <= 24 for sequential designs, total input bits
/// <= 16 for combinational ones.
struct StimulusPlan {
    uint32_t horizon = 20;
    Strategy strategy = Strategy::Exhaustive;
    uint32_t random_budget = 256;
    uint64_t seed = 1;
    uint32_t max_sequences = 4096; // practical cap used by plan adaptation
};

struct CheckOutcome {
    bool holds = true;
    std::size_t violation_cycle = 0; // smallest violating start cycle
    bool vacuous = false;            // held, but no obligation ever completed
};

/// Bounded-semantics check of one assertion over one trace.  Attempts start
/// at every cycle; obligations that would extend past the final cycle are
/// vacuously satisfied, so only completed violations are reported.
CheckOutcome check_on_trace(const sva::AssertionDecl& decl, const model::Trace& trace);

enum class VerdictKind { SyntaxError, FunctionallyIncorrect, FunctionallyCorrect };

std::string verdict_kind_name(VerdictKind kind);

struct Verdict {
    VerdictKind kind = VerdictKind::FunctionallyCorrect;
    std::vector<Diagnostic> diagnostics;          // SyntaxError only
    std::optional<model::Trace> counterexample;   // FunctionallyIncorrect only
    std::optional<std::size_t> violation_cycle;
    bool vacuous_pass = false;                    // FunctionallyCorrect warning flag
};

/// Full scoreboard classification of one assertion against one design:
/// parse + name resolution failures are SyntaxError; a falsifying stimulus
/// yields FunctionallyIncorrect with the counterexample trace; surviving the
/// whole plan yields FunctionallyCorrect.  Throws PlanError when an
/// exhaustive plan is outside the permitted bound.
Verdict classify(const std::string& decl_text, const model::BehavioralModel& model,
                 const rtl::ModuleInterface& iface, const StimulusPlan& plan);

/// Plan adaptation policy used by the pipeline: shrinks the exhaustive depth
/// until the sequence space fits both the permission bound and
/// max_sequences, topping up with random stimuli at the full horizon when
/// budget remains.  The note documents what was done for the run manifest.
struct AdaptedPlan {
    StimulusPlan primary;
    std::optional<StimulusPlan> topup;
    std::string note;
};
AdaptedPlan adapt_plan(const StimulusPlan& plan, uint32_t input_bits, rtl::DesignMode mode);

/// classify() with adapt_plan() applied; used by the CLI.
Verdict classify_adaptive(const std::string& decl_text, const model::BehavioralModel& model,
                          const rtl::ModuleInterface& iface, const StimulusPlan& plan,
                          std::string* note_out = nullptr);

} // namespace svagen::check
