// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagnostic.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svagen::rtl {

enum class Direction { Input, Output, Inout, Internal };
enum class DesignMode { Sequential, Combinational };

struct SignalDecl {
    std::string name;
    Direction direction = Direction::Internal;
    uint32_t width = 1; // == |msb - lsb| + 1
    int msb = 0;
    int lsb = 0;
};

struct ModuleInterface {
    std::string module_name;
    std::vector<SignalDecl> signals; // declaration order
    std::optional<std::string> clock;
    std::optional<std::string> reset;
    DesignMode mode = DesignMode::Combinational;

    const SignalDecl* find(std::string_view name) const;
};

/// Case-insensitive signal-name lists used to spot clock and reset ports.
/// Overridable from configuration.
struct NamingConvention {
    std::vector<std::string> clock_names = {"clk", "clock", "clk_i", "clock_i"};
    std::vector<std::string> reset_names = {"rst", "reset", "rst_n", "reset_n", "areset", "aresetn"};
};

struct ExtractResult {
    std::optional<ModuleInterface> interface;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return interface.has_value(); }
};

/// Scans a single ANSI-style Verilog module for its port table and top-level
/// reg/wire/logic declarations.  Statement bodies are skipped; behavior comes
/// from the design's behavioral model, not from here.
ExtractResult extract_interface(std::string_view verilog_source,
                                const NamingConvention& naming = {});

/// One semantic diagnostic per unknown identifier, out-of-range bit-select,
/// or clocking event that names a non-clock signal.  Empty means clean.
std::vector<Diagnostic> resolve_names(const sva::AssertionDecl& decl,
                                      const ModuleInterface& iface);

DesignMode detect_mode(const ModuleInterface& iface);

} // namespace svagen::rtl
