// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "svagen/span.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace svagen::sva {

// ---------------------------------------------------------------------------
// Boolean layer
// ---------------------------------------------------------------------------

enum class UnaryOp { LogicNot, BitNot, Minus };
enum class BinaryOp {
    LogicAnd, LogicOr,
    BitAnd, BitOr, BitXor,
    Eq, Ne, Lt, Le, Gt, Ge,
    Add, Sub,
};
enum class SysFunc { Past, Rose, Fell, Stable };
enum class LiteralBase { Binary, Octal, Decimal, Hex, Fill };

struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

struct BitSelect { uint32_t index = 0; bool operator==(const BitSelect&) const = default; };
struct PartSelect { uint32_t msb = 0; uint32_t lsb = 0; bool operator==(const PartSelect&) const = default; };
using Select = std::variant<std::monostate, BitSelect, PartSelect>;

struct Identifier {
    std::string name; // may be hierarchical ("a.b"); flagged later by name resolution
    Select select;
};

struct NumericLiteral {
    std::optional<uint32_t> width; // absent for unsized decimal and '0/'1
    LiteralBase base = LiteralBase::Decimal;
    uint64_t value = 0;
};

struct Unary { UnaryOp op; BoolExprPtr operand; };
struct Binary { BinaryOp op; BoolExprPtr lhs; BoolExprPtr rhs; };
struct Paren { BoolExprPtr inner; };
struct SystemCall {
    SysFunc func;
    BoolExprPtr arg;
    std::optional<uint32_t> cycles; // $past only; >= 1 when present
};

struct BoolExpr {
    std::variant<Identifier, NumericLiteral, Unary, Binary, Paren, SystemCall> node;
    Span span;
};

// ---------------------------------------------------------------------------
// Sequence layer: booleans chained with ##N / ##[m:n]
// ---------------------------------------------------------------------------

struct SequenceExpr;
using SequenceExprPtr = std::shared_ptr<const SequenceExpr>;

struct SeqBool { BoolExprPtr expr; };
struct SeqDelay {
    SequenceExprPtr lhs;
    uint32_t min_cycles = 0;
    std::optional<uint32_t> max_cycles; // >= min when present
    SequenceExprPtr rhs;
};

struct SequenceExpr {
    std::variant<SeqBool, SeqDelay> node;
    Span span;
};

// ---------------------------------------------------------------------------
// Property layer
// ---------------------------------------------------------------------------

enum class ImplKind { Overlapped, NonOverlapped }; // |->  vs  |=>

struct PropertyExpr;
using PropertyExprPtr = std::shared_ptr<const PropertyExpr>;

struct PropSeq { SequenceExprPtr seq; };
struct PropImplication {
    ImplKind kind;
    SequenceExprPtr antecedent;
    PropertyExprPtr consequent;
};
struct PropNot { PropertyExprPtr inner; };
struct PropDisableIff { BoolExprPtr condition; PropertyExprPtr body; };

struct PropertyExpr {
    std::variant<PropSeq, PropImplication, PropNot, PropDisableIff> node;
    Span span;
};

enum class ClockEdge { Posedge, Negedge };
struct ClockingEvent {
    ClockEdge edge = ClockEdge::Posedge;
    std::string signal;
    bool operator==(const ClockingEvent&) const = default;
};

/// One parsed assertion statement.  `immediate` distinguishes `assert(expr);`
/// from `assert property (...);`.  Invariant: raw_text re-parses to a
/// structurally equal declaration.
struct AssertionDecl {
    std::optional<std::string> label;
    std::optional<ClockingEvent> clocking;
    PropertyExprPtr property;
    bool immediate = false;
    Span source_span;
    std::string raw_text;
};

// ---------------------------------------------------------------------------
// Construction helpers
// ---------------------------------------------------------------------------

BoolExprPtr mk_bool(decltype(BoolExpr::node) node, Span span = {});
SequenceExprPtr mk_seq(decltype(SequenceExpr::node) node, Span span = {});
PropertyExprPtr mk_prop(decltype(PropertyExpr::node) node, Span span = {});

// ---------------------------------------------------------------------------
// Structural equality and walks
// ---------------------------------------------------------------------------

/// Grouping parentheses are re-parsed as Paren nodes; they carry no meaning,
/// so structural comparison looks straight through them.
bool structurally_equal(const BoolExpr& a, const BoolExpr& b);
bool structurally_equal(const SequenceExpr& a, const SequenceExpr& b);
bool structurally_equal(const PropertyExpr& a, const PropertyExpr& b);
bool structurally_equal(const AssertionDecl& a, const AssertionDecl& b);

/// Visits every identifier in the tree (name + select).
void for_each_identifier(const PropertyExpr& prop,
                         const std::function<void(const Identifier&, const Span&)>& fn);
void for_each_identifier(const BoolExpr& expr,
                         const std::function<void(const Identifier&, const Span&)>& fn);

/// True if the tree contains any ##N delay.
bool contains_delay(const PropertyExpr& prop);
/// True if the tree contains a $past/$rose/$fell/$stable call.
bool contains_system_call(const PropertyExpr& prop);
bool contains_system_call(const BoolExpr& expr);
/// True if the tree contains a non-overlapped implication (|=>).
bool contains_nonoverlapped_implication(const PropertyExpr& prop);
/// True if the tree contains any implication node.
bool contains_implication(const PropertyExpr& prop);
bool contains_disable_iff(const PropertyExpr& prop);

/// A declaration without a clocking event must stay purely combinational:
/// no delays, no |=>, no sampled-value functions.
bool is_combinationally_well_formed(const AssertionDecl& decl);

} // namespace svagen::sva
