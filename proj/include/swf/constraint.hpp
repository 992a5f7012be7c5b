#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "swf/dataset.hpp"
#include "swf/error.hpp"
#include "swf/schema.hpp"

namespace swf {

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

const char* to_string(CmpOp op);

struct FieldRef {
    std::string name;
    SourcePos pos;  // not part of structural equality
    bool operator==(const FieldRef& o) const { return name == o.name; }
};

struct LiteralVal {
    MetadataValue value;
    SourcePos pos;
    bool operator==(const LiteralVal& o) const { return value == o.value; }
};

using Operand = std::variant<FieldRef, LiteralVal>;

struct ConstraintExpr;
using ConstraintPtr = std::shared_ptr<const ConstraintExpr>;

struct Comparison {
    CmpOp op;
    Operand lhs;
    Operand rhs;
    bool operator==(const Comparison&) const = default;
};

struct Membership {
    FieldRef field;
    std::vector<LiteralVal> items;
    bool operator==(const Membership&) const = default;
};

struct AndExpr {
    ConstraintPtr lhs, rhs;
    bool operator==(const AndExpr& o) const;
};

struct OrExpr {
    ConstraintPtr lhs, rhs;
    bool operator==(const OrExpr& o) const;
};

struct NotExpr {
    ConstraintPtr inner;
    bool operator==(const NotExpr& o) const;
};

struct ConstraintExpr {
    std::variant<Comparison, Membership, AndExpr, OrExpr, NotExpr> node;
    bool operator==(const ConstraintExpr&) const = default;
};

ConstraintPtr make_expr(ConstraintExpr e);

// Schema check: every field reference resolves and literal types are
// comparable with the field's kind. Throws ParseError.
void check_constraint(const ConstraintExpr& e, const MetadataSchema& schema);

struct EvalStats {
    bool touched_missing = false;  // some comparison leaf saw a missing value
};

// Two-valued evaluation; a comparison or membership over a missing value is
// false (and flagged in stats).
bool eval_constraint(const ConstraintExpr& e, const Artifact& a,
                     const MetadataSchema& schema, EvalStats* stats = nullptr);

// Canonical textual form; parses back to a structurally equal tree.
std::string print_constraint(const ConstraintExpr& e);

}  // namespace swf
