#include "swf/constraint.hpp"

#include <optional>

namespace swf {

const char* to_string(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
    }
    return "?";
}

bool AndExpr::operator==(const AndExpr& o) const { return *lhs == *o.lhs && *rhs == *o.rhs; }
bool OrExpr::operator==(const OrExpr& o) const { return *lhs == *o.lhs && *rhs == *o.rhs; }
bool NotExpr::operator==(const NotExpr& o) const { return *inner == *o.inner; }

ConstraintPtr make_expr(ConstraintExpr e) {
    return std::make_shared<const ConstraintExpr>(std::move(e));
}

namespace {

// Static type of an operand, for parse-time checking.
struct OperandType {
    FieldKind kind;
    SourcePos pos;
};

OperandType operand_type(const Operand& op, const MetadataSchema& schema) {
    if (const auto* f = std::get_if<FieldRef>(&op)) {
        auto k = schema.kind_of(f->name);
        if (!k) throw ParseError(f->pos, "unknown field '" + f->name + "'");
        return {*k, f->pos};
    }
    const auto& lit = std::get<LiteralVal>(op);
    const MetadataValue& v = lit.value;
    if (v.is_integer()) return {FieldKind::Integer, lit.pos};
    if (v.is_real()) return {FieldKind::Real, lit.pos};
    if (v.is_text()) return {FieldKind::Text, lit.pos};
    if (v.is_date()) return {FieldKind::Date, lit.pos};
    return {FieldKind::Boolean, lit.pos};
}

bool numeric_kind(FieldKind k) { return k == FieldKind::Integer || k == FieldKind::Real; }

bool comparable(FieldKind a, FieldKind b) {
    if (numeric_kind(a) && numeric_kind(b)) return true;
    return a == b;
}

void check_comparison(const Comparison& c, const MetadataSchema& schema) {
    OperandType lt = operand_type(c.lhs, schema);
    OperandType rt = operand_type(c.rhs, schema);
    if (!comparable(lt.kind, rt.kind))
        throw ParseError(rt.pos, std::string("type mismatch: ") + to_string(lt.kind) +
                                     " compared with " + to_string(rt.kind));
    const bool ordered = c.op != CmpOp::Eq && c.op != CmpOp::Ne;
    if (ordered && (lt.kind == FieldKind::Text || lt.kind == FieldKind::Boolean))
        throw ParseError(lt.pos, std::string(to_string(lt.kind)) +
                                     " values support only == and !=");
}

// Comparison outcome; nullopt when a missing value was involved.
std::optional<bool> compare(const MetadataValue& a, CmpOp op, const MetadataValue& b,
                            EvalStats* stats) {
    if (a.missing() || b.missing()) {
        if (stats) stats->touched_missing = true;
        return std::nullopt;
    }
    if (a.is_text()) {
        bool eq = a.as_text() == b.as_text();
        return op == CmpOp::Eq ? eq : !eq;
    }
    if (a.is_boolean()) {
        bool eq = a.as_boolean() == b.as_boolean();
        return op == CmpOp::Eq ? eq : !eq;
    }
    double x, y;
    if (a.is_integer() && b.is_integer()) {
        // exact integer comparison
        std::int64_t ia = a.as_integer(), ib = b.as_integer();
        switch (op) {
            case CmpOp::Lt: return ia < ib;
            case CmpOp::Le: return ia <= ib;
            case CmpOp::Gt: return ia > ib;
            case CmpOp::Ge: return ia >= ib;
            case CmpOp::Eq: return ia == ib;
            case CmpOp::Ne: return ia != ib;
        }
    }
    x = *a.numeric();
    y = *b.numeric();
    switch (op) {
        case CmpOp::Lt: return x < y;
        case CmpOp::Le: return x <= y;
        case CmpOp::Gt: return x > y;
        case CmpOp::Ge: return x >= y;
        case CmpOp::Eq: return x == y;
        case CmpOp::Ne: return x != y;
    }
    return std::nullopt;
}

MetadataValue resolve(const Operand& op, const Artifact& a, const MetadataSchema& schema) {
    if (const auto* f = std::get_if<FieldRef>(&op)) return a.value(schema, f->name);
    return std::get<LiteralVal>(op).value;
}

int precedence(const ConstraintExpr& e) {
    if (std::holds_alternative<OrExpr>(e.node)) return 1;
    if (std::holds_alternative<AndExpr>(e.node)) return 2;
    if (std::holds_alternative<NotExpr>(e.node)) return 3;
    return 4;
}

std::string print_literal(const MetadataValue& v) {
    if (v.is_text()) {
        std::string out = "\"";
        for (char c : v.as_text()) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    }
    return v.display();
}

std::string print_operand(const Operand& op) {
    if (const auto* f = std::get_if<FieldRef>(&op)) return f->name;
    return print_literal(std::get<LiteralVal>(op).value);
}

void print_into(const ConstraintExpr& e, int parent_prec, std::string& out) {
    const bool parens = precedence(e) < parent_prec;
    if (parens) out += "(";
    if (const auto* c = std::get_if<Comparison>(&e.node)) {
        out += print_operand(c->lhs);
        out += " ";
        out += to_string(c->op);
        out += " ";
        out += print_operand(c->rhs);
    } else if (const auto* m = std::get_if<Membership>(&e.node)) {
        out += m->field.name;
        out += " in [";
        for (std::size_t i = 0; i < m->items.size(); ++i) {
            if (i) out += ", ";
            out += print_literal(m->items[i].value);
        }
        out += "]";
    } else if (const auto* n = std::get_if<NotExpr>(&e.node)) {
        out += "not ";
        print_into(*n->inner, 4, out);
    } else if (const auto* a = std::get_if<AndExpr>(&e.node)) {
        print_into(*a->lhs, 2, out);
        out += " and ";
        print_into(*a->rhs, 3, out);
    } else if (const auto* o = std::get_if<OrExpr>(&e.node)) {
        print_into(*o->lhs, 1, out);
        out += " or ";
        print_into(*o->rhs, 2, out);
    }
    if (parens) out += ")";
}

}  // namespace

void check_constraint(const ConstraintExpr& e, const MetadataSchema& schema) {
    if (const auto* c = std::get_if<Comparison>(&e.node)) {
        check_comparison(*c, schema);
    } else if (const auto* m = std::get_if<Membership>(&e.node)) {
        OperandType ft = operand_type(Operand{m->field}, schema);
        for (const auto& item : m->items) {
            OperandType it = operand_type(Operand{item}, schema);
            if (!comparable(ft.kind, it.kind))
                throw ParseError(it.pos,
                                 std::string("type mismatch in membership list: field is ") +
                                     to_string(ft.kind) + ", item is " + to_string(it.kind));
        }
    } else if (const auto* n = std::get_if<NotExpr>(&e.node)) {
        check_constraint(*n->inner, schema);
    } else if (const auto* a = std::get_if<AndExpr>(&e.node)) {
        check_constraint(*a->lhs, schema);
        check_constraint(*a->rhs, schema);
    } else if (const auto* o = std::get_if<OrExpr>(&e.node)) {
        check_constraint(*o->lhs, schema);
        check_constraint(*o->rhs, schema);
    }
}

bool eval_constraint(const ConstraintExpr& e, const Artifact& a,
                     const MetadataSchema& schema, EvalStats* stats) {
    if (const auto* c = std::get_if<Comparison>(&e.node)) {
        auto r = compare(resolve(c->lhs, a, schema), c->op, resolve(c->rhs, a, schema), stats);
        return r.value_or(false);
    }
    if (const auto* m = std::get_if<Membership>(&e.node)) {
        const MetadataValue& v = a.value(schema, m->field.name);
        if (v.missing()) {
            if (stats) stats->touched_missing = true;
            return false;
        }
        for (const auto& item : m->items) {
            auto r = compare(v, CmpOp::Eq, item.value, stats);
            if (r.value_or(false)) return true;
        }
        return false;
    }
    if (const auto* n = std::get_if<NotExpr>(&e.node))
        return !eval_constraint(*n->inner, a, schema, stats);
    if (const auto* an = std::get_if<AndExpr>(&e.node))
        return eval_constraint(*an->lhs, a, schema, stats) &&
               eval_constraint(*an->rhs, a, schema, stats);
    const auto& o = std::get<OrExpr>(e.node);
    return eval_constraint(*o.lhs, a, schema, stats) ||
           eval_constraint(*o.rhs, a, schema, stats);
}

std::string print_constraint(const ConstraintExpr& e) {
    std::string out;
    print_into(e, 0, out);
    return out;
}

}  // namespace swf
