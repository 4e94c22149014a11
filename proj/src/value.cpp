#include "graphiti/value.hpp"

namespace graphiti {

Tri value_eq_3vl(const Value& a, const Value& b) {
    if (a.is_null() || b.is_null()) return Tri::Null;
    return tri_of(a == b);
}

static int kind_rank(ValueKind k) {
    switch (k) {
        case ValueKind::Int: return 0;
        case ValueKind::Str: return 1;
        case ValueKind::Bool: return 2;
        case ValueKind::Null: return 3;
    }
    return 3;
}

bool value_less(const Value& a, const Value& b) {
    int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
    if (ra != rb) return ra < rb;
    switch (a.kind()) {
        case ValueKind::Int: return a.as_int() < b.as_int();
        case ValueKind::Str: return a.as_str() < b.as_str();
        case ValueKind::Bool: return !a.as_bool() && b.as_bool();
        case ValueKind::Null: return false;
    }
    return false;
}

Tri value_cmp_3vl(const Value& a, const Value& b, CmpOp op) {
    if (a.is_null() || b.is_null()) return Tri::Null;
    switch (op) {
        case CmpOp::Eq: return tri_of(a == b);
        case CmpOp::Ne: return tri_of(!(a == b));
        case CmpOp::Lt: return tri_of(value_less(a, b));
        case CmpOp::Le: return tri_of(!value_less(b, a));
        case CmpOp::Gt: return tri_of(value_less(b, a));
        case CmpOp::Ge: return tri_of(!value_less(a, b));
    }
    return Tri::Null;
}

bool grouping_eq(const Row& a, const Row& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

bool row_less(const Row& a, const Row& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (value_less(a[i], b[i])) return true;
        if (value_less(b[i], a[i])) return false;
    }
    return a.size() < b.size();
}

Value value_arith(const Value& a, ArithOp op, const Value& b) {
    if (a.is_null() || b.is_null()) return Value::null();
    if (a.kind() != ValueKind::Int || b.kind() != ValueKind::Int)
        throw EvalError("arithmetic on non-integer operands: " + to_string(a) + " " +
                        to_string(op) + " " + to_string(b));
    std::int64_t x = a.as_int(), y = b.as_int();
    switch (op) {
        case ArithOp::Add: return Value(x + y);
        case ArithOp::Sub: return Value(x - y);
        case ArithOp::Mul: return Value(x * y);
        case ArithOp::Div:
            if (y == 0) throw EvalError("division by zero");
            return Value(x / y);
    }
    return Value::null();
}

std::string to_string(const Value& v) {
    switch (v.kind()) {
        case ValueKind::Null: return "Null";
        case ValueKind::Int: return std::to_string(v.as_int());
        case ValueKind::Str: return "'" + v.as_str() + "'";
        case ValueKind::Bool: return v.as_bool() ? "true" : "false";
    }
    return "Null";
}

std::string to_string(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "<>";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string to_string(ArithOp op) {
    switch (op) {
        case ArithOp::Add: return "+";
        case ArithOp::Sub: return "-";
        case ArithOp::Mul: return "*";
        case ArithOp::Div: return "/";
    }
    return "?";
}

}  // namespace graphiti
