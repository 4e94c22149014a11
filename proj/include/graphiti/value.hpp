#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "graphiti/error.hpp"

namespace graphiti {

enum class ValueKind { Null, Int, Str, Bool };

/// A database value. Null is its own variant, never a sentinel of another kind.
class Value {
public:
    Value() : v_(std::monostate{}) {}
    explicit Value(std::int64_t i) : v_(i) {}
    explicit Value(std::string s) : v_(std::move(s)) {}
    explicit Value(bool b) : v_(b) {}

    static Value null() { return Value(); }

    ValueKind kind() const { return static_cast<ValueKind>(v_.index()); }
    bool is_null() const { return kind() == ValueKind::Null; }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    const std::string& as_str() const { return std::get<std::string>(v_); }
    bool as_bool() const { return std::get<bool>(v_); }

    /// Grouping equality: syntactic, Null equals Null. This is the equality
    /// used by dedup, group keys, bag comparison and containers.
    friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

private:
    std::variant<std::monostate, std::int64_t, std::string, bool> v_;
};

using Row = std::vector<Value>;

/// Kleene three-valued truth value.
enum class Tri { False, Null, True };

inline Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }
inline bool is_true(Tri t) { return t == Tri::True; }

inline Tri tri_and(Tri a, Tri b) {
    if (a == Tri::False || b == Tri::False) return Tri::False;
    if (a == Tri::Null || b == Tri::Null) return Tri::Null;
    return Tri::True;
}

inline Tri tri_or(Tri a, Tri b) {
    if (a == Tri::True || b == Tri::True) return Tri::True;
    if (a == Tri::Null || b == Tri::Null) return Tri::Null;
    return Tri::False;
}

inline Tri tri_not(Tri a) {
    if (a == Tri::Null) return Tri::Null;
    return a == Tri::True ? Tri::False : Tri::True;
}

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class ArithOp { Add, Sub, Mul, Div };

/// 3VL value equality: Null if either side is Null, cross-kind non-Null
/// comparison is false.
Tri value_eq_3vl(const Value& a, const Value& b);

/// 3VL comparison. Ordered operators across kinds fall back to the canonical
/// kind order Int < Str < Bool so every non-Null comparison is defined.
Tri value_cmp_3vl(const Value& a, const Value& b, CmpOp op);

/// Grouping equality (Null = Null).
inline bool grouping_eq(const Value& a, const Value& b) { return a == b; }
bool grouping_eq(const Row& a, const Row& b);

/// Canonical total order used for sorting and container keys. Null sorts
/// above every non-Null value (Nulls last in ascending order).
bool value_less(const Value& a, const Value& b);
bool row_less(const Row& a, const Row& b);

/// Null-propagating integer arithmetic. Throws EvalError on non-Int operands
/// or division by zero.
Value value_arith(const Value& a, ArithOp op, const Value& b);

std::string to_string(const Value& v);
std::string to_string(CmpOp op);
std::string to_string(ArithOp op);

}  // namespace graphiti
