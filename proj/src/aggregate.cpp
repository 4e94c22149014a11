#include "graphiti/aggregate.hpp"

namespace graphiti {

using cypher::AggKind;

Value aggregate(AggKind fn, const std::vector<Value>& values) {
    bool all_null = true;
    for (const auto& v : values)
        if (!v.is_null()) { all_null = false; break; }
    if (all_null) return Value::null();

    switch (fn) {
        case AggKind::Count: {
            std::int64_t n = 0;
            for (const auto& v : values)
                if (!v.is_null()) ++n;
            return Value(n);
        }
        case AggKind::Sum: {
            std::int64_t s = 0;
            for (const auto& v : values) {
                if (v.is_null()) continue;
                if (v.kind() != ValueKind::Int)
                    throw EvalError("Sum over non-integer value " + to_string(v));
                s += v.as_int();
            }
            return Value(s);
        }
        case AggKind::Avg:
            return value_arith(aggregate(AggKind::Sum, values), ArithOp::Div,
                               aggregate(AggKind::Count, values));
        case AggKind::Min: {
            const Value* best = nullptr;
            for (const auto& v : values) {
                if (v.is_null()) continue;
                if (!best || value_less(v, *best)) best = &v;
            }
            return *best;
        }
        case AggKind::Max: {
            const Value* best = nullptr;
            for (const auto& v : values) {
                if (v.is_null()) continue;
                if (!best || value_less(*best, v)) best = &v;
            }
            return *best;
        }
    }
    return Value::null();
}

}  // namespace graphiti
