#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "graphiti/schema.hpp"
#include "graphiti/value.hpp"

namespace graphiti {

namespace cypher {

enum class Dir { Fwd, Bwd, Both };

struct NodePat {
    std::string var;
    std::string label;
};

struct EdgePat {
    std::string var;
    std::string label;
    Dir dir;
};

/// Alternating node/edge pattern; nodes.size() == edges.size() + 1.
struct PathPattern {
    std::vector<NodePat> nodes;
    std::vector<EdgePat> edges;
};

/// Property reference: `var.key`, or a bare `key` resolved through the
/// schema-wide key uniqueness assumption.
struct KeyRef {
    std::optional<std::string> var;
    std::string key;
};

enum class AggKind { Count, Avg, Sum, Min, Max };

struct Expr;
struct Pred;
using ExprPtr = std::shared_ptr<const Expr>;
using PredPtr = std::shared_ptr<const Pred>;

struct Expr {
    struct Key { KeyRef ref; };
    struct Lit { Value v; };
    struct Cast { PredPtr pred; };
    struct Agg { AggKind fn; ExprPtr arg; };
    struct Arith { ArithOp op; ExprPtr lhs, rhs; };

    std::variant<Key, Lit, Cast, Agg, Arith> node;
};

struct Pred {
    struct BoolLit { bool v; };
    struct Cmp { CmpOp op; ExprPtr lhs, rhs; };
    struct IsNull { ExprPtr arg; };
    struct In { ExprPtr arg; std::vector<Value> values; };
    struct Exists { PathPattern pattern; };
    struct And { PredPtr lhs, rhs; };
    struct Or { PredPtr lhs, rhs; };
    struct Not { PredPtr arg; };

    std::variant<BoolLit, Cmp, IsNull, In, Exists, And, Or, Not> node;
};

ExprPtr key(std::optional<std::string> var, std::string k);
ExprPtr lit(Value v);
ExprPtr cast(PredPtr p);
ExprPtr agg(AggKind fn, ExprPtr arg);
ExprPtr arith(ExprPtr l, ArithOp op, ExprPtr r);

PredPtr btrue();
PredPtr bfalse();
PredPtr cmp(ExprPtr l, CmpOp op, ExprPtr r);
PredPtr is_null(ExprPtr e);
PredPtr in_values(ExprPtr e, std::vector<Value> vs);
PredPtr exists(PathPattern pp);
PredPtr pand(PredPtr l, PredPtr r);
PredPtr por(PredPtr l, PredPtr r);
PredPtr pnot(PredPtr p);

struct Clause;
using ClausePtr = std::shared_ptr<const Clause>;

struct Clause {
    struct Match { PathPattern pattern; PredPtr pred; };
    struct MatchAfter { ClausePtr prev; PathPattern pattern; PredPtr pred; };
    struct OptMatch { ClausePtr prev; PathPattern pattern; PredPtr pred; };
    struct With { ClausePtr prev; std::vector<std::string> old_vars, new_vars; };

    std::variant<Match, MatchAfter, OptMatch, With> node;
};

ClausePtr match(PathPattern pp, PredPtr pred);
ClausePtr match_after(ClausePtr prev, PathPattern pp, PredPtr pred);
ClausePtr opt_match(ClausePtr prev, PathPattern pp, PredPtr pred);
ClausePtr with(ClausePtr prev, std::vector<std::string> olds, std::vector<std::string> news);

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

struct Query {
    struct Return { ClausePtr clause; std::vector<ExprPtr> exprs; std::vector<std::string> names; };
    struct OrderBy { QueryPtr ret; std::string key; bool asc; };
    struct Union { QueryPtr lhs, rhs; bool all; };

    std::variant<Return, OrderBy, Union> node;
};

QueryPtr ret(ClausePtr c, std::vector<ExprPtr> exprs, std::vector<std::string> names);
QueryPtr order_by(QueryPtr r, std::string key, bool asc);
QueryPtr union_q(QueryPtr l, QueryPtr r, bool all);

bool has_agg(const Expr& e);
bool has_agg(const std::vector<ExprPtr>& es);

bool equal(const Expr& a, const Expr& b);
bool equal(const Pred& a, const Pred& b);
bool equal(const PathPattern& a, const PathPattern& b);
bool equal(const Clause& a, const Clause& b);
bool equal(const Query& a, const Query& b);

std::string to_string(const Expr& e);
std::string to_string(const Pred& p);
std::string to_string(const PathPattern& pp);

nlohmann::json to_json(const Query& q);
QueryPtr query_from_json(const nlohmann::json& j);

/// Scope of bound pattern variables, in introduction order.
struct VarScope {
    std::vector<std::pair<std::string, std::string>> vars;  // (name, label)

    const std::string* label_of(const std::string& var) const;
    bool contains(const std::string& var) const { return label_of(var) != nullptr; }
};

/// Static well-formedness check against a schema: labels exist, pattern
/// alternation is type-consistent with edge endpoints in at least one
/// orientation, variables are bound and consistently labelled, With renames
/// resolve, aggregates are not nested, Union arities agree, OrderBy keys name
/// a return column, and Exists head/last variables are anchored in scope.
/// Throws BindError on the first failure.
void validate(const GraphSchema& schema, const Query& q);

}  // namespace cypher

}  // namespace graphiti
