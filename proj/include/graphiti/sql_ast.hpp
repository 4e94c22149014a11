#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "graphiti/cypher_ast.hpp"  // AggKind is shared by both languages
#include "graphiti/schema.hpp"
#include "graphiti/value.hpp"

namespace graphiti {
namespace sql {

using cypher::AggKind;

/// Attribute reference; identity is the (qualifier, key) pair. A missing
/// qualifier resolves through key uniqueness among the columns in scope.
struct ColRef {
    std::optional<std::string> qual;
    std::string key;

    friend bool operator==(const ColRef& a, const ColRef& b) {
        return a.qual == b.qual && a.key == b.key;
    }
    std::string str() const { return qual ? *qual + "." + key : key; }
};

struct Expr;
struct Pred;
struct Query;
using ExprPtr = std::shared_ptr<const Expr>;
using PredPtr = std::shared_ptr<const Pred>;
using QueryPtr = std::shared_ptr<const Query>;

struct Expr {
    struct Attr { ColRef ref; };
    struct Lit { Value v; };
    struct Cast { PredPtr pred; };
    struct Agg { AggKind fn; ExprPtr arg; };
    struct Arith { ArithOp op; ExprPtr lhs, rhs; };

    std::variant<Attr, Lit, Cast, Agg, Arith> node;
};

struct Pred {
    struct BoolLit { bool v; };
    struct Cmp { CmpOp op; ExprPtr lhs, rhs; };
    struct IsNull { ExprPtr arg; };
    struct InVals { ExprPtr arg; std::vector<Value> values; };
    /// Row membership test: (e1, ..., en) IN (subquery).
    struct InQuery { std::vector<ExprPtr> args; QueryPtr sub; };
    struct And { PredPtr lhs, rhs; };
    struct Or { PredPtr lhs, rhs; };
    struct Not { PredPtr arg; };

    std::variant<BoolLit, Cmp, IsNull, InVals, InQuery, And, Or, Not> node;
};

enum class JoinKind { Cross, Inner, Left, Right, Full };

struct ProjItem {
    ExprPtr expr;
    std::optional<std::string> alias;
};

struct CteDef {
    std::string name;
    QueryPtr query;
};

struct Query {
    struct BaseRel { std::string name; };
    struct Project { std::vector<ProjItem> items; QueryPtr from; };
    struct Select { PredPtr pred; QueryPtr from; };
    struct Rename { std::string name; QueryPtr from; };
    struct SetUnion { QueryPtr lhs, rhs; };
    struct BagUnion { QueryPtr lhs, rhs; };
    /// Cross joins carry no predicate; every other kind requires one.
    struct Join { JoinKind kind; PredPtr pred; QueryPtr lhs, rhs; };
    struct GroupBy {
        QueryPtr from;
        std::vector<ExprPtr> keys;
        std::vector<ProjItem> items;
        PredPtr having;
    };
    struct With { std::vector<CteDef> defs; QueryPtr body; };
    struct OrderBy { QueryPtr from; ColRef attr; bool asc; };

    std::variant<BaseRel, Project, Select, Rename, SetUnion, BagUnion, Join, GroupBy, With,
                 OrderBy>
        node;
};

ExprPtr attr(std::optional<std::string> qual, std::string key);
ExprPtr lit(Value v);
ExprPtr cast(PredPtr p);
ExprPtr agg(AggKind fn, ExprPtr arg);
ExprPtr arith(ExprPtr l, ArithOp op, ExprPtr r);

PredPtr btrue();
PredPtr bfalse();
PredPtr cmp(ExprPtr l, CmpOp op, ExprPtr r);
PredPtr is_null(ExprPtr e);
PredPtr in_values(ExprPtr e, std::vector<Value> vs);
PredPtr in_query(std::vector<ExprPtr> args, QueryPtr sub);
PredPtr pand(PredPtr l, PredPtr r);
PredPtr por(PredPtr l, PredPtr r);
PredPtr pnot(PredPtr p);

QueryPtr base_rel(std::string name);
QueryPtr project(std::vector<ProjItem> items, QueryPtr from);
QueryPtr select(PredPtr pred, QueryPtr from);
QueryPtr rename(std::string name, QueryPtr from);
QueryPtr set_union(QueryPtr l, QueryPtr r);
QueryPtr bag_union(QueryPtr l, QueryPtr r);
QueryPtr join(JoinKind kind, PredPtr pred, QueryPtr l, QueryPtr r);
QueryPtr group_by(QueryPtr from, std::vector<ExprPtr> keys, std::vector<ProjItem> items,
                  PredPtr having);
QueryPtr with(std::vector<CteDef> defs, QueryPtr body);
QueryPtr order_by(QueryPtr from, ColRef a, bool asc);

bool has_agg(const Expr& e);

bool equal(const Expr& a, const Expr& b);
bool equal(const Pred& a, const Pred& b);
bool equal(const Query& a, const Query& b);

std::string to_string(const Expr& e);

nlohmann::json to_json(const Query& q);
QueryPtr query_from_json(const nlohmann::json& j);

}  // namespace sql
}  // namespace graphiti
