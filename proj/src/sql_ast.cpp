#include "graphiti/sql_ast.hpp"

namespace graphiti {
namespace sql {

ExprPtr attr(std::optional<std::string> qual, std::string key) {
    return std::make_shared<Expr>(Expr{Expr::Attr{ColRef{std::move(qual), std::move(key)}}});
}
ExprPtr lit(Value v) { return std::make_shared<Expr>(Expr{Expr::Lit{std::move(v)}}); }
ExprPtr cast(PredPtr p) { return std::make_shared<Expr>(Expr{Expr::Cast{std::move(p)}}); }
ExprPtr agg(AggKind fn, ExprPtr arg) {
    return std::make_shared<Expr>(Expr{Expr::Agg{fn, std::move(arg)}});
}
ExprPtr arith(ExprPtr l, ArithOp op, ExprPtr r) {
    return std::make_shared<Expr>(Expr{Expr::Arith{op, std::move(l), std::move(r)}});
}

PredPtr btrue() { return std::make_shared<Pred>(Pred{Pred::BoolLit{true}}); }
PredPtr bfalse() { return std::make_shared<Pred>(Pred{Pred::BoolLit{false}}); }
PredPtr cmp(ExprPtr l, CmpOp op, ExprPtr r) {
    return std::make_shared<Pred>(Pred{Pred::Cmp{op, std::move(l), std::move(r)}});
}
PredPtr is_null(ExprPtr e) { return std::make_shared<Pred>(Pred{Pred::IsNull{std::move(e)}}); }
PredPtr in_values(ExprPtr e, std::vector<Value> vs) {
    return std::make_shared<Pred>(Pred{Pred::InVals{std::move(e), std::move(vs)}});
}
PredPtr in_query(std::vector<ExprPtr> args, QueryPtr sub) {
    return std::make_shared<Pred>(Pred{Pred::InQuery{std::move(args), std::move(sub)}});
}
PredPtr pand(PredPtr l, PredPtr r) {
    return std::make_shared<Pred>(Pred{Pred::And{std::move(l), std::move(r)}});
}
PredPtr por(PredPtr l, PredPtr r) {
    return std::make_shared<Pred>(Pred{Pred::Or{std::move(l), std::move(r)}});
}
PredPtr pnot(PredPtr p) { return std::make_shared<Pred>(Pred{Pred::Not{std::move(p)}}); }

QueryPtr base_rel(std::string name) {
    return std::make_shared<Query>(Query{Query::BaseRel{std::move(name)}});
}
QueryPtr project(std::vector<ProjItem> items, QueryPtr from) {
    return std::make_shared<Query>(Query{Query::Project{std::move(items), std::move(from)}});
}
QueryPtr select(PredPtr pred, QueryPtr from) {
    return std::make_shared<Query>(Query{Query::Select{std::move(pred), std::move(from)}});
}
QueryPtr rename(std::string name, QueryPtr from) {
    return std::make_shared<Query>(Query{Query::Rename{std::move(name), std::move(from)}});
}
QueryPtr set_union(QueryPtr l, QueryPtr r) {
    return std::make_shared<Query>(Query{Query::SetUnion{std::move(l), std::move(r)}});
}
QueryPtr bag_union(QueryPtr l, QueryPtr r) {
    return std::make_shared<Query>(Query{Query::BagUnion{std::move(l), std::move(r)}});
}
QueryPtr join(JoinKind kind, PredPtr pred, QueryPtr l, QueryPtr r) {
    return std::make_shared<Query>(Query{Query::Join{kind, std::move(pred), std::move(l),
                                                     std::move(r)}});
}
QueryPtr group_by(QueryPtr from, std::vector<ExprPtr> keys, std::vector<ProjItem> items,
                  PredPtr having) {
    return std::make_shared<Query>(Query{Query::GroupBy{std::move(from), std::move(keys),
                                                        std::move(items), std::move(having)}});
}
QueryPtr with(std::vector<CteDef> defs, QueryPtr body) {
    return std::make_shared<Query>(Query{Query::With{std::move(defs), std::move(body)}});
}
QueryPtr order_by(QueryPtr from, ColRef a, bool asc) {
    return std::make_shared<Query>(Query{Query::OrderBy{std::move(from), std::move(a), asc}});
}

bool has_agg(const Expr& e) {
    if (std::holds_alternative<Expr::Agg>(e.node)) return true;
    if (const auto* a = std::get_if<Expr::Arith>(&e.node))
        return has_agg(*a->lhs) || has_agg(*a->rhs);
    return false;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* x = std::get_if<Expr::Attr>(&a.node))
        return x->ref == std::get<Expr::Attr>(b.node).ref;
    if (const auto* x = std::get_if<Expr::Lit>(&a.node))
        return x->v == std::get<Expr::Lit>(b.node).v;
    if (const auto* x = std::get_if<Expr::Cast>(&a.node))
        return equal(*x->pred, *std::get<Expr::Cast>(b.node).pred);
    if (const auto* x = std::get_if<Expr::Agg>(&a.node)) {
        const auto& y = std::get<Expr::Agg>(b.node);
        return x->fn == y.fn && equal(*x->arg, *y.arg);
    }
    const auto& x = std::get<Expr::Arith>(a.node);
    const auto& y = std::get<Expr::Arith>(b.node);
    return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
}

bool equal(const Pred& a, const Pred& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* x = std::get_if<Pred::BoolLit>(&a.node))
        return x->v == std::get<Pred::BoolLit>(b.node).v;
    if (const auto* x = std::get_if<Pred::Cmp>(&a.node)) {
        const auto& y = std::get<Pred::Cmp>(b.node);
        return x->op == y.op && equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
    }
    if (const auto* x = std::get_if<Pred::IsNull>(&a.node))
        return equal(*x->arg, *std::get<Pred::IsNull>(b.node).arg);
    if (const auto* x = std::get_if<Pred::InVals>(&a.node)) {
        const auto& y = std::get<Pred::InVals>(b.node);
        return equal(*x->arg, *y.arg) && x->values == y.values;
    }
    if (const auto* x = std::get_if<Pred::InQuery>(&a.node)) {
        const auto& y = std::get<Pred::InQuery>(b.node);
        if (x->args.size() != y.args.size() || !equal(*x->sub, *y.sub)) return false;
        for (std::size_t i = 0; i < x->args.size(); ++i)
            if (!equal(*x->args[i], *y.args[i])) return false;
        return true;
    }
    if (const auto* x = std::get_if<Pred::And>(&a.node)) {
        const auto& y = std::get<Pred::And>(b.node);
        return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
    }
    if (const auto* x = std::get_if<Pred::Or>(&a.node)) {
        const auto& y = std::get<Pred::Or>(b.node);
        return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
    }
    return equal(*std::get<Pred::Not>(a.node).arg, *std::get<Pred::Not>(b.node).arg);
}

static bool equal_items(const std::vector<ProjItem>& a, const std::vector<ProjItem>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].alias != b[i].alias || !equal(*a[i].expr, *b[i].expr)) return false;
    return true;
}

bool equal(const Query& a, const Query& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* x = std::get_if<Query::BaseRel>(&a.node))
        return x->name == std::get<Query::BaseRel>(b.node).name;
    if (const auto* x = std::get_if<Query::Project>(&a.node)) {
        const auto& y = std::get<Query::Project>(b.node);
        return equal_items(x->items, y.items) && equal(*x->from, *y.from);
    }
    if (const auto* x = std::get_if<Query::Select>(&a.node)) {
        const auto& y = std::get<Query::Select>(b.node);
        return equal(*x->pred, *y.pred) && equal(*x->from, *y.from);
    }
    if (const auto* x = std::get_if<Query::Rename>(&a.node)) {
        const auto& y = std::get<Query::Rename>(b.node);
        return x->name == y.name && equal(*x->from, *y.from);
    }
    if (const auto* x = std::get_if<Query::SetUnion>(&a.node)) {
        const auto& y = std::get<Query::SetUnion>(b.node);
        return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
    }
    if (const auto* x = std::get_if<Query::BagUnion>(&a.node)) {
        const auto& y = std::get<Query::BagUnion>(b.node);
        return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
    }
    if (const auto* x = std::get_if<Query::Join>(&a.node)) {
        const auto& y = std::get<Query::Join>(b.node);
        if (x->kind != y.kind) return false;
        if ((x->pred == nullptr) != (y.pred == nullptr)) return false;
        if (x->pred && !equal(*x->pred, *y.pred)) return false;
        return equal(*x->lhs, *y.lhs) && equal(*x->rhs, *y.rhs);
    }
    if (const auto* x = std::get_if<Query::GroupBy>(&a.node)) {
        const auto& y = std::get<Query::GroupBy>(b.node);
        if (x->keys.size() != y.keys.size()) return false;
        for (std::size_t i = 0; i < x->keys.size(); ++i)
            if (!equal(*x->keys[i], *y.keys[i])) return false;
        return equal_items(x->items, y.items) && equal(*x->having, *y.having) &&
               equal(*x->from, *y.from);
    }
    if (const auto* x = std::get_if<Query::With>(&a.node)) {
        const auto& y = std::get<Query::With>(b.node);
        if (x->defs.size() != y.defs.size()) return false;
        for (std::size_t i = 0; i < x->defs.size(); ++i)
            if (x->defs[i].name != y.defs[i].name || !equal(*x->defs[i].query, *y.defs[i].query))
                return false;
        return equal(*x->body, *y.body);
    }
    const auto& x = std::get<Query::OrderBy>(a.node);
    const auto& y = std::get<Query::OrderBy>(b.node);
    return x.attr == y.attr && x.asc == y.asc && equal(*x.from, *y.from);
}

static std::string agg_name(AggKind k) {
    switch (k) {
        case AggKind::Count: return "Count";
        case AggKind::Avg: return "Avg";
        case AggKind::Sum: return "Sum";
        case AggKind::Min: return "Min";
        case AggKind::Max: return "Max";
    }
    return "?";
}

std::string to_string(const Expr& e) {
    if (const auto* a = std::get_if<Expr::Attr>(&e.node)) return a->ref.str();
    if (const auto* l = std::get_if<Expr::Lit>(&e.node)) return graphiti::to_string(l->v);
    if (const auto* c = std::get_if<Expr::Cast>(&e.node)) {
        (void)c;
        return "CAST(..)";
    }
    if (const auto* g = std::get_if<Expr::Agg>(&e.node))
        return agg_name(g->fn) + "(" + to_string(*g->arg) + ")";
    const auto& ar = std::get<Expr::Arith>(e.node);
    return "(" + to_string(*ar.lhs) + " " + graphiti::to_string(ar.op) + " " +
           to_string(*ar.rhs) + ")";
}

}  // namespace sql
}  // namespace graphiti
