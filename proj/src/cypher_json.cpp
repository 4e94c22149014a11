#include "graphiti/cypher_ast.hpp"
#include "graphiti/json_io.hpp"

namespace graphiti {
namespace cypher {

using nlohmann::json;

namespace {

const char* dir_name(Dir d) {
    switch (d) {
        case Dir::Fwd: return "fwd";
        case Dir::Bwd: return "bwd";
        case Dir::Both: return "both";
    }
    return "fwd";
}

Dir dir_of(const std::string& s) {
    if (s == "fwd") return Dir::Fwd;
    if (s == "bwd") return Dir::Bwd;
    if (s == "both") return Dir::Both;
    throw Error("bad direction '" + s + "'");
}

const char* agg_tag(AggKind k) {
    switch (k) {
        case AggKind::Count: return "count";
        case AggKind::Avg: return "avg";
        case AggKind::Sum: return "sum";
        case AggKind::Min: return "min";
        case AggKind::Max: return "max";
    }
    return "count";
}

AggKind agg_of(const std::string& s) {
    if (s == "count") return AggKind::Count;
    if (s == "avg") return AggKind::Avg;
    if (s == "sum") return AggKind::Sum;
    if (s == "min") return AggKind::Min;
    if (s == "max") return AggKind::Max;
    throw Error("bad aggregate '" + s + "'");
}

json pattern_to_json(const PathPattern& pp) {
    json nodes = json::array();
    for (const auto& n : pp.nodes) nodes.push_back({{"var", n.var}, {"label", n.label}});
    json edges = json::array();
    for (const auto& e : pp.edges)
        edges.push_back({{"var", e.var}, {"label", e.label}, {"dir", dir_name(e.dir)}});
    return {{"nodes", nodes}, {"edges", edges}};
}

PathPattern pattern_from_json(const json& j) {
    PathPattern pp;
    for (const auto& n : j.at("nodes"))
        pp.nodes.push_back({n.at("var").get<std::string>(), n.at("label").get<std::string>()});
    for (const auto& e : j.at("edges"))
        pp.edges.push_back({e.at("var").get<std::string>(), e.at("label").get<std::string>(),
                            dir_of(e.at("dir").get<std::string>())});
    return pp;
}

json expr_to_json(const Expr& e);
json pred_to_json(const Pred& p);

json expr_to_json(const Expr& e) {
    if (const auto* k = std::get_if<Expr::Key>(&e.node)) {
        json out = {{"node", "key"}, {"key", k->ref.key}};
        if (k->ref.var) out["var"] = *k->ref.var;
        return out;
    }
    if (const auto* l = std::get_if<Expr::Lit>(&e.node))
        return {{"node", "lit"}, {"value", graphiti::to_json(l->v)}};
    if (const auto* c = std::get_if<Expr::Cast>(&e.node))
        return {{"node", "cast"}, {"pred", pred_to_json(*c->pred)}};
    if (const auto* g = std::get_if<Expr::Agg>(&e.node))
        return {{"node", "agg"}, {"fn", agg_tag(g->fn)}, {"arg", expr_to_json(*g->arg)}};
    const auto& a = std::get<Expr::Arith>(e.node);
    return {{"node", "arith"},
            {"op", graphiti::to_string(a.op)},
            {"lhs", expr_to_json(*a.lhs)},
            {"rhs", expr_to_json(*a.rhs)}};
}

ArithOp arith_of(const std::string& s) {
    if (s == "+") return ArithOp::Add;
    if (s == "-") return ArithOp::Sub;
    if (s == "*") return ArithOp::Mul;
    if (s == "/") return ArithOp::Div;
    throw Error("bad arithmetic op '" + s + "'");
}

CmpOp cmp_of(const std::string& s) {
    if (s == "=") return CmpOp::Eq;
    if (s == "<>") return CmpOp::Ne;
    if (s == "<") return CmpOp::Lt;
    if (s == "<=") return CmpOp::Le;
    if (s == ">") return CmpOp::Gt;
    if (s == ">=") return CmpOp::Ge;
    throw Error("bad comparison op '" + s + "'");
}

ExprPtr expr_from_json(const json& j);
PredPtr pred_from_json(const json& j);

ExprPtr expr_from_json(const json& j) {
    const std::string node = j.at("node").get<std::string>();
    if (node == "key") {
        std::optional<std::string> var;
        if (j.contains("var")) var = j.at("var").get<std::string>();
        return key(var, j.at("key").get<std::string>());
    }
    if (node == "lit") return lit(value_from_json(j.at("value")));
    if (node == "cast") return cast(pred_from_json(j.at("pred")));
    if (node == "agg") return agg(agg_of(j.at("fn").get<std::string>()), expr_from_json(j.at("arg")));
    if (node == "arith")
        return arith(expr_from_json(j.at("lhs")), arith_of(j.at("op").get<std::string>()),
                     expr_from_json(j.at("rhs")));
    throw Error("bad expression node '" + node + "'");
}

json pred_to_json(const Pred& p) {
    if (const auto* b = std::get_if<Pred::BoolLit>(&p.node))
        return {{"node", "bool"}, {"value", b->v}};
    if (const auto* c = std::get_if<Pred::Cmp>(&p.node))
        return {{"node", "cmp"},
                {"op", graphiti::to_string(c->op)},
                {"lhs", expr_to_json(*c->lhs)},
                {"rhs", expr_to_json(*c->rhs)}};
    if (const auto* n = std::get_if<Pred::IsNull>(&p.node))
        return {{"node", "isnull"}, {"arg", expr_to_json(*n->arg)}};
    if (const auto* in = std::get_if<Pred::In>(&p.node)) {
        json vals = json::array();
        for (const auto& v : in->values) vals.push_back(graphiti::to_json(v));
        return {{"node", "in"}, {"arg", expr_to_json(*in->arg)}, {"values", vals}};
    }
    if (const auto* ex = std::get_if<Pred::Exists>(&p.node))
        return {{"node", "exists"}, {"pattern", pattern_to_json(ex->pattern)}};
    if (const auto* a = std::get_if<Pred::And>(&p.node))
        return {{"node", "and"}, {"lhs", pred_to_json(*a->lhs)}, {"rhs", pred_to_json(*a->rhs)}};
    if (const auto* o = std::get_if<Pred::Or>(&p.node))
        return {{"node", "or"}, {"lhs", pred_to_json(*o->lhs)}, {"rhs", pred_to_json(*o->rhs)}};
    return {{"node", "not"}, {"arg", pred_to_json(*std::get<Pred::Not>(p.node).arg)}};
}

PredPtr pred_from_json(const json& j) {
    const std::string node = j.at("node").get<std::string>();
    if (node == "bool") return j.at("value").get<bool>() ? btrue() : bfalse();
    if (node == "cmp")
        return cmp(expr_from_json(j.at("lhs")), cmp_of(j.at("op").get<std::string>()),
                   expr_from_json(j.at("rhs")));
    if (node == "isnull") return is_null(expr_from_json(j.at("arg")));
    if (node == "in") {
        std::vector<Value> vals;
        for (const auto& v : j.at("values")) vals.push_back(value_from_json(v));
        return in_values(expr_from_json(j.at("arg")), std::move(vals));
    }
    if (node == "exists") return exists(pattern_from_json(j.at("pattern")));
    if (node == "and") return pand(pred_from_json(j.at("lhs")), pred_from_json(j.at("rhs")));
    if (node == "or") return por(pred_from_json(j.at("lhs")), pred_from_json(j.at("rhs")));
    if (node == "not") return pnot(pred_from_json(j.at("arg")));
    throw Error("bad predicate node '" + node + "'");
}

json clause_to_json(const Clause& c) {
    if (const auto* m = std::get_if<Clause::Match>(&c.node))
        return {{"node", "match"},
                {"pattern", pattern_to_json(m->pattern)},
                {"pred", pred_to_json(*m->pred)}};
    if (const auto* m = std::get_if<Clause::MatchAfter>(&c.node))
        return {{"node", "matchAfter"},
                {"prev", clause_to_json(*m->prev)},
                {"pattern", pattern_to_json(m->pattern)},
                {"pred", pred_to_json(*m->pred)}};
    if (const auto* m = std::get_if<Clause::OptMatch>(&c.node))
        return {{"node", "optMatch"},
                {"prev", clause_to_json(*m->prev)},
                {"pattern", pattern_to_json(m->pattern)},
                {"pred", pred_to_json(*m->pred)}};
    const auto& w = std::get<Clause::With>(c.node);
    return {{"node", "with"},
            {"prev", clause_to_json(*w.prev)},
            {"old", w.old_vars},
            {"new", w.new_vars}};
}

ClausePtr clause_from_json(const json& j) {
    const std::string node = j.at("node").get<std::string>();
    if (node == "match")
        return match(pattern_from_json(j.at("pattern")), pred_from_json(j.at("pred")));
    if (node == "matchAfter")
        return match_after(clause_from_json(j.at("prev")), pattern_from_json(j.at("pattern")),
                           pred_from_json(j.at("pred")));
    if (node == "optMatch")
        return opt_match(clause_from_json(j.at("prev")), pattern_from_json(j.at("pattern")),
                         pred_from_json(j.at("pred")));
    if (node == "with")
        return with(clause_from_json(j.at("prev")), j.at("old").get<std::vector<std::string>>(),
                    j.at("new").get<std::vector<std::string>>());
    throw Error("bad clause node '" + node + "'");
}

}  // namespace

json to_json(const Query& q) {
    if (const auto* r = std::get_if<Query::Return>(&q.node)) {
        json exprs = json::array();
        for (const auto& e : r->exprs) exprs.push_back(expr_to_json(*e));
        return {{"node", "return"},
                {"clause", clause_to_json(*r->clause)},
                {"exprs", exprs},
                {"names", r->names}};
    }
    if (const auto* o = std::get_if<Query::OrderBy>(&q.node))
        return {{"node", "orderBy"},
                {"query", to_json(*o->ret)},
                {"key", o->key},
                {"asc", o->asc}};
    const auto& u = std::get<Query::Union>(q.node);
    return {{"node", u.all ? "unionAll" : "union"},
            {"lhs", to_json(*u.lhs)},
            {"rhs", to_json(*u.rhs)}};
}

QueryPtr query_from_json(const json& j) {
    const std::string node = j.at("node").get<std::string>();
    if (node == "return") {
        std::vector<ExprPtr> exprs;
        for (const auto& e : j.at("exprs")) exprs.push_back(expr_from_json(e));
        return ret(clause_from_json(j.at("clause")), std::move(exprs),
                   j.at("names").get<std::vector<std::string>>());
    }
    if (node == "orderBy")
        return order_by(query_from_json(j.at("query")), j.at("key").get<std::string>(),
                        j.at("asc").get<bool>());
    if (node == "union" || node == "unionAll")
        return union_q(query_from_json(j.at("lhs")), query_from_json(j.at("rhs")),
                       node == "unionAll");
    throw Error("bad query node '" + node + "'");
}

}  // namespace cypher
}  // namespace graphiti
