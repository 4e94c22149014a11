#include "graphiti/json_io.hpp"
#include "graphiti/sql_ast.hpp"

namespace graphiti {
namespace sql {

using nlohmann::json;

namespace {

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

const char* join_tag(JoinKind k) {
    switch (k) {
        case JoinKind::Cross: return "cross";
        case JoinKind::Inner: return "inner";
        case JoinKind::Left: return "left";
        case JoinKind::Right: return "right";
        case JoinKind::Full: return "full";
    }
    return "cross";
}

JoinKind join_of(const std::string& s) {
    if (s == "cross") return JoinKind::Cross;
    if (s == "inner") return JoinKind::Inner;
    if (s == "left") return JoinKind::Left;
    if (s == "right") return JoinKind::Right;
    if (s == "full") return JoinKind::Full;
    throw Error("bad join kind '" + s + "'");
}

json col_to_json(const ColRef& c) {
    json out = {{"key", c.key}};
    if (c.qual) out["qual"] = *c.qual;
    return out;
}

ColRef col_from_json(const json& j) {
    ColRef c;
    c.key = j.at("key").get<std::string>();
    if (j.contains("qual")) c.qual = j.at("qual").get<std::string>();
    return c;
}

json expr_to_json(const Expr& e);
json pred_to_json(const Pred& p);
ExprPtr expr_from_json(const json& j);
PredPtr pred_from_json(const json& j);

json expr_to_json(const Expr& e) {
    if (const auto* a = std::get_if<Expr::Attr>(&e.node))
        return {{"node", "attr"}, {"ref", col_to_json(a->ref)}};
    if (const auto* l = std::get_if<Expr::Lit>(&e.node))
        return {{"node", "lit"}, {"value", graphiti::to_json(l->v)}};
    if (const auto* c = std::get_if<Expr::Cast>(&e.node))
        return {{"node", "cast"}, {"pred", pred_to_json(*c->pred)}};
    if (const auto* g = std::get_if<Expr::Agg>(&e.node))
        return {{"node", "agg"}, {"fn", agg_tag(g->fn)}, {"arg", expr_to_json(*g->arg)}};
    const auto& ar = std::get<Expr::Arith>(e.node);
    return {{"node", "arith"},
            {"op", graphiti::to_string(ar.op)},
            {"lhs", expr_to_json(*ar.lhs)},
            {"rhs", expr_to_json(*ar.rhs)}};
}

ExprPtr expr_from_json(const json& j) {
    const std::string node = j.at("node").get<std::string>();
    if (node == "attr") {
        ColRef c = col_from_json(j.at("ref"));
        return attr(c.qual, c.key);
    }
    if (node == "lit") return lit(value_from_json(j.at("value")));
    if (node == "cast") return cast(pred_from_json(j.at("pred")));
    if (node == "agg")
        return agg(agg_of(j.at("fn").get<std::string>()), expr_from_json(j.at("arg")));
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
    if (const auto* in = std::get_if<Pred::InVals>(&p.node)) {
        json vals = json::array();
        for (const auto& v : in->values) vals.push_back(graphiti::to_json(v));
        return {{"node", "in"}, {"arg", expr_to_json(*in->arg)}, {"values", vals}};
    }
    if (const auto* in = std::get_if<Pred::InQuery>(&p.node)) {
        json args = json::array();
        for (const auto& a : in->args) args.push_back(expr_to_json(*a));
        return {{"node", "inQuery"}, {"args", args}, {"sub", to_json(*in->sub)}};
    }
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
    if (node == "inQuery") {
        std::vector<ExprPtr> args;
        for (const auto& a : j.at("args")) args.push_back(expr_from_json(a));
        return in_query(std::move(args), query_from_json(j.at("sub")));
    }
    if (node == "and") return pand(pred_from_json(j.at("lhs")), pred_from_json(j.at("rhs")));
    if (node == "or") return por(pred_from_json(j.at("lhs")), pred_from_json(j.at("rhs")));
    if (node == "not") return pnot(pred_from_json(j.at("arg")));
    throw Error("bad predicate node '" + node + "'");
}

json items_to_json(const std::vector<ProjItem>& items) {
    json out = json::array();
    for (const auto& item : items) {
        json x = {{"expr", expr_to_json(*item.expr)}};
        if (item.alias) x["alias"] = *item.alias;
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<ProjItem> items_from_json(const json& j) {
    std::vector<ProjItem> out;
    for (const auto& x : j) {
        ProjItem item;
        item.expr = expr_from_json(x.at("expr"));
        if (x.contains("alias")) item.alias = x.at("alias").get<std::string>();
        out.push_back(std::move(item));
    }
    return out;
}

}  // namespace

json to_json(const Query& q) {
    if (const auto* b = std::get_if<Query::BaseRel>(&q.node))
        return {{"node", "rel"}, {"name", b->name}};
    if (const auto* p = std::get_if<Query::Project>(&q.node))
        return {{"node", "project"}, {"items", items_to_json(p->items)},
                {"from", to_json(*p->from)}};
    if (const auto* s = std::get_if<Query::Select>(&q.node))
        return {{"node", "select"}, {"pred", pred_to_json(*s->pred)},
                {"from", to_json(*s->from)}};
    if (const auto* r = std::get_if<Query::Rename>(&q.node))
        return {{"node", "rename"}, {"name", r->name}, {"from", to_json(*r->from)}};
    if (const auto* u = std::get_if<Query::SetUnion>(&q.node))
        return {{"node", "union"}, {"lhs", to_json(*u->lhs)}, {"rhs", to_json(*u->rhs)}};
    if (const auto* u = std::get_if<Query::BagUnion>(&q.node))
        return {{"node", "unionAll"}, {"lhs", to_json(*u->lhs)}, {"rhs", to_json(*u->rhs)}};
    if (const auto* j = std::get_if<Query::Join>(&q.node)) {
        json out = {{"node", "join"},
                    {"kind", join_tag(j->kind)},
                    {"lhs", to_json(*j->lhs)},
                    {"rhs", to_json(*j->rhs)}};
        if (j->pred) out["pred"] = pred_to_json(*j->pred);
        return out;
    }
    if (const auto* g = std::get_if<Query::GroupBy>(&q.node)) {
        json keys = json::array();
        for (const auto& k : g->keys) keys.push_back(expr_to_json(*k));
        return {{"node", "groupBy"},
                {"from", to_json(*g->from)},
                {"keys", keys},
                {"items", items_to_json(g->items)},
                {"having", pred_to_json(*g->having)}};
    }
    if (const auto* w = std::get_if<Query::With>(&q.node)) {
        json defs = json::array();
        for (const auto& def : w->defs)
            defs.push_back({{"name", def.name}, {"query", to_json(*def.query)}});
        return {{"node", "with"}, {"defs", defs}, {"body", to_json(*w->body)}};
    }
    const auto& o = std::get<Query::OrderBy>(q.node);
    return {{"node", "orderBy"},
            {"from", to_json(*o.from)},
            {"attr", col_to_json(o.attr)},
            {"asc", o.asc}};
}

QueryPtr query_from_json(const json& j) {
    const std::string node = j.at("node").get<std::string>();
    if (node == "rel") return base_rel(j.at("name").get<std::string>());
    if (node == "project")
        return project(items_from_json(j.at("items")), query_from_json(j.at("from")));
    if (node == "select")
        return select(pred_from_json(j.at("pred")), query_from_json(j.at("from")));
    if (node == "rename")
        return rename(j.at("name").get<std::string>(), query_from_json(j.at("from")));
    if (node == "union")
        return set_union(query_from_json(j.at("lhs")), query_from_json(j.at("rhs")));
    if (node == "unionAll")
        return bag_union(query_from_json(j.at("lhs")), query_from_json(j.at("rhs")));
    if (node == "join")
        return join(join_of(j.at("kind").get<std::string>()),
                    j.contains("pred") ? pred_from_json(j.at("pred")) : nullptr,
                    query_from_json(j.at("lhs")), query_from_json(j.at("rhs")));
    if (node == "groupBy") {
        std::vector<ExprPtr> keys;
        for (const auto& k : j.at("keys")) keys.push_back(expr_from_json(k));
        return group_by(query_from_json(j.at("from")), std::move(keys),
                        items_from_json(j.at("items")), pred_from_json(j.at("having")));
    }
    if (node == "with") {
        std::vector<CteDef> defs;
        for (const auto& def : j.at("defs"))
            defs.push_back(
                {def.at("name").get<std::string>(), query_from_json(def.at("query"))});
        return with(std::move(defs), query_from_json(j.at("body")));
    }
    if (node == "orderBy")
        return order_by(query_from_json(j.at("from")), col_from_json(j.at("attr")),
                        j.at("asc").get<bool>());
    throw Error("bad query node '" + node + "'");
}

}  // namespace sql
}  // namespace graphiti
