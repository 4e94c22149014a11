#include "graphiti/transpile.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace graphiti {

namespace cy = cypher;

std::string flat_key(const std::string& var, const std::string& key) { return var + "_" + key; }

std::string TranspileContext::fresh() {
    while (true) {
        std::string name = "T" + std::to_string(counter++);
        if (std::find(used_names.begin(), used_names.end(), name) == used_names.end())
            return name;
    }
}

sql::ExprPtr AttrEnv::resolve(const cypher::KeyRef& ref) const {
    const Entry* hit = nullptr;
    if (ref.var) {
        for (const auto& e : entries)
            if (e.var == *ref.var) { hit = &e; break; }
        if (!hit) throw BindError("unknown variable '" + *ref.var + "'");
    } else {
        const std::string* owner = gs->key_owner(ref.key);
        if (!owner) throw BindError("unknown property key '" + ref.key + "'");
        for (const auto& e : entries) {
            if (e.label != *owner) continue;
            if (hit) throw BindError("key '" + ref.key + "' is ambiguous");
            hit = &e;
        }
        if (!hit) throw BindError("key '" + ref.key + "' is not bound");
    }
    if (hit->flattened) return sql::attr(hit->qual, flat_key(hit->var, ref.key));
    return sql::attr(hit->var, ref.key);
}

namespace {

struct VarCollector {
    std::vector<std::string> names;

    void add(const std::string& v) {
        if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
    }
    void pattern(const cy::PathPattern& pp) {
        for (const auto& n : pp.nodes) add(n.var);
        for (const auto& e : pp.edges) add(e.var);
    }
    void pred(const cy::Pred& p) {
        if (const auto* ex = std::get_if<cy::Pred::Exists>(&p.node)) pattern(ex->pattern);
        else if (const auto* a = std::get_if<cy::Pred::And>(&p.node)) { pred(*a->lhs); pred(*a->rhs); }
        else if (const auto* o = std::get_if<cy::Pred::Or>(&p.node)) { pred(*o->lhs); pred(*o->rhs); }
        else if (const auto* n = std::get_if<cy::Pred::Not>(&p.node)) pred(*n->arg);
        else if (const auto* c = std::get_if<cy::Pred::Cmp>(&p.node)) { expr(*c->lhs); expr(*c->rhs); }
        else if (const auto* i = std::get_if<cy::Pred::IsNull>(&p.node)) expr(*i->arg);
        else if (const auto* i = std::get_if<cy::Pred::In>(&p.node)) expr(*i->arg);
    }
    void expr(const cy::Expr& e) {
        if (const auto* c = std::get_if<cy::Expr::Cast>(&e.node)) pred(*c->pred);
        else if (const auto* g = std::get_if<cy::Expr::Agg>(&e.node)) expr(*g->arg);
        else if (const auto* a = std::get_if<cy::Expr::Arith>(&e.node)) { expr(*a->lhs); expr(*a->rhs); }
    }
    void clause(const cy::Clause& c) {
        if (const auto* m = std::get_if<cy::Clause::Match>(&c.node)) {
            pattern(m->pattern);
            pred(*m->pred);
        } else if (const auto* m = std::get_if<cy::Clause::MatchAfter>(&c.node)) {
            clause(*m->prev);
            pattern(m->pattern);
            pred(*m->pred);
        } else if (const auto* m = std::get_if<cy::Clause::OptMatch>(&c.node)) {
            clause(*m->prev);
            pattern(m->pattern);
            pred(*m->pred);
        } else {
            const auto& w = std::get<cy::Clause::With>(c.node);
            clause(*w.prev);
            for (const auto& v : w.new_vars) add(v);
        }
    }
    void query(const cy::Query& q) {
        if (const auto* r = std::get_if<cy::Query::Return>(&q.node)) {
            clause(*r->clause);
            for (const auto& e : r->exprs) expr(*e);
        } else if (const auto* o = std::get_if<cy::Query::OrderBy>(&q.node)) {
            query(*o->ret);
        } else {
            const auto& u = std::get<cy::Query::Union>(q.node);
            query(*u.lhs);
            query(*u.rhs);
        }
    }
};

/// SQL aliases must be plain identifiers; Cypher return names may be
/// arbitrary text such as "Count(*)".
std::string sanitize_alias(const std::string& name) {
    std::string out;
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_');
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "c" + out;
    static const char* reserved[] = {"select", "distinct", "from",  "where", "group", "by",
                                     "having", "order",    "asc",   "desc",  "union", "all",
                                     "join",   "left",     "right", "full",  "outer", "cross",
                                     "on",     "as",       "with",  "in",    "is",    "not",
                                     "null",   "and",      "or",    "true",  "false", "cast"};
    std::string low;
    for (char c : out) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (const char* r : reserved)
        if (low == r) return out + "_";
    return out;
}

AttrEnv raw_env(const TranspileContext& ctx, const VarSet& vars) {
    AttrEnv env;
    env.gs = &ctx.gs;
    for (const auto& [v, l] : vars) env.entries.push_back({v, l, v, false});
    return env;
}

AttrEnv cte_env(const TranspileContext& ctx, const std::string& cte, const VarSet& vars) {
    AttrEnv env;
    env.gs = &ctx.gs;
    for (const auto& [v, l] : vars) env.entries.push_back({v, l, cte, true});
    return env;
}

struct StepPreds {
    sql::PredPtr first;   // joins the left node with the edge relation
    sql::PredPtr second;  // joins the (left ⋈ edge) pair with the rest
};

/// Direction-resolved join predicates for one pattern step: forward edges use
/// SRC = left.pk and TGT = right.pk, backward edges swap them, and undirected
/// edges whose type admits both orientations get the disjunction of both on
/// the second join. Validation guarantees at least one valid orientation.
StepPreds step_preds(const TranspileContext& ctx, const cy::NodePat& left,
                     const cy::EdgePat& ep, const cy::NodePat& right) {
    const EdgeType* t = ctx.gs.find_edge(ep.label);
    const std::string& left_pk = ctx.sdt.pk_of(left.label);
    const std::string& right_pk = ctx.sdt.pk_of(right.label);
    auto src_eq = [&](const cy::NodePat& n, const std::string& pk) {
        return sql::cmp(sql::attr(ep.var, kSrcAttr), CmpOp::Eq, sql::attr(n.var, pk));
    };
    auto tgt_eq = [&](const cy::NodePat& n, const std::string& pk) {
        return sql::cmp(sql::attr(ep.var, kTgtAttr), CmpOp::Eq, sql::attr(n.var, pk));
    };
    bool fwd_ok = t->src_label == left.label && t->tgt_label == right.label;
    bool bwd_ok = t->src_label == right.label && t->tgt_label == left.label;
    switch (ep.dir) {
        case cy::Dir::Fwd: return {src_eq(left, left_pk), tgt_eq(right, right_pk)};
        case cy::Dir::Bwd: return {tgt_eq(left, left_pk), src_eq(right, right_pk)};
        case cy::Dir::Both:
            if (fwd_ok && bwd_ok)
                return {sql::btrue(),
                        sql::por(sql::pand(src_eq(left, left_pk), tgt_eq(right, right_pk)),
                                 sql::pand(tgt_eq(left, left_pk), src_eq(right, right_pk)))};
            if (fwd_ok) return {src_eq(left, left_pk), tgt_eq(right, right_pk)};
            return {tgt_eq(left, left_pk), src_eq(right, right_pk)};
    }
    return {src_eq(left, left_pk), tgt_eq(right, right_pk)};
}

sql::QueryPtr pattern_rel(const TranspileContext& ctx, const cy::NodePat& n) {
    return sql::rename(n.var, sql::base_rel(ctx.sdt.relation_of(n.label)));
}

sql::QueryPtr pattern_from(TranspileContext& ctx, const cy::PathPattern& pp, std::size_t i) {
    if (i + 1 == pp.nodes.size()) return pattern_rel(ctx, pp.nodes[i]);
    const cy::EdgePat& ep = pp.edges[i];
    StepPreds preds = step_preds(ctx, pp.nodes[i], ep, pp.nodes[i + 1]);
    sql::QueryPtr edge_rel =
        sql::rename(ep.var, sql::base_rel(ctx.sdt.relation_of(ep.label)));
    sql::QueryPtr left =
        sql::join(sql::JoinKind::Inner, preds.first, pattern_rel(ctx, pp.nodes[i]), edge_rel);
    return sql::join(sql::JoinKind::Inner, preds.second, left, pattern_from(ctx, pp, i + 1));
}

}  // namespace

std::pair<VarSet, sql::QueryPtr> transpile_pattern(TranspileContext& ctx,
                                                   const cy::PathPattern& pp) {
    VarSet vars;
    for (std::size_t i = 0; i < pp.nodes.size(); ++i) {
        vars.emplace_back(pp.nodes[i].var, pp.nodes[i].label);
        if (i < pp.edges.size()) vars.emplace_back(pp.edges[i].var, pp.edges[i].label);
    }
    return {vars, pattern_from(ctx, pp, 0)};
}

namespace {

/// Binds a query as a fresh CTE projecting every variable's attributes to
/// flattened var_key columns. `from_env` locates each variable's columns in
/// the query being wrapped.
std::string bind_cte(TranspileContext& ctx, const VarSet& vars, const AttrEnv& from_env,
                     sql::QueryPtr q) {
    std::vector<sql::ProjItem> items;
    for (const auto& [v, l] : vars)
        for (const auto& k : ctx.gs.keys_of(l))
            items.push_back({from_env.resolve(cy::KeyRef{v, k}), flat_key(v, k)});
    std::string name = ctx.fresh();
    ctx.defs.push_back({name, sql::project(std::move(items), std::move(q))});
    return name;
}

std::pair<VarSet, std::string> clause_join(TranspileContext& ctx, const cy::Clause& prev,
                                           const cy::PathPattern& pp, const cy::Pred& pred,
                                           bool optional) {
    auto [vars1, t1] = transpile_clause(ctx, prev);
    auto [vars2, raw2] = transpile_pattern(ctx, pp);
    std::string t2 = bind_cte(ctx, vars2, raw_env(ctx, vars2), raw2);

    // Predicate environment: shared variables read the prior clause's copy.
    AttrEnv env;
    env.gs = &ctx.gs;
    std::set<std::string> in_prev;
    for (const auto& [v, l] : vars1) {
        env.entries.push_back({v, l, t1, true});
        in_prev.insert(v);
    }
    for (const auto& [v, l] : vars2)
        if (!in_prev.count(v)) env.entries.push_back({v, l, t2, true});

    sql::PredPtr on = transpile_pred(ctx, env, pred);
    for (const auto& [v, l] : vars1) {
        bool shared = false;
        for (const auto& [v2, l2] : vars2)
            if (v2 == v) { shared = true; break; }
        if (!shared) continue;
        const std::string& pk = ctx.sdt.pk_of(l);
        on = sql::pand(on, sql::cmp(sql::attr(t1, flat_key(v, pk)), CmpOp::Eq,
                                    sql::attr(t2, flat_key(v, pk))));
    }
    sql::QueryPtr joined =
        sql::join(optional ? sql::JoinKind::Left : sql::JoinKind::Inner, on,
                  sql::base_rel(t1), sql::base_rel(t2));

    VarSet vars = vars1;
    for (const auto& [v, l] : vars2)
        if (!in_prev.count(v)) vars.emplace_back(v, l);

    // Output projection: shared variables come from the prior clause's side.
    std::vector<sql::ProjItem> items;
    for (const auto& [v, l] : vars) {
        const std::string& qual = in_prev.count(v) ? t1 : t2;
        for (const auto& k : ctx.gs.keys_of(l))
            items.push_back({sql::attr(qual, flat_key(v, k)), flat_key(v, k)});
    }
    std::string name = ctx.fresh();
    ctx.defs.push_back({name, sql::project(std::move(items), joined)});
    return {vars, name};
}

}  // namespace

std::pair<VarSet, std::string> transpile_clause(TranspileContext& ctx, const cy::Clause& c) {
    if (const auto* m = std::get_if<cy::Clause::Match>(&c.node)) {
        auto [vars, raw] = transpile_pattern(ctx, m->pattern);
        sql::PredPtr where = transpile_pred(ctx, raw_env(ctx, vars), *m->pred);
        std::string name = bind_cte(ctx, vars, raw_env(ctx, vars), sql::select(where, raw));
        return {vars, name};
    }
    if (const auto* m = std::get_if<cy::Clause::MatchAfter>(&c.node))
        return clause_join(ctx, *m->prev, m->pattern, *m->pred, /*optional=*/false);
    if (const auto* m = std::get_if<cy::Clause::OptMatch>(&c.node))
        return clause_join(ctx, *m->prev, m->pattern, *m->pred, /*optional=*/true);

    const auto& w = std::get<cy::Clause::With>(c.node);
    auto [vars1, t1] = transpile_clause(ctx, *w.prev);
    auto renamed = [&](const std::string& v) -> const std::string& {
        auto it = std::find(w.old_vars.begin(), w.old_vars.end(), v);
        return it == w.old_vars.end() ? v : w.new_vars[it - w.old_vars.begin()];
    };
    VarSet vars;
    std::vector<sql::ProjItem> items;
    for (const auto& [v, l] : vars1) {
        const std::string& nv = renamed(v);
        vars.emplace_back(nv, l);
        for (const auto& k : ctx.gs.keys_of(l))
            items.push_back({sql::attr(t1, flat_key(v, k)), flat_key(nv, k)});
    }
    std::string name = ctx.fresh();
    ctx.defs.push_back({name, sql::project(std::move(items), sql::base_rel(t1))});
    return {vars, name};
}

sql::ExprPtr transpile_expr(TranspileContext& ctx, const AttrEnv& env, const cy::Expr& e) {
    if (const auto* k = std::get_if<cy::Expr::Key>(&e.node)) return env.resolve(k->ref);
    if (const auto* l = std::get_if<cy::Expr::Lit>(&e.node)) return sql::lit(l->v);
    if (const auto* c = std::get_if<cy::Expr::Cast>(&e.node))
        return sql::cast(transpile_pred(ctx, env, *c->pred));
    if (const auto* g = std::get_if<cy::Expr::Agg>(&e.node))
        return sql::agg(g->fn, transpile_expr(ctx, env, *g->arg));
    const auto& a = std::get<cy::Expr::Arith>(e.node);
    return sql::arith(transpile_expr(ctx, env, *a.lhs), a.op, transpile_expr(ctx, env, *a.rhs));
}

sql::PredPtr transpile_pred(TranspileContext& ctx, const AttrEnv& env, const cy::Pred& p) {
    if (const auto* b = std::get_if<cy::Pred::BoolLit>(&p.node))
        return b->v ? sql::btrue() : sql::bfalse();
    if (const auto* c = std::get_if<cy::Pred::Cmp>(&p.node))
        return sql::cmp(transpile_expr(ctx, env, *c->lhs), c->op,
                        transpile_expr(ctx, env, *c->rhs));
    if (const auto* n = std::get_if<cy::Pred::IsNull>(&p.node))
        return sql::is_null(transpile_expr(ctx, env, *n->arg));
    if (const auto* in = std::get_if<cy::Pred::In>(&p.node))
        return sql::in_values(transpile_expr(ctx, env, *in->arg), in->values);
    if (const auto* ex = std::get_if<cy::Pred::Exists>(&p.node)) {
        // The head and last node variables anchor the subquery: the enclosing
        // row supplies their primary keys, the pattern projects its own.
        auto [vars, raw] = transpile_pattern(ctx, ex->pattern);
        const cy::NodePat& head = ex->pattern.nodes.front();
        const cy::NodePat& last = ex->pattern.nodes.back();
        const std::string& head_pk = ctx.sdt.pk_of(head.label);
        const std::string& last_pk = ctx.sdt.pk_of(last.label);
        std::vector<sql::ProjItem> proj{{sql::attr(head.var, head_pk), std::nullopt},
                                        {sql::attr(last.var, last_pk), std::nullopt}};
        std::vector<sql::ExprPtr> outer{env.resolve(cy::KeyRef{head.var, head_pk}),
                                        env.resolve(cy::KeyRef{last.var, last_pk})};
        return sql::in_query(std::move(outer), sql::project(std::move(proj), raw));
    }
    if (const auto* a = std::get_if<cy::Pred::And>(&p.node))
        return sql::pand(transpile_pred(ctx, env, *a->lhs), transpile_pred(ctx, env, *a->rhs));
    if (const auto* o = std::get_if<cy::Pred::Or>(&p.node))
        return sql::por(transpile_pred(ctx, env, *o->lhs), transpile_pred(ctx, env, *o->rhs));
    return sql::pnot(transpile_pred(ctx, env, *std::get<cy::Pred::Not>(p.node).arg));
}

namespace {

sql::QueryPtr transpile_rec(TranspileContext& ctx, const cy::Query& q) {
    if (const auto* r = std::get_if<cy::Query::Return>(&q.node)) {
        std::vector<sql::CteDef> saved = std::move(ctx.defs);
        ctx.defs.clear();
        auto [vars, t] = transpile_clause(ctx, *r->clause);
        AttrEnv env = cte_env(ctx, t, vars);

        std::vector<sql::ExprPtr> exprs;
        for (const auto& e : r->exprs) exprs.push_back(transpile_expr(ctx, env, *e));
        std::vector<sql::ProjItem> items;
        for (std::size_t i = 0; i < exprs.size(); ++i)
            items.push_back({exprs[i], sanitize_alias(r->names[i])});

        sql::QueryPtr body;
        if (cy::has_agg(r->exprs)) {
            std::vector<sql::ExprPtr> keys;
            for (std::size_t i = 0; i < exprs.size(); ++i)
                if (!cy::has_agg(*r->exprs[i])) keys.push_back(exprs[i]);
            body = sql::group_by(sql::base_rel(t), std::move(keys), std::move(items),
                                 sql::btrue());
        } else {
            body = sql::project(std::move(items), sql::base_rel(t));
        }
        sql::QueryPtr out = sql::with(std::move(ctx.defs), body);
        ctx.defs = std::move(saved);
        return out;
    }
    if (const auto* o = std::get_if<cy::Query::OrderBy>(&q.node)) {
        sql::QueryPtr inner = transpile_rec(ctx, *o->ret);
        return sql::order_by(inner, sql::ColRef{std::nullopt, sanitize_alias(o->key)}, o->asc);
    }
    const auto& u = std::get<cy::Query::Union>(q.node);
    sql::QueryPtr l = transpile_rec(ctx, *u.lhs);
    sql::QueryPtr r = transpile_rec(ctx, *u.rhs);
    return u.all ? sql::bag_union(l, r) : sql::set_union(l, r);
}

}  // namespace

sql::QueryPtr transpile_query(const SdtResult& sdt, const GraphSchema& gs,
                              const cy::Query& q) {
    cy::validate(gs, q);
    TranspileContext ctx{sdt, gs, {}, 1, {}};
    VarCollector vc;
    vc.query(q);
    ctx.used_names = std::move(vc.names);
    return transpile_rec(ctx, q);
}

}  // namespace graphiti
