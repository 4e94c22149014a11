#include "graphiti/cypher_ast.hpp"

#include <algorithm>
#include <set>

namespace graphiti {
namespace cypher {

ExprPtr key(std::optional<std::string> var, std::string k) {
    return std::make_shared<Expr>(Expr{Expr::Key{KeyRef{std::move(var), std::move(k)}}});
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
    return std::make_shared<Pred>(Pred{Pred::In{std::move(e), std::move(vs)}});
}
PredPtr exists(PathPattern pp) {
    return std::make_shared<Pred>(Pred{Pred::Exists{std::move(pp)}});
}
PredPtr pand(PredPtr l, PredPtr r) {
    return std::make_shared<Pred>(Pred{Pred::And{std::move(l), std::move(r)}});
}
PredPtr por(PredPtr l, PredPtr r) {
    return std::make_shared<Pred>(Pred{Pred::Or{std::move(l), std::move(r)}});
}
PredPtr pnot(PredPtr p) { return std::make_shared<Pred>(Pred{Pred::Not{std::move(p)}}); }

ClausePtr match(PathPattern pp, PredPtr pred) {
    return std::make_shared<Clause>(Clause{Clause::Match{std::move(pp), std::move(pred)}});
}
ClausePtr match_after(ClausePtr prev, PathPattern pp, PredPtr pred) {
    return std::make_shared<Clause>(
        Clause{Clause::MatchAfter{std::move(prev), std::move(pp), std::move(pred)}});
}
ClausePtr opt_match(ClausePtr prev, PathPattern pp, PredPtr pred) {
    return std::make_shared<Clause>(
        Clause{Clause::OptMatch{std::move(prev), std::move(pp), std::move(pred)}});
}
ClausePtr with(ClausePtr prev, std::vector<std::string> olds, std::vector<std::string> news) {
    return std::make_shared<Clause>(
        Clause{Clause::With{std::move(prev), std::move(olds), std::move(news)}});
}

QueryPtr ret(ClausePtr c, std::vector<ExprPtr> exprs, std::vector<std::string> names) {
    return std::make_shared<Query>(
        Query{Query::Return{std::move(c), std::move(exprs), std::move(names)}});
}
QueryPtr order_by(QueryPtr r, std::string key, bool asc) {
    return std::make_shared<Query>(Query{Query::OrderBy{std::move(r), std::move(key), asc}});
}
QueryPtr union_q(QueryPtr l, QueryPtr r, bool all) {
    return std::make_shared<Query>(Query{Query::Union{std::move(l), std::move(r), all}});
}

bool has_agg(const Expr& e) {
    if (std::holds_alternative<Expr::Agg>(e.node)) return true;
    if (const auto* a = std::get_if<Expr::Arith>(&e.node))
        return has_agg(*a->lhs) || has_agg(*a->rhs);
    return false;
}

bool has_agg(const std::vector<ExprPtr>& es) {
    return std::any_of(es.begin(), es.end(), [](const ExprPtr& e) { return has_agg(*e); });
}

bool equal(const PathPattern& a, const PathPattern& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i)
        if (a.nodes[i].var != b.nodes[i].var || a.nodes[i].label != b.nodes[i].label)
            return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        if (a.edges[i].var != b.edges[i].var || a.edges[i].label != b.edges[i].label ||
            a.edges[i].dir != b.edges[i].dir)
            return false;
    return true;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* k = std::get_if<Expr::Key>(&a.node)) {
        const auto& k2 = std::get<Expr::Key>(b.node);
        return k->ref.var == k2.ref.var && k->ref.key == k2.ref.key;
    }
    if (const auto* l = std::get_if<Expr::Lit>(&a.node))
        return l->v == std::get<Expr::Lit>(b.node).v;
    if (const auto* c = std::get_if<Expr::Cast>(&a.node))
        return equal(*c->pred, *std::get<Expr::Cast>(b.node).pred);
    if (const auto* g = std::get_if<Expr::Agg>(&a.node)) {
        const auto& g2 = std::get<Expr::Agg>(b.node);
        return g->fn == g2.fn && equal(*g->arg, *g2.arg);
    }
    const auto& x = std::get<Expr::Arith>(a.node);
    const auto& y = std::get<Expr::Arith>(b.node);
    return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
}

bool equal(const Pred& a, const Pred& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* v = std::get_if<Pred::BoolLit>(&a.node))
        return v->v == std::get<Pred::BoolLit>(b.node).v;
    if (const auto* c = std::get_if<Pred::Cmp>(&a.node)) {
        const auto& c2 = std::get<Pred::Cmp>(b.node);
        return c->op == c2.op && equal(*c->lhs, *c2.lhs) && equal(*c->rhs, *c2.rhs);
    }
    if (const auto* n = std::get_if<Pred::IsNull>(&a.node))
        return equal(*n->arg, *std::get<Pred::IsNull>(b.node).arg);
    if (const auto* in = std::get_if<Pred::In>(&a.node)) {
        const auto& in2 = std::get<Pred::In>(b.node);
        return equal(*in->arg, *in2.arg) && in->values == in2.values;
    }
    if (const auto* ex = std::get_if<Pred::Exists>(&a.node))
        return equal(ex->pattern, std::get<Pred::Exists>(b.node).pattern);
    if (const auto* an = std::get_if<Pred::And>(&a.node)) {
        const auto& an2 = std::get<Pred::And>(b.node);
        return equal(*an->lhs, *an2.lhs) && equal(*an->rhs, *an2.rhs);
    }
    if (const auto* o = std::get_if<Pred::Or>(&a.node)) {
        const auto& o2 = std::get<Pred::Or>(b.node);
        return equal(*o->lhs, *o2.lhs) && equal(*o->rhs, *o2.rhs);
    }
    return equal(*std::get<Pred::Not>(a.node).arg, *std::get<Pred::Not>(b.node).arg);
}

bool equal(const Clause& a, const Clause& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* m = std::get_if<Clause::Match>(&a.node)) {
        const auto& m2 = std::get<Clause::Match>(b.node);
        return equal(m->pattern, m2.pattern) && equal(*m->pred, *m2.pred);
    }
    if (const auto* m = std::get_if<Clause::MatchAfter>(&a.node)) {
        const auto& m2 = std::get<Clause::MatchAfter>(b.node);
        return equal(*m->prev, *m2.prev) && equal(m->pattern, m2.pattern) &&
               equal(*m->pred, *m2.pred);
    }
    if (const auto* m = std::get_if<Clause::OptMatch>(&a.node)) {
        const auto& m2 = std::get<Clause::OptMatch>(b.node);
        return equal(*m->prev, *m2.prev) && equal(m->pattern, m2.pattern) &&
               equal(*m->pred, *m2.pred);
    }
    const auto& w = std::get<Clause::With>(a.node);
    const auto& w2 = std::get<Clause::With>(b.node);
    return equal(*w.prev, *w2.prev) && w.old_vars == w2.old_vars && w.new_vars == w2.new_vars;
}

bool equal(const Query& a, const Query& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* r = std::get_if<Query::Return>(&a.node)) {
        const auto& r2 = std::get<Query::Return>(b.node);
        if (!equal(*r->clause, *r2.clause) || r->names != r2.names ||
            r->exprs.size() != r2.exprs.size())
            return false;
        for (std::size_t i = 0; i < r->exprs.size(); ++i)
            if (!equal(*r->exprs[i], *r2.exprs[i])) return false;
        return true;
    }
    if (const auto* o = std::get_if<Query::OrderBy>(&a.node)) {
        const auto& o2 = std::get<Query::OrderBy>(b.node);
        return o->key == o2.key && o->asc == o2.asc && equal(*o->ret, *o2.ret);
    }
    const auto& u = std::get<Query::Union>(a.node);
    const auto& u2 = std::get<Query::Union>(b.node);
    return u.all == u2.all && equal(*u.lhs, *u2.lhs) && equal(*u.rhs, *u2.rhs);
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
    if (const auto* k = std::get_if<Expr::Key>(&e.node))
        return k->ref.var ? *k->ref.var + "." + k->ref.key : k->ref.key;
    if (const auto* l = std::get_if<Expr::Lit>(&e.node)) return graphiti::to_string(l->v);
    if (const auto* c = std::get_if<Expr::Cast>(&e.node))
        return "Cast(" + to_string(*c->pred) + ")";
    if (const auto* g = std::get_if<Expr::Agg>(&e.node))
        return agg_name(g->fn) + "(" + to_string(*g->arg) + ")";
    const auto& a = std::get<Expr::Arith>(e.node);
    return "(" + to_string(*a.lhs) + " " + graphiti::to_string(a.op) + " " + to_string(*a.rhs) +
           ")";
}

std::string to_string(const Pred& p) {
    if (const auto* b = std::get_if<Pred::BoolLit>(&p.node)) return b->v ? "true" : "false";
    if (const auto* c = std::get_if<Pred::Cmp>(&p.node))
        return to_string(*c->lhs) + " " + graphiti::to_string(c->op) + " " + to_string(*c->rhs);
    if (const auto* n = std::get_if<Pred::IsNull>(&p.node))
        return to_string(*n->arg) + " IS NULL";
    if (const auto* in = std::get_if<Pred::In>(&p.node)) {
        std::string s = to_string(*in->arg) + " IN [";
        for (std::size_t i = 0; i < in->values.size(); ++i)
            s += (i ? ", " : "") + graphiti::to_string(in->values[i]);
        return s + "]";
    }
    if (const auto* ex = std::get_if<Pred::Exists>(&p.node))
        return "EXISTS(" + to_string(ex->pattern) + ")";
    if (const auto* a = std::get_if<Pred::And>(&p.node))
        return "(" + to_string(*a->lhs) + " AND " + to_string(*a->rhs) + ")";
    if (const auto* o = std::get_if<Pred::Or>(&p.node))
        return "(" + to_string(*o->lhs) + " OR " + to_string(*o->rhs) + ")";
    return "NOT (" + to_string(*std::get<Pred::Not>(p.node).arg) + ")";
}

std::string to_string(const PathPattern& pp) {
    std::string s = "(" + pp.nodes[0].var + ":" + pp.nodes[0].label + ")";
    for (std::size_t i = 0; i < pp.edges.size(); ++i) {
        const auto& e = pp.edges[i];
        std::string mid = "[" + e.var + ":" + e.label + "]";
        if (e.dir == Dir::Fwd) s += "-" + mid + "->";
        else if (e.dir == Dir::Bwd) s += "<-" + mid + "-";
        else s += "-" + mid + "-";
        s += "(" + pp.nodes[i + 1].var + ":" + pp.nodes[i + 1].label + ")";
    }
    return s;
}

const std::string* VarScope::label_of(const std::string& var) const {
    for (const auto& [v, l] : vars)
        if (v == var) return &l;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

struct Validator {
    const GraphSchema& schema;

    void pattern(const PathPattern& pp, const VarScope* outer) const {
        if (pp.nodes.empty() || pp.nodes.size() != pp.edges.size() + 1)
            throw BindError("malformed path pattern");
        std::set<std::string> seen;
        auto check_var = [&](const std::string& v) {
            if (!seen.insert(v).second)
                throw BindError("pattern variable '" + v + "' repeated within one pattern");
        };
        for (const auto& n : pp.nodes) {
            check_var(n.var);
            if (!schema.find_node(n.label))
                throw BindError("unknown node label '" + n.label + "'");
            if (outer) {
                if (const std::string* l = outer->label_of(n.var); l && *l != n.label)
                    throw BindError("variable '" + n.var + "' rebound with label '" + n.label +
                                    "' (was '" + *l + "')");
            }
        }
        for (std::size_t i = 0; i < pp.edges.size(); ++i) {
            const auto& e = pp.edges[i];
            check_var(e.var);
            const EdgeType* t = schema.find_edge(e.label);
            if (!t) throw BindError("unknown edge label '" + e.label + "'");
            if (outer) {
                if (const std::string* l = outer->label_of(e.var); l && *l != e.label)
                    throw BindError("variable '" + e.var + "' rebound with label '" + e.label +
                                    "' (was '" + *l + "')");
            }
            const std::string& left = pp.nodes[i].label;
            const std::string& right = pp.nodes[i + 1].label;
            bool fwd = t->src_label == left && t->tgt_label == right;
            bool bwd = t->src_label == right && t->tgt_label == left;
            bool ok = (e.dir == Dir::Fwd && fwd) || (e.dir == Dir::Bwd && bwd) ||
                      (e.dir == Dir::Both && (fwd || bwd));
            if (!ok)
                throw BindError("edge '" + e.label + "' cannot connect '" + left + "' and '" +
                                right + "' in the written direction");
        }
    }

    void expr(const Expr& e, const VarScope& scope, bool agg_ok) const {
        if (const auto* k = std::get_if<Expr::Key>(&e.node)) {
            resolve_key(k->ref, scope);
        } else if (const auto* c = std::get_if<Expr::Cast>(&e.node)) {
            pred(*c->pred, scope, agg_ok);
        } else if (const auto* g = std::get_if<Expr::Agg>(&e.node)) {
            if (!agg_ok) throw BindError("aggregate not allowed here");
            expr(*g->arg, scope, false);
        } else if (const auto* a = std::get_if<Expr::Arith>(&e.node)) {
            expr(*a->lhs, scope, agg_ok);
            expr(*a->rhs, scope, agg_ok);
        }
    }

    void resolve_key(const KeyRef& ref, const VarScope& scope) const {
        if (ref.var) {
            const std::string* label = scope.label_of(*ref.var);
            if (!label) throw BindError("unknown variable '" + *ref.var + "'");
            const auto& keys = schema.keys_of(*label);
            if (std::find(keys.begin(), keys.end(), ref.key) == keys.end())
                throw BindError("label '" + *label + "' has no key '" + ref.key + "'");
            return;
        }
        const std::string* owner = schema.key_owner(ref.key);
        if (!owner) throw BindError("unknown property key '" + ref.key + "'");
        int hits = 0;
        for (const auto& [v, l] : scope.vars)
            if (l == *owner) ++hits;
        if (hits == 0) throw BindError("key '" + ref.key + "' is not bound in scope");
        if (hits > 1) throw BindError("key '" + ref.key + "' is ambiguous in scope");
    }

    void pred(const Pred& p, const VarScope& scope, bool agg_ok) const {
        if (const auto* c = std::get_if<Pred::Cmp>(&p.node)) {
            expr(*c->lhs, scope, agg_ok);
            expr(*c->rhs, scope, agg_ok);
        } else if (const auto* n = std::get_if<Pred::IsNull>(&p.node)) {
            expr(*n->arg, scope, agg_ok);
        } else if (const auto* in = std::get_if<Pred::In>(&p.node)) {
            expr(*in->arg, scope, agg_ok);
        } else if (const auto* ex = std::get_if<Pred::Exists>(&p.node)) {
            pattern(ex->pattern, nullptr);
            // Head and last node variables anchor the existential against the
            // enclosing scope; every other variable must be fresh.
            const NodePat& head = ex->pattern.nodes.front();
            const NodePat& last = ex->pattern.nodes.back();
            for (const NodePat* anchor : {&head, &last}) {
                const std::string* l = scope.label_of(anchor->var);
                if (!l)
                    throw BindError("EXISTS anchor variable '" + anchor->var +
                                    "' is not bound in the enclosing scope");
                if (*l != anchor->label)
                    throw BindError("EXISTS anchor variable '" + anchor->var +
                                    "' has label '" + *l + "', pattern says '" + anchor->label +
                                    "'");
            }
            for (const auto& n : ex->pattern.nodes)
                if (n.var != head.var && n.var != last.var && scope.contains(n.var))
                    throw BindError("EXISTS variable '" + n.var + "' shadows an outer variable");
            for (const auto& e : ex->pattern.edges)
                if (scope.contains(e.var))
                    throw BindError("EXISTS variable '" + e.var + "' shadows an outer variable");
        } else if (const auto* a = std::get_if<Pred::And>(&p.node)) {
            pred(*a->lhs, scope, agg_ok);
            pred(*a->rhs, scope, agg_ok);
        } else if (const auto* o = std::get_if<Pred::Or>(&p.node)) {
            pred(*o->lhs, scope, agg_ok);
            pred(*o->rhs, scope, agg_ok);
        } else if (const auto* nt = std::get_if<Pred::Not>(&p.node)) {
            pred(*nt->arg, scope, agg_ok);
        }
    }

    VarScope merge_pattern(const VarScope& prev, const PathPattern& pp) const {
        VarScope out = prev;
        auto add = [&](const std::string& v, const std::string& l) {
            if (const std::string* have = out.label_of(v)) {
                if (*have != l)
                    throw BindError("variable '" + v + "' rebound with a different label");
            } else {
                out.vars.emplace_back(v, l);
            }
        };
        for (std::size_t i = 0; i < pp.nodes.size(); ++i) {
            add(pp.nodes[i].var, pp.nodes[i].label);
            if (i < pp.edges.size()) add(pp.edges[i].var, pp.edges[i].label);
        }
        return out;
    }

    VarScope clause(const Clause& c) const {
        if (const auto* m = std::get_if<Clause::Match>(&c.node)) {
            pattern(m->pattern, nullptr);
            VarScope scope = merge_pattern(VarScope{}, m->pattern);
            pred(*m->pred, scope, false);
            return scope;
        }
        if (const auto* m = std::get_if<Clause::MatchAfter>(&c.node)) {
            VarScope prev = clause(*m->prev);
            pattern(m->pattern, &prev);
            VarScope scope = merge_pattern(prev, m->pattern);
            pred(*m->pred, scope, false);
            return scope;
        }
        if (const auto* m = std::get_if<Clause::OptMatch>(&c.node)) {
            VarScope prev = clause(*m->prev);
            pattern(m->pattern, &prev);
            VarScope scope = merge_pattern(prev, m->pattern);
            pred(*m->pred, scope, false);
            return scope;
        }
        const auto& w = std::get<Clause::With>(c.node);
        VarScope prev = clause(*w.prev);
        if (w.old_vars.size() != w.new_vars.size())
            throw BindError("WITH rename lists differ in length");
        std::set<std::string> olds(w.old_vars.begin(), w.old_vars.end());
        if (olds.size() != w.old_vars.size()) throw BindError("WITH repeats an old variable");
        std::set<std::string> news(w.new_vars.begin(), w.new_vars.end());
        if (news.size() != w.new_vars.size()) throw BindError("WITH repeats a new variable");
        for (const auto& v : w.old_vars)
            if (!prev.contains(v)) throw BindError("WITH renames unbound variable '" + v + "'");
        VarScope out;
        for (const auto& [v, l] : prev.vars) {
            auto it = std::find(w.old_vars.begin(), w.old_vars.end(), v);
            if (it == w.old_vars.end()) {
                if (news.count(v))
                    throw BindError("WITH new variable '" + v + "' collides with '" + v + "'");
                out.vars.emplace_back(v, l);
            } else {
                out.vars.emplace_back(w.new_vars[it - w.old_vars.begin()], l);
            }
        }
        return out;
    }

    std::vector<std::string> query(const Query& q) const {
        if (const auto* r = std::get_if<Query::Return>(&q.node)) {
            if (r->exprs.size() != r->names.size())
                throw BindError("RETURN expression and name lists differ in length");
            if (r->exprs.empty()) throw BindError("RETURN needs at least one expression");
            VarScope scope = clause(*r->clause);
            for (const auto& e : r->exprs) expr(*e, scope, true);
            return r->names;
        }
        if (const auto* o = std::get_if<Query::OrderBy>(&q.node)) {
            if (!std::holds_alternative<Query::Return>(o->ret->node))
                throw BindError("ORDER BY must wrap a plain RETURN query");
            auto names = query(*o->ret);
            if (std::find(names.begin(), names.end(), o->key) == names.end())
                throw BindError("ORDER BY key '" + o->key + "' is not a return column");
            return names;
        }
        const auto& u = std::get<Query::Union>(q.node);
        auto l = query(*u.lhs);
        auto r = query(*u.rhs);
        if (l.size() != r.size()) throw BindError("UNION operands have different column counts");
        return l;
    }
};

}  // namespace

void validate(const GraphSchema& schema, const Query& q) { Validator{schema}.query(q); }

}  // namespace cypher
}  // namespace graphiti
