#include "graphiti/cypher_interp.hpp"

#include <algorithm>
#include <map>

#include "graphiti/aggregate.hpp"

namespace graphiti {
namespace cypher {

const Binding::Entry* Binding::find(const std::string& var) const {
    for (const auto& e : entries)
        if (e.var == var) return &e;
    return nullptr;
}

namespace {

struct Interp {
    const GraphSchema& schema;
    const GraphInstance& g;

    std::map<std::string, std::vector<const GraphInstance::Node*>> nodes_by_label;
    std::map<std::string, std::vector<const GraphInstance::Edge*>> edges_by_label;

    Interp(const GraphSchema& s, const GraphInstance& gi) : schema(s), g(gi) {
        for (const auto& n : g.nodes) nodes_by_label[n.label].push_back(&n);
        for (const auto& e : g.edges) edges_by_label[e.label].push_back(&e);
        for (auto& [l, v] : nodes_by_label)
            std::sort(v.begin(), v.end(),
                      [](const auto* a, const auto* b) { return a->id < b->id; });
        for (auto& [l, v] : edges_by_label)
            std::sort(v.begin(), v.end(),
                      [](const auto* a, const auto* b) { return a->id < b->id; });
    }

    const std::string& label_of(ElemId id) const {
        if (const auto* n = g.find_node(id)) return n->label;
        if (const auto* e = g.find_edge(id)) return e->label;
        throw EvalError("dangling element id " + std::to_string(id));
    }

    Value prop(ElemId id, const std::string& key) const {
        const std::map<std::string, Value>* props = nullptr;
        if (const auto* n = g.find_node(id)) props = &n->props;
        else if (const auto* e = g.find_edge(id)) props = &e->props;
        if (!props) throw EvalError("dangling element id " + std::to_string(id));
        auto it = props->find(key);
        if (it == props->end())
            throw EvalError("element " + std::to_string(id) + " has no key '" + key + "'");
        return it->second;
    }

    Value lookup(const Binding& b, const KeyRef& ref) const {
        const Binding::Entry* entry = nullptr;
        if (ref.var) {
            entry = b.find(*ref.var);
            if (!entry) throw EvalError("unknown variable '" + *ref.var + "'");
        } else {
            const std::string* owner = schema.key_owner(ref.key);
            if (!owner) throw EvalError("unknown property key '" + ref.key + "'");
            for (const auto& e : b.entries) {
                if (e.label != *owner) continue;
                if (entry) throw EvalError("key '" + ref.key + "' is ambiguous");
                entry = &e;
            }
            if (!entry) throw EvalError("key '" + ref.key + "' is not bound");
        }
        if (!entry->elem) return Value::null();
        return prop(*entry->elem, ref.key);
    }

    // ----- pattern matching ---------------------------------------------

    std::vector<Binding> match_pattern(const PathPattern& pp) const {
        std::vector<Binding> out;
        auto nit = nodes_by_label.find(pp.nodes[0].label);
        if (nit == nodes_by_label.end() && !schema.find_node(pp.nodes[0].label))
            throw EvalError("unknown label '" + pp.nodes[0].label + "'");
        if (nit == nodes_by_label.end()) return out;
        for (const auto* n : nit->second) {
            Binding b;
            b.entries.push_back({pp.nodes[0].var, pp.nodes[0].label, n->id});
            extend(pp, 0, n->id, b, out);
        }
        return out;
    }

    void extend(const PathPattern& pp, std::size_t i, ElemId left, Binding& b,
                std::vector<Binding>& out) const {
        if (i == pp.edges.size()) {
            out.push_back(b);
            return;
        }
        const EdgePat& ep = pp.edges[i];
        const NodePat& np = pp.nodes[i + 1];
        auto eit = edges_by_label.find(ep.label);
        if (eit == edges_by_label.end()) return;
        for (const auto* e : eit->second) {
            // Forward orientation: edge runs left-to-right.
            bool fwd = (ep.dir != Dir::Bwd) && e->src == left;
            bool bwd = (ep.dir != Dir::Fwd) && e->tgt == left;
            ElemId right_fwd = e->tgt, right_bwd = e->src;
            std::vector<ElemId> rights;
            if (fwd && label_of(right_fwd) == np.label) rights.push_back(right_fwd);
            if (bwd && label_of(right_bwd) == np.label &&
                !(fwd && right_bwd == right_fwd && label_of(right_fwd) == np.label))
                rights.push_back(right_bwd);
            for (ElemId right : rights) {
                b.entries.push_back({ep.var, ep.label, e->id});
                b.entries.push_back({np.var, np.label, right});
                extend(pp, i + 1, right, b, out);
                b.entries.pop_back();
                b.entries.pop_back();
            }
        }
    }

    // ----- expressions and predicates -----------------------------------

    Value eval_expr(const std::vector<Binding>& gs, const Expr& e) const {
        if (const auto* k = std::get_if<Expr::Key>(&e.node)) {
            if (gs.empty()) throw EvalError("key lookup over empty group");
            return lookup(gs.front(), k->ref);
        }
        if (const auto* l = std::get_if<Expr::Lit>(&e.node)) return l->v;
        if (const auto* c = std::get_if<Expr::Cast>(&e.node)) {
            Tri t = eval_pred(gs, *c->pred);
            if (t == Tri::Null) return Value::null();
            return Value(std::int64_t{t == Tri::True ? 1 : 0});
        }
        if (const auto* a = std::get_if<Expr::Agg>(&e.node)) {
            std::vector<Value> vals;
            vals.reserve(gs.size());
            for (const auto& b : gs) vals.push_back(eval_expr({b}, *a->arg));
            return aggregate(a->fn, vals);
        }
        const auto& ar = std::get<Expr::Arith>(e.node);
        return value_arith(eval_expr(gs, *ar.lhs), ar.op, eval_expr(gs, *ar.rhs));
    }

    Tri eval_pred(const std::vector<Binding>& gs, const Pred& p) const {
        if (const auto* b = std::get_if<Pred::BoolLit>(&p.node)) return tri_of(b->v);
        if (const auto* c = std::get_if<Pred::Cmp>(&p.node))
            return value_cmp_3vl(eval_expr(gs, *c->lhs), eval_expr(gs, *c->rhs), c->op);
        if (const auto* n = std::get_if<Pred::IsNull>(&p.node))
            return tri_of(eval_expr(gs, *n->arg).is_null());
        if (const auto* in = std::get_if<Pred::In>(&p.node)) {
            Value v = eval_expr(gs, *in->arg);
            Tri acc = Tri::False;
            for (const auto& cand : in->values) acc = tri_or(acc, value_eq_3vl(v, cand));
            return acc;
        }
        if (const auto* ex = std::get_if<Pred::Exists>(&p.node)) return eval_exists(gs, *ex);
        if (const auto* a = std::get_if<Pred::And>(&p.node))
            return tri_and(eval_pred(gs, *a->lhs), eval_pred(gs, *a->rhs));
        if (const auto* o = std::get_if<Pred::Or>(&p.node))
            return tri_or(eval_pred(gs, *o->lhs), eval_pred(gs, *o->rhs));
        return tri_not(eval_pred(gs, *std::get<Pred::Not>(p.node).arg));
    }

    // Exists(PP) holds when some match of PP agrees with the current binding
    // on the default keys of PP's head and last node variables.
    Tri eval_exists(const std::vector<Binding>& gs, const Pred::Exists& ex) const {
        if (gs.empty()) throw EvalError("EXISTS over empty group");
        const Binding& outer = gs.front();
        const NodePat& head = ex.pattern.nodes.front();
        const NodePat& last = ex.pattern.nodes.back();
        KeyRef head_ref{head.var, schema.default_key_of(head.label)};
        KeyRef last_ref{last.var, schema.default_key_of(last.label)};
        Value outer_head = lookup(outer, head_ref);
        Value outer_last = lookup(outer, last_ref);
        Tri acc = Tri::False;
        for (const Binding& m : match_pattern(ex.pattern)) {
            Tri both = tri_and(value_eq_3vl(outer_head, lookup(m, head_ref)),
                               value_eq_3vl(outer_last, lookup(m, last_ref)));
            acc = tri_or(acc, both);
            if (acc == Tri::True) break;
        }
        return acc;
    }

    // ----- clauses -------------------------------------------------------

    /// Variable-environment union; shared variables must bind the same
    /// concrete element (a Null-padded variable never merges).
    static std::optional<Binding> try_merge(const Binding& b1, const Binding& b2) {
        Binding out = b1;
        for (const auto& e2 : b2.entries) {
            if (const auto* e1 = b1.find(e2.var)) {
                if (!e1->elem || !e2.elem || *e1->elem != *e2.elem) return std::nullopt;
            } else {
                out.entries.push_back(e2);
            }
        }
        return out;
    }

    /// Null-padded pattern binding, computed from the pattern's static shape.
    static void pad_with_nulls(const PathPattern& pp, Binding& b) {
        auto add = [&](const std::string& var, const std::string& label) {
            if (!b.find(var)) b.entries.push_back({var, label, std::nullopt});
        };
        for (std::size_t i = 0; i < pp.nodes.size(); ++i) {
            add(pp.nodes[i].var, pp.nodes[i].label);
            if (i < pp.edges.size()) add(pp.edges[i].var, pp.edges[i].label);
        }
    }

    std::vector<Binding> eval_clause(const Clause& c) const {
        if (const auto* m = std::get_if<Clause::Match>(&c.node)) {
            std::vector<Binding> out;
            for (auto& b : match_pattern(m->pattern))
                if (is_true(eval_pred({b}, *m->pred))) out.push_back(std::move(b));
            return out;
        }
        if (const auto* m = std::get_if<Clause::MatchAfter>(&c.node)) {
            std::vector<Binding> prior = eval_clause(*m->prev);
            std::vector<Binding> pats = match_pattern(m->pattern);
            std::vector<Binding> out;
            for (const auto& b1 : prior)
                for (const auto& b2 : pats)
                    if (auto merged = try_merge(b1, b2))
                        if (is_true(eval_pred({*merged}, *m->pred)))
                            out.push_back(std::move(*merged));
            return out;
        }
        if (const auto* m = std::get_if<Clause::OptMatch>(&c.node)) {
            std::vector<Binding> prior = eval_clause(*m->prev);
            std::vector<Binding> pats = match_pattern(m->pattern);
            std::vector<Binding> out;
            for (const auto& b1 : prior) {
                std::size_t before = out.size();
                for (const auto& b2 : pats)
                    if (auto merged = try_merge(b1, b2))
                        if (is_true(eval_pred({*merged}, *m->pred)))
                            out.push_back(std::move(*merged));
                if (out.size() == before) {
                    Binding padded = b1;
                    pad_with_nulls(m->pattern, padded);
                    out.push_back(std::move(padded));
                }
            }
            return out;
        }
        const auto& w = std::get<Clause::With>(c.node);
        std::vector<Binding> prior = eval_clause(*w.prev);
        for (auto& b : prior) {
            for (auto& e : b.entries) {
                auto it = std::find(w.old_vars.begin(), w.old_vars.end(), e.var);
                if (it != w.old_vars.end()) e.var = w.new_vars[it - w.old_vars.begin()];
            }
        }
        return prior;
    }

    // ----- queries -------------------------------------------------------

    ResultTable eval_query(const Query& q) const {
        if (const auto* r = std::get_if<Query::Return>(&q.node)) {
            ResultTable t;
            t.columns = r->names;
            std::vector<Binding> bindings = eval_clause(*r->clause);
            if (!has_agg(r->exprs)) {
                for (const auto& b : bindings) {
                    Row row;
                    for (const auto& e : r->exprs) row.push_back(eval_expr({b}, *e));
                    t.rows.push_back(std::move(row));
                }
                return t;
            }
            // Group by the non-aggregate expressions, first-occurrence order.
            std::vector<const Expr*> group_exprs;
            for (const auto& e : r->exprs)
                if (!has_agg(*e)) group_exprs.push_back(e.get());
            std::vector<Row> keys;
            std::vector<std::vector<Binding>> groups;
            for (const auto& b : bindings) {
                Row key;
                for (const auto* ge : group_exprs) key.push_back(eval_expr({b}, *ge));
                std::size_t gi = 0;
                for (; gi < keys.size(); ++gi)
                    if (grouping_eq(keys[gi], key)) break;
                if (gi == keys.size()) {
                    keys.push_back(std::move(key));
                    groups.emplace_back();
                }
                groups[gi].push_back(b);
            }
            for (const auto& group : groups) {
                Row row;
                for (const auto& e : r->exprs) row.push_back(eval_expr(group, *e));
                t.rows.push_back(std::move(row));
            }
            return t;
        }
        if (const auto* o = std::get_if<Query::OrderBy>(&q.node)) {
            ResultTable t = eval_query(*o->ret);
            auto it = std::find(t.columns.begin(), t.columns.end(), o->key);
            if (it == t.columns.end())
                throw EvalError("ORDER BY key '" + o->key + "' is not a column");
            std::size_t idx = it - t.columns.begin();
            std::stable_sort(t.rows.begin(), t.rows.end(), [&](const Row& a, const Row& b) {
                return o->asc ? value_less(a[idx], b[idx]) : value_less(b[idx], a[idx]);
            });
            t.ordered = true;
            return t;
        }
        const auto& u = std::get<Query::Union>(q.node);
        ResultTable l = eval_query(*u.lhs);
        ResultTable r = eval_query(*u.rhs);
        if (l.columns.size() != r.columns.size())
            throw EvalError("UNION operands have different column counts");
        ResultTable t;
        t.columns = l.columns;
        t.rows = l.rows;
        t.rows.insert(t.rows.end(), r.rows.begin(), r.rows.end());
        if (!u.all) {
            std::vector<Row> dedup;
            for (auto& row : t.rows) {
                bool seen = false;
                for (const auto& d : dedup)
                    if (grouping_eq(d, row)) { seen = true; break; }
                if (!seen) dedup.push_back(std::move(row));
            }
            t.rows = std::move(dedup);
        }
        return t;
    }
};

}  // namespace

std::vector<Binding> match_pattern(const GraphSchema& schema, const GraphInstance& g,
                                   const PathPattern& pp) {
    return Interp(schema, g).match_pattern(pp);
}

std::vector<Binding> eval_clause(const GraphSchema& schema, const GraphInstance& g,
                                 const Clause& c) {
    return Interp(schema, g).eval_clause(c);
}

Value eval_expr(const GraphSchema& schema, const GraphInstance& g,
                const std::vector<Binding>& group, const Expr& e) {
    return Interp(schema, g).eval_expr(group, e);
}

Tri eval_pred(const GraphSchema& schema, const GraphInstance& g, const Binding& b,
              const Pred& p) {
    return Interp(schema, g).eval_pred({b}, p);
}

ResultTable eval_cypher(const GraphSchema& schema, const GraphInstance& g, const Query& q) {
    validate(schema, q);
    return Interp(schema, g).eval_query(q);
}

}  // namespace cypher
}  // namespace graphiti
