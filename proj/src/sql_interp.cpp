#include "graphiti/sql_interp.hpp"

#include <algorithm>
#include <map>

#include "graphiti/aggregate.hpp"

namespace graphiti {
namespace sql {

namespace {

std::size_t resolve(const std::vector<ColRef>& cols, const ColRef& ref) {
    std::size_t found = cols.size();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        bool hit = ref.qual ? (cols[i].qual == ref.qual && cols[i].key == ref.key)
                            : (cols[i].key == ref.key);
        if (!hit) continue;
        if (found != cols.size())
            throw BindError("ambiguous attribute '" + ref.str() + "'");
        found = i;
    }
    if (found == cols.size()) throw BindError("unresolved attribute '" + ref.str() + "'");
    return found;
}

ColRef output_col(const ProjItem& item) {
    if (item.alias) return ColRef{std::nullopt, *item.alias};
    if (const auto* a = std::get_if<Expr::Attr>(&item.expr->node)) return a->ref;
    return ColRef{std::nullopt, to_string(*item.expr)};
}

// ---------------------------------------------------------------------------
// Binding check
// ---------------------------------------------------------------------------

struct Binder {
    const RelSchema& schema;
    std::vector<std::pair<std::string, std::vector<ColRef>>> ctes;

    std::vector<ColRef> query(const Query& q) {
        if (const auto* b = std::get_if<Query::BaseRel>(&q.node)) {
            for (auto it = ctes.rbegin(); it != ctes.rend(); ++it) {
                if (it->first != b->name) continue;
                std::vector<ColRef> cols;
                for (const auto& c : it->second) cols.push_back({b->name, c.key});
                return cols;
            }
            const Relation& r = schema.require(b->name);
            std::vector<ColRef> cols;
            for (const auto& a : r.attrs) cols.push_back({r.name, a});
            return cols;
        }
        if (const auto* p = std::get_if<Query::Project>(&q.node)) {
            auto in = query(*p->from);
            std::vector<ColRef> out;
            for (const auto& item : p->items) {
                expr(*item.expr, in, false);
                out.push_back(output_col(item));
            }
            return out;
        }
        if (const auto* s = std::get_if<Query::Select>(&q.node)) {
            auto in = query(*s->from);
            pred(*s->pred, in, false);
            return in;
        }
        if (const auto* r = std::get_if<Query::Rename>(&q.node)) {
            auto in = query(*r->from);
            for (auto& c : in) c.qual = r->name;
            return in;
        }
        if (const auto* u = std::get_if<Query::SetUnion>(&q.node)) {
            auto l = query(*u->lhs);
            auto r = query(*u->rhs);
            if (l.size() != r.size())
                throw BindError("UNION operands have different column counts");
            return l;
        }
        if (const auto* u = std::get_if<Query::BagUnion>(&q.node)) {
            auto l = query(*u->lhs);
            auto r = query(*u->rhs);
            if (l.size() != r.size())
                throw BindError("UNION ALL operands have different column counts");
            return l;
        }
        if (const auto* j = std::get_if<Query::Join>(&q.node)) {
            auto l = query(*j->lhs);
            auto r = query(*j->rhs);
            l.insert(l.end(), r.begin(), r.end());
            if (j->kind == JoinKind::Cross) {
                if (j->pred) throw BindError("cross join cannot carry a predicate");
            } else {
                if (!j->pred) throw BindError("join requires an ON predicate");
                pred(*j->pred, l, false);
            }
            return l;
        }
        if (const auto* g = std::get_if<Query::GroupBy>(&q.node)) {
            auto in = query(*g->from);
            for (const auto& k : g->keys) expr(*k, in, false);
            for (const auto& item : g->items) grouped_expr(*item.expr, in, *g, false);
            grouped_pred(*g->having, in, *g);
            std::vector<ColRef> out;
            for (const auto& item : g->items) out.push_back(output_col(item));
            return out;
        }
        if (const auto* w = std::get_if<Query::With>(&q.node)) {
            std::size_t depth = ctes.size();
            for (const auto& def : w->defs) ctes.emplace_back(def.name, query(*def.query));
            auto out = query(*w->body);
            ctes.resize(depth);
            return out;
        }
        const auto& o = std::get<Query::OrderBy>(q.node);
        auto in = query(*o.from);
        resolve(in, o.attr);
        return in;
    }

    void expr(const Expr& e, const std::vector<ColRef>& cols, bool agg_ok) {
        if (const auto* a = std::get_if<Expr::Attr>(&e.node)) {
            resolve(cols, a->ref);
        } else if (const auto* c = std::get_if<Expr::Cast>(&e.node)) {
            pred(*c->pred, cols, agg_ok);
        } else if (const auto* g = std::get_if<Expr::Agg>(&e.node)) {
            if (!agg_ok) throw BindError("aggregate allowed only inside GROUP BY");
            expr(*g->arg, cols, false);
        } else if (const auto* ar = std::get_if<Expr::Arith>(&e.node)) {
            expr(*ar->lhs, cols, agg_ok);
            expr(*ar->rhs, cols, agg_ok);
        }
    }

    void pred(const Pred& p, const std::vector<ColRef>& cols, bool agg_ok) {
        if (const auto* c = std::get_if<Pred::Cmp>(&p.node)) {
            expr(*c->lhs, cols, agg_ok);
            expr(*c->rhs, cols, agg_ok);
        } else if (const auto* n = std::get_if<Pred::IsNull>(&p.node)) {
            expr(*n->arg, cols, agg_ok);
        } else if (const auto* in = std::get_if<Pred::InVals>(&p.node)) {
            expr(*in->arg, cols, agg_ok);
        } else if (const auto* in = std::get_if<Pred::InQuery>(&p.node)) {
            for (const auto& a : in->args) expr(*a, cols, agg_ok);
            auto sub = query(*in->sub);
            if (sub.size() != in->args.size())
                throw BindError("IN subquery arity mismatch: " +
                                std::to_string(in->args.size()) + " vs " +
                                std::to_string(sub.size()));
        } else if (const auto* a = std::get_if<Pred::And>(&p.node)) {
            pred(*a->lhs, cols, agg_ok);
            pred(*a->rhs, cols, agg_ok);
        } else if (const auto* o = std::get_if<Pred::Or>(&p.node)) {
            pred(*o->lhs, cols, agg_ok);
            pred(*o->rhs, cols, agg_ok);
        } else if (const auto* nt = std::get_if<Pred::Not>(&p.node)) {
            pred(*nt->arg, cols, agg_ok);
        }
    }

    // Non-aggregated attributes in grouped output must name a group key.
    void grouped_expr(const Expr& e, const std::vector<ColRef>& cols, const Query::GroupBy& g,
                      bool inside_agg) {
        for (const auto& k : g.keys)
            if (equal(e, *k)) return;
        if (const auto* a = std::get_if<Expr::Attr>(&e.node)) {
            std::size_t idx = resolve(cols, a->ref);
            if (inside_agg) return;
            for (const auto& k : g.keys)
                if (const auto* ka = std::get_if<Expr::Attr>(&k->node))
                    if (resolve(cols, ka->ref) == idx) return;
            throw BindError("attribute '" + a->ref.str() + "' is neither grouped nor aggregated");
        } else if (const auto* c = std::get_if<Expr::Cast>(&e.node)) {
            grouped_pred_inner(*c->pred, cols, g, inside_agg);
        } else if (const auto* ag = std::get_if<Expr::Agg>(&e.node)) {
            if (inside_agg) throw BindError("nested aggregate");
            grouped_expr(*ag->arg, cols, g, true);
        } else if (const auto* ar = std::get_if<Expr::Arith>(&e.node)) {
            grouped_expr(*ar->lhs, cols, g, inside_agg);
            grouped_expr(*ar->rhs, cols, g, inside_agg);
        }
    }

    void grouped_pred(const Pred& p, const std::vector<ColRef>& cols, const Query::GroupBy& g) {
        grouped_pred_inner(p, cols, g, false);
    }

    void grouped_pred_inner(const Pred& p, const std::vector<ColRef>& cols,
                            const Query::GroupBy& g, bool inside_agg) {
        if (const auto* c = std::get_if<Pred::Cmp>(&p.node)) {
            grouped_expr(*c->lhs, cols, g, inside_agg);
            grouped_expr(*c->rhs, cols, g, inside_agg);
        } else if (const auto* n = std::get_if<Pred::IsNull>(&p.node)) {
            grouped_expr(*n->arg, cols, g, inside_agg);
        } else if (const auto* in = std::get_if<Pred::InVals>(&p.node)) {
            grouped_expr(*in->arg, cols, g, inside_agg);
        } else if (const auto* in = std::get_if<Pred::InQuery>(&p.node)) {
            for (const auto& a : in->args) grouped_expr(*a, cols, g, inside_agg);
            auto sub = query(*in->sub);
            if (sub.size() != in->args.size()) throw BindError("IN subquery arity mismatch");
        } else if (const auto* a = std::get_if<Pred::And>(&p.node)) {
            grouped_pred_inner(*a->lhs, cols, g, inside_agg);
            grouped_pred_inner(*a->rhs, cols, g, inside_agg);
        } else if (const auto* o = std::get_if<Pred::Or>(&p.node)) {
            grouped_pred_inner(*o->lhs, cols, g, inside_agg);
            grouped_pred_inner(*o->rhs, cols, g, inside_agg);
        } else if (const auto* nt = std::get_if<Pred::Not>(&p.node)) {
            grouped_pred_inner(*nt->arg, cols, g, inside_agg);
        }
    }
};

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct EvalTable {
    std::vector<ColRef> cols;
    std::vector<Row> rows;
    bool ordered = false;
};

using Group = std::vector<const Row*>;

struct Evaluator {
    const RelSchema& schema;
    const RelInstance& d;
    std::vector<std::pair<std::string, EvalTable>> ctes;
    // Uncorrelated IN subqueries are memoised per CTE scope.
    std::map<const Query*, EvalTable> subquery_memo;

    EvalTable eval(const Query& q) {
        if (const auto* b = std::get_if<Query::BaseRel>(&q.node)) return eval_base(b->name);
        if (const auto* p = std::get_if<Query::Project>(&q.node)) {
            EvalTable in = eval(*p->from);
            EvalTable out;
            for (const auto& item : p->items) out.cols.push_back(output_col(item));
            for (const auto& row : in.rows) {
                Row r;
                Group g{&row};
                for (const auto& item : p->items)
                    r.push_back(eval_expr(in.cols, g, *item.expr));
                out.rows.push_back(std::move(r));
            }
            return out;
        }
        if (const auto* s = std::get_if<Query::Select>(&q.node)) {
            EvalTable in = eval(*s->from);
            EvalTable out;
            out.cols = in.cols;
            for (auto& row : in.rows) {
                Group g{&row};
                if (eval_pred(in.cols, g, *s->pred) == Tri::True)
                    out.rows.push_back(std::move(row));
            }
            return out;
        }
        if (const auto* r = std::get_if<Query::Rename>(&q.node)) {
            EvalTable in = eval(*r->from);
            for (auto& c : in.cols) c.qual = r->name;
            in.ordered = false;
            return in;
        }
        if (const auto* u = std::get_if<Query::SetUnion>(&q.node)) {
            EvalTable out = eval_bag_union(*u->lhs, *u->rhs);
            std::vector<Row> dedup;
            for (auto& row : out.rows) {
                bool seen = false;
                for (const auto& dr : dedup)
                    if (grouping_eq(dr, row)) { seen = true; break; }
                if (!seen) dedup.push_back(std::move(row));
            }
            out.rows = std::move(dedup);
            return out;
        }
        if (const auto* u = std::get_if<Query::BagUnion>(&q.node))
            return eval_bag_union(*u->lhs, *u->rhs);
        if (const auto* j = std::get_if<Query::Join>(&q.node)) return eval_join(*j);
        if (const auto* g = std::get_if<Query::GroupBy>(&q.node)) return eval_group_by(*g);
        if (const auto* w = std::get_if<Query::With>(&q.node)) {
            std::size_t depth = ctes.size();
            for (const auto& def : w->defs) {
                EvalTable t = eval(*def.query);
                subquery_memo.clear();
                ctes.emplace_back(def.name, std::move(t));
            }
            EvalTable out = eval(*w->body);
            ctes.resize(depth);
            subquery_memo.clear();
            return out;
        }
        const auto& o = std::get<Query::OrderBy>(q.node);
        EvalTable in = eval(*o.from);
        std::size_t idx = resolve(in.cols, o.attr);
        std::stable_sort(in.rows.begin(), in.rows.end(), [&](const Row& a, const Row& b) {
            return o.asc ? value_less(a[idx], b[idx]) : value_less(b[idx], a[idx]);
        });
        in.ordered = true;
        return in;
    }

    EvalTable eval_base(const std::string& name) {
        for (auto it = ctes.rbegin(); it != ctes.rend(); ++it) {
            if (it->first != name) continue;
            EvalTable t = it->second;
            for (auto& c : t.cols) c = ColRef{name, c.key};
            t.ordered = false;
            return t;
        }
        const Relation& r = schema.require(name);
        EvalTable t;
        for (const auto& a : r.attrs) t.cols.push_back({name, a});
        if (const auto* table = d.find(name)) {
            if (table->attrs != r.attrs)
                throw EvalError("instance table '" + name + "' does not match the schema");
            t.rows = table->rows;
        }
        return t;
    }

    EvalTable eval_bag_union(const Query& lq, const Query& rq) {
        EvalTable l = eval(lq);
        EvalTable r = eval(rq);
        if (l.cols.size() != r.cols.size())
            throw EvalError("UNION operands have different column counts");
        EvalTable out;
        out.cols = l.cols;
        out.rows = std::move(l.rows);
        out.rows.insert(out.rows.end(), r.rows.begin(), r.rows.end());
        return out;
    }

    EvalTable eval_join(const Query::Join& j) {
        EvalTable l = eval(*j.lhs);
        EvalTable r = eval(*j.rhs);
        EvalTable out;
        out.cols = l.cols;
        out.cols.insert(out.cols.end(), r.cols.begin(), r.cols.end());

        auto combined = [&](const Row& a, const Row& b) {
            Row row = a;
            row.insert(row.end(), b.begin(), b.end());
            return row;
        };
        auto pred_true = [&](const Row& row) {
            Group g{&row};
            return eval_pred(out.cols, g, *j.pred) == Tri::True;
        };

        switch (j.kind) {
            case JoinKind::Cross:
                for (const auto& a : l.rows)
                    for (const auto& b : r.rows) out.rows.push_back(combined(a, b));
                break;
            case JoinKind::Inner:
                for (const auto& a : l.rows)
                    for (const auto& b : r.rows) {
                        Row row = combined(a, b);
                        if (pred_true(row)) out.rows.push_back(std::move(row));
                    }
                break;
            case JoinKind::Left:
                for (const auto& a : l.rows) {
                    bool any = false;
                    for (const auto& b : r.rows) {
                        Row row = combined(a, b);
                        if (pred_true(row)) {
                            out.rows.push_back(std::move(row));
                            any = true;
                        }
                    }
                    if (!any) out.rows.push_back(combined(a, Row(r.cols.size())));
                }
                break;
            case JoinKind::Right:
                for (const auto& b : r.rows) {
                    bool any = false;
                    for (const auto& a : l.rows) {
                        Row row = combined(a, b);
                        if (pred_true(row)) {
                            out.rows.push_back(std::move(row));
                            any = true;
                        }
                    }
                    if (!any) out.rows.push_back(combined(Row(l.cols.size()), b));
                }
                break;
            case JoinKind::Full: {
                std::vector<bool> rmatched(r.rows.size(), false);
                for (const auto& a : l.rows) {
                    bool any = false;
                    for (std::size_t bi = 0; bi < r.rows.size(); ++bi) {
                        Row row = combined(a, r.rows[bi]);
                        if (pred_true(row)) {
                            out.rows.push_back(std::move(row));
                            any = true;
                            rmatched[bi] = true;
                        }
                    }
                    if (!any) out.rows.push_back(combined(a, Row(r.cols.size())));
                }
                for (std::size_t bi = 0; bi < r.rows.size(); ++bi)
                    if (!rmatched[bi])
                        out.rows.push_back(combined(Row(l.cols.size()), r.rows[bi]));
                break;
            }
        }
        return out;
    }

    EvalTable eval_group_by(const Query::GroupBy& g) {
        EvalTable in = eval(*g.from);
        std::vector<Row> keys;
        std::vector<Group> groups;
        for (const auto& row : in.rows) {
            Row key;
            Group single{&row};
            for (const auto& k : g.keys) key.push_back(eval_expr(in.cols, single, *k));
            std::size_t gi = 0;
            for (; gi < keys.size(); ++gi)
                if (grouping_eq(keys[gi], key)) break;
            if (gi == keys.size()) {
                keys.push_back(std::move(key));
                groups.emplace_back();
            }
            groups[gi].push_back(&row);
        }
        EvalTable out;
        for (const auto& item : g.items) out.cols.push_back(output_col(item));
        for (const auto& group : groups) {
            if (eval_pred(in.cols, group, *g.having) != Tri::True) continue;
            Row row;
            for (const auto& item : g.items) row.push_back(eval_expr(in.cols, group, *item.expr));
            out.rows.push_back(std::move(row));
        }
        return out;
    }

    Value eval_expr(const std::vector<ColRef>& cols, const Group& group, const Expr& e) {
        if (const auto* a = std::get_if<Expr::Attr>(&e.node)) {
            if (group.empty()) throw EvalError("attribute over empty group");
            return (*group.front())[resolve(cols, a->ref)];
        }
        if (const auto* l = std::get_if<Expr::Lit>(&e.node)) return l->v;
        if (const auto* c = std::get_if<Expr::Cast>(&e.node)) {
            Tri t = eval_pred(cols, group, *c->pred);
            if (t == Tri::Null) return Value::null();
            return Value(std::int64_t{t == Tri::True ? 1 : 0});
        }
        if (const auto* ag = std::get_if<Expr::Agg>(&e.node)) {
            std::vector<Value> vals;
            vals.reserve(group.size());
            for (const Row* row : group) {
                Group single{row};
                vals.push_back(eval_expr(cols, single, *ag->arg));
            }
            return aggregate(ag->fn, vals);
        }
        const auto& ar = std::get<Expr::Arith>(e.node);
        return value_arith(eval_expr(cols, group, *ar.lhs), ar.op,
                           eval_expr(cols, group, *ar.rhs));
    }

    Tri eval_pred(const std::vector<ColRef>& cols, const Group& group, const Pred& p) {
        if (const auto* b = std::get_if<Pred::BoolLit>(&p.node)) return tri_of(b->v);
        if (const auto* c = std::get_if<Pred::Cmp>(&p.node))
            return value_cmp_3vl(eval_expr(cols, group, *c->lhs),
                                 eval_expr(cols, group, *c->rhs), c->op);
        if (const auto* n = std::get_if<Pred::IsNull>(&p.node))
            return tri_of(eval_expr(cols, group, *n->arg).is_null());
        if (const auto* in = std::get_if<Pred::InVals>(&p.node)) {
            Value v = eval_expr(cols, group, *in->arg);
            Tri acc = Tri::False;
            for (const auto& cand : in->values) acc = tri_or(acc, value_eq_3vl(v, cand));
            return acc;
        }
        if (const auto* in = std::get_if<Pred::InQuery>(&p.node)) {
            const EvalTable& sub = memo_eval(*in->sub);
            if (sub.cols.size() != in->args.size())
                throw EvalError("IN subquery arity mismatch");
            Row lhs;
            for (const auto& a : in->args) lhs.push_back(eval_expr(cols, group, *a));
            Tri acc = Tri::False;
            for (const auto& row : sub.rows) {
                Tri conj = Tri::True;
                for (std::size_t i = 0; i < lhs.size(); ++i)
                    conj = tri_and(conj, value_eq_3vl(lhs[i], row[i]));
                acc = tri_or(acc, conj);
                if (acc == Tri::True) break;
            }
            return acc;
        }
        if (const auto* a = std::get_if<Pred::And>(&p.node))
            return tri_and(eval_pred(cols, group, *a->lhs), eval_pred(cols, group, *a->rhs));
        if (const auto* o = std::get_if<Pred::Or>(&p.node))
            return tri_or(eval_pred(cols, group, *o->lhs), eval_pred(cols, group, *o->rhs));
        return tri_not(eval_pred(cols, group, *std::get<Pred::Not>(p.node).arg));
    }

    const EvalTable& memo_eval(const Query& sub) {
        auto it = subquery_memo.find(&sub);
        if (it != subquery_memo.end()) return it->second;
        EvalTable t = eval(sub);
        return subquery_memo.emplace(&sub, std::move(t)).first->second;
    }
};

}  // namespace

std::vector<ColRef> bind_sql(const RelSchema& schema, const Query& q) {
    Binder b{schema, {}};
    return b.query(q);
}

ResultTable eval_sql(const RelSchema& schema, const RelInstance& d, const Query& q) {
    bind_sql(schema, q);
    return eval_sql_unchecked(schema, d, q);
}

ResultTable eval_sql_unchecked(const RelSchema& schema, const RelInstance& d, const Query& q) {
    Evaluator ev{schema, d, {}, {}};
    EvalTable t = ev.eval(q);
    ResultTable out;
    for (const auto& c : t.cols) out.columns.push_back(c.str());
    out.rows = std::move(t.rows);
    out.ordered = t.ordered;
    return out;
}

}  // namespace sql
}  // namespace graphiti
