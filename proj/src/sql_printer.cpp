#include "graphiti/sql_parser.hpp"

#include <cctype>

namespace graphiti {
namespace sql {

namespace {

std::string value_str(const Value& v) {
    switch (v.kind()) {
        case ValueKind::Null: return "NULL";
        case ValueKind::Int: return std::to_string(v.as_int());
        case ValueKind::Bool: return v.as_bool() ? "TRUE" : "FALSE";
        case ValueKind::Str: {
            std::string out = "'";
            for (char c : v.as_str()) {
                out.push_back(c);
                if (c == '\'') out.push_back(c);
            }
            return out + "'";
        }
    }
    return "NULL";
}

bool plain_ident(const std::string& name) {
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    static const char* kws[] = {"SELECT", "DISTINCT", "FROM",  "WHERE", "GROUP", "BY",
                                "HAVING", "ORDER",    "ASC",   "DESC",  "UNION", "ALL",
                                "JOIN",   "LEFT",     "RIGHT", "FULL",  "OUTER", "CROSS",
                                "ON",     "AS",       "WITH",  "IN",    "IS",    "NOT",
                                "NULL",   "AND",      "OR",    "TRUE",  "FALSE", "CAST"};
    std::string u;
    for (char c : name) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    for (const char* k : kws)
        if (u == k) return false;
    return true;
}

/// Names that collide with keywords or stray characters print double-quoted.
std::string ident(const std::string& name) {
    if (plain_ident(name)) return name;
    std::string out = "\"";
    for (char c : name) {
        out.push_back(c);
        if (c == '"') out.push_back(c);
    }
    return out + "\"";
}

std::string agg_name(AggKind k) {
    switch (k) {
        case AggKind::Count: return "Count";
        case AggKind::Avg: return "Avg";
        case AggKind::Sum: return "Sum";
        case AggKind::Min: return "Min";
        case AggKind::Max: return "Max";
    }
    return "Count";
}

struct Printer {
    std::string col_str(const ColRef& c) const {
        return c.qual ? ident(*c.qual) + "." + ident(c.key) : ident(c.key);
    }

    std::string pred_str(const Pred& p, int min_level) const {
        int level;
        std::string s = pred_raw(p, level);
        if (level < min_level) return "(" + s + ")";
        return s;
    }

    std::string pred_raw(const Pred& p, int& level) const {
        level = 4;
        if (const auto* b = std::get_if<Pred::BoolLit>(&p.node))
            return b->v ? "TRUE" : "FALSE";
        if (const auto* c = std::get_if<Pred::Cmp>(&p.node))
            return expr_str(*c->lhs, 1) + " " + graphiti::to_string(c->op) + " " +
                   expr_str(*c->rhs, 1);
        if (const auto* n = std::get_if<Pred::IsNull>(&p.node))
            return expr_str(*n->arg, 3) + " IS NULL";
        if (const auto* in = std::get_if<Pred::InVals>(&p.node)) {
            std::string s = expr_str(*in->arg, 3) + " IN (";
            for (std::size_t i = 0; i < in->values.size(); ++i)
                s += (i ? ", " : "") + value_str(in->values[i]);
            return s + ")";
        }
        if (const auto* in = std::get_if<Pred::InQuery>(&p.node)) {
            std::string lhs;
            if (in->args.size() == 1) {
                lhs = expr_str(*in->args[0], 3);
            } else {
                lhs = "(";
                for (std::size_t i = 0; i < in->args.size(); ++i)
                    lhs += (i ? ", " : "") + expr_str(*in->args[i], 1);
                lhs += ")";
            }
            return lhs + " IN (" + query_str(*in->sub) + ")";
        }
        if (const auto* a = std::get_if<Pred::And>(&p.node)) {
            level = 2;
            return pred_str(*a->lhs, 2) + " AND " + pred_str(*a->rhs, 3);
        }
        if (const auto* o = std::get_if<Pred::Or>(&p.node)) {
            level = 1;
            return pred_str(*o->lhs, 1) + " OR " + pred_str(*o->rhs, 2);
        }
        const auto& nt = std::get<Pred::Not>(p.node);
        if (const auto* inner = std::get_if<Pred::IsNull>(&nt.arg->node))
            return expr_str(*inner->arg, 3) + " IS NOT NULL";
        level = 3;
        return "NOT " + pred_str(*nt.arg, 3);
    }

    std::string expr_str(const Expr& e, int min_level) const {
        int level;
        std::string s = expr_raw(e, level);
        if (level < min_level) return "(" + s + ")";
        return s;
    }

    std::string expr_raw(const Expr& e, int& level) const {
        level = 3;
        if (const auto* a = std::get_if<Expr::Attr>(&e.node)) return col_str(a->ref);
        if (const auto* l = std::get_if<Expr::Lit>(&e.node)) return value_str(l->v);
        if (const auto* c = std::get_if<Expr::Cast>(&e.node))
            return "CAST(" + pred_str(*c->pred, 1) + ")";
        if (const auto* g = std::get_if<Expr::Agg>(&e.node))
            return agg_name(g->fn) + "(" + expr_str(*g->arg, 1) + ")";
        const auto& ar = std::get<Expr::Arith>(e.node);
        bool additive = ar.op == ArithOp::Add || ar.op == ArithOp::Sub;
        level = additive ? 1 : 2;
        return expr_str(*ar.lhs, level) + " " + graphiti::to_string(ar.op) + " " +
               expr_str(*ar.rhs, level + 1);
    }

    std::string items_str(const std::vector<ProjItem>& items) const {
        std::string s;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) s += ", ";
            s += expr_str(*items[i].expr, 1);
            if (items[i].alias) s += " AS " + ident(*items[i].alias);
        }
        return s;
    }

    static bool selectish(const Query& q) {
        return std::holds_alternative<Query::Project>(q.node) ||
               std::holds_alternative<Query::GroupBy>(q.node) ||
               std::holds_alternative<Query::Select>(q.node) ||
               std::holds_alternative<Query::BaseRel>(q.node) ||
               std::holds_alternative<Query::Rename>(q.node) ||
               std::holds_alternative<Query::Join>(q.node);
    }

    static bool is_union(const Query& q) {
        return std::holds_alternative<Query::SetUnion>(q.node) ||
               std::holds_alternative<Query::BagUnion>(q.node);
    }

    std::string source_unit(const Query& q) const {
        if (const auto* b = std::get_if<Query::BaseRel>(&q.node)) return ident(b->name);
        if (const auto* r = std::get_if<Query::Rename>(&q.node)) {
            if (const auto* b = std::get_if<Query::BaseRel>(&r->from->node))
                return ident(b->name) + " AS " + ident(r->name);
            return "(" + query_str(*r->from) + ") AS " + ident(r->name);
        }
        return "(" + query_str(q) + ")";
    }

    std::string source_str(const Query& q) const {
        if (const auto* j = std::get_if<Query::Join>(&q.node)) {
            std::string kw;
            switch (j->kind) {
                case JoinKind::Cross: kw = "CROSS JOIN"; break;
                case JoinKind::Inner: kw = "JOIN"; break;
                case JoinKind::Left: kw = "LEFT JOIN"; break;
                case JoinKind::Right: kw = "RIGHT JOIN"; break;
                case JoinKind::Full: kw = "FULL JOIN"; break;
            }
            std::string s = source_str(*j->lhs) + " " + kw + " " + source_unit(*j->rhs);
            if (j->pred) s += " ON " + pred_str(*j->pred, 1);
            return s;
        }
        return source_unit(q);
    }

    std::string from_where(const Query& q) const {
        if (const auto* s = std::get_if<Query::Select>(&q.node))
            return source_str(*s->from) + " WHERE " + pred_str(*s->pred, 1);
        return source_str(q);
    }

    std::string select_str(const Query& q) const {
        if (const auto* p = std::get_if<Query::Project>(&q.node))
            return "SELECT " + items_str(p->items) + " FROM " + from_where(*p->from);
        if (const auto* g = std::get_if<Query::GroupBy>(&q.node)) {
            std::string s =
                "SELECT " + items_str(g->items) + " FROM " + from_where(*g->from) + " GROUP BY ";
            if (g->keys.empty()) s += "()";
            for (std::size_t i = 0; i < g->keys.size(); ++i)
                s += (i ? ", " : "") + expr_str(*g->keys[i], 1);
            const auto* hb = std::get_if<Pred::BoolLit>(&g->having->node);
            if (!hb || !hb->v) s += " HAVING " + pred_str(*g->having, 1);
            return s;
        }
        if (const auto* s = std::get_if<Query::Select>(&q.node))
            return "SELECT * FROM " + source_str(*s->from) + " WHERE " + pred_str(*s->pred, 1);
        return "SELECT * FROM " + source_str(q);
    }

    std::string union_operand(const Query& q) const {
        if (selectish(q)) return select_str(q);
        return "(" + query_str(q) + ")";
    }

    std::string union_chain(const Query& q) const {
        if (const auto* u = std::get_if<Query::SetUnion>(&q.node))
            return union_chain(*u->lhs) + " UNION " + union_operand(*u->rhs);
        if (const auto* u = std::get_if<Query::BagUnion>(&q.node))
            return union_chain(*u->lhs) + " UNION ALL " + union_operand(*u->rhs);
        return union_operand(q);
    }

    std::string body_str(const Query& q) const {
        if (const auto* w = std::get_if<Query::With>(&q.node)) {
            std::string s = "WITH ";
            for (std::size_t i = 0; i < w->defs.size(); ++i) {
                if (i) s += ", ";
                s += ident(w->defs[i].name) + " AS (" + query_str(*w->defs[i].query) + ")";
            }
            s += " ";
            if (is_union(*w->body) || selectish(*w->body)) s += union_chain(*w->body);
            else s += "(" + query_str(*w->body) + ")";
            return s;
        }
        return union_chain(q);
    }

    std::string query_str(const Query& q) const {
        if (const auto* o = std::get_if<Query::OrderBy>(&q.node)) {
            std::string inner;
            if (std::holds_alternative<Query::OrderBy>(o->from->node))
                inner = "(" + query_str(*o->from) + ")";
            else
                inner = body_str(*o->from);
            return inner + " ORDER BY " + col_str(o->attr) + (o->asc ? " ASC" : " DESC");
        }
        return body_str(q);
    }
};

}  // namespace

std::string print_sql(const Query& q) { return Printer{}.query_str(q); }

}  // namespace sql
}  // namespace graphiti
