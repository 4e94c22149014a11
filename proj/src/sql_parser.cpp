#include "graphiti/sql_parser.hpp"

#include "graphiti/detail/lexer.hpp"

namespace graphiti {
namespace sql {

namespace {

using detail::ParserBase;
using detail::Tok;

bool is_reserved(const std::string& word) {
    static const char* kws[] = {"SELECT", "DISTINCT", "FROM",  "WHERE", "GROUP", "BY",
                                "HAVING", "ORDER",    "ASC",   "DESC",  "UNION", "ALL",
                                "JOIN",   "LEFT",     "RIGHT", "FULL",  "OUTER", "CROSS",
                                "ON",     "AS",       "WITH",  "IN",    "IS",    "NOT",
                                "NULL",   "AND",      "OR",    "TRUE",  "FALSE", "CAST"};
    std::string u = detail::upper(word);
    for (const char* k : kws)
        if (u == k) return true;
    return false;
}

struct Parser : ParserBase {
    explicit Parser(const std::string& s) : ParserBase(s, false, /*dquote_ident=*/true) {}

    // ----- literals ------------------------------------------------------

    Value parse_literal() {
        if (accept("-")) {
            if (tok.kind != Tok::Int) fail("expected integer after '-'");
            Value v(-tok.ival);
            bump();
            return v;
        }
        if (tok.kind == Tok::Int) {
            Value v(tok.ival);
            bump();
            return v;
        }
        if (tok.kind == Tok::Str) {
            Value v(tok.text);
            bump();
            return v;
        }
        if (accept_kw("TRUE")) return Value(true);
        if (accept_kw("FALSE")) return Value(false);
        if (accept_kw("NULL")) return Value::null();
        fail("expected literal");
    }

    // ----- expressions ---------------------------------------------------

    std::optional<AggKind> agg_kind(const std::string& name) const {
        std::string u = detail::upper(name);
        if (u == "COUNT") return AggKind::Count;
        if (u == "SUM") return AggKind::Sum;
        if (u == "AVG") return AggKind::Avg;
        if (u == "MIN") return AggKind::Min;
        if (u == "MAX") return AggKind::Max;
        return std::nullopt;
    }

    ExprPtr parse_expr() { return parse_add(); }

    ExprPtr parse_add() {
        ExprPtr e = parse_mul();
        while (is_punct("+") || is_punct("-")) {
            ArithOp op = is_punct("+") ? ArithOp::Add : ArithOp::Sub;
            bump();
            e = arith(e, op, parse_mul());
        }
        return e;
    }

    ExprPtr parse_mul() {
        ExprPtr e = parse_unary();
        while (is_punct("*") || is_punct("/")) {
            ArithOp op = is_punct("*") ? ArithOp::Mul : ArithOp::Div;
            bump();
            e = arith(e, op, parse_unary());
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (is_punct("-")) {
            bump();
            if (tok.kind == Tok::Int) {
                Value v(-tok.ival);
                bump();
                return lit(v);
            }
            return arith(lit(Value(std::int64_t{0})), ArithOp::Sub, parse_unary());
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        if (tok.kind == Tok::Int || tok.kind == Tok::Str) return lit(parse_literal());
        if (is_kw("TRUE") || is_kw("FALSE") || is_kw("NULL")) return lit(parse_literal());
        if (accept("(")) {
            ExprPtr e = parse_expr();
            expect(")");
            return e;
        }
        if (is_kw("CAST")) {
            bump();
            expect("(");
            PredPtr p = parse_pred();
            expect(")");
            return cast(p);
        }
        if (tok.kind == Tok::Ident) {
            std::string name = expect_ident();
            if (is_punct("(")) {
                auto fn = agg_kind(name);
                if (!fn) fail("unknown aggregate name '" + name + "'");
                expect("(");
                ExprPtr arg;
                if (accept("*")) {
                    if (*fn != AggKind::Count) fail("only COUNT accepts *");
                    arg = lit(Value(std::int64_t{1}));
                } else {
                    arg = parse_expr();
                }
                expect(")");
                return agg(*fn, arg);
            }
            if (accept(".")) {
                std::string k = expect_ident();
                return attr(name, k);
            }
            return attr(std::nullopt, name);
        }
        fail("expected expression");
    }

    /// TRUE/FALSE read as predicates unless the following token continues an
    /// expression (comparison, arithmetic, IS, IN).
    bool bool_kw_is_operand() {
        auto st = save();
        bump();
        bool operand = continues_expression();
        restore(st);
        return operand;
    }

    // ----- predicates ----------------------------------------------------

    PredPtr parse_pred() { return parse_or(); }

    PredPtr parse_or() {
        PredPtr p = parse_and();
        while (is_kw("OR")) {
            bump();
            p = por(p, parse_and());
        }
        return p;
    }

    PredPtr parse_and() {
        PredPtr p = parse_not();
        while (is_kw("AND")) {
            bump();
            p = pand(p, parse_not());
        }
        return p;
    }

    PredPtr parse_not() {
        if (accept_kw("NOT")) return pnot(parse_not());
        return parse_atom_pred();
    }

    bool continues_expression() const {
        if (tok.kind == Tok::Punct) {
            static const char* ops[] = {"=", "<>", "!=", "<", "<=", ">", ">=",
                                        "+", "-", "*", "/", "."};
            for (const char* o : ops)
                if (tok.text == o) return true;
            return false;
        }
        return is_kw("IS") || is_kw("IN");
    }

    PredPtr parse_atom_pred() {
        if ((is_kw("TRUE") || is_kw("FALSE")) && !bool_kw_is_operand()) {
            bool v = is_kw("TRUE");
            bump();
            return v ? btrue() : bfalse();
        }
        if (is_punct("(")) {
            // Try a parenthesised predicate first.
            auto state = save();
            try {
                bump();
                PredPtr p = parse_pred();
                expect(")");
                if (!continues_expression()) return p;
            } catch (const ParseError&) {
            }
            restore(state);
            // Then a row constructor: (e1, e2, ...) IN (subquery).
            try {
                bump();
                std::vector<ExprPtr> args;
                args.push_back(parse_expr());
                while (accept(",")) args.push_back(parse_expr());
                expect(")");
                if (args.size() >= 2) {
                    expect_kw("IN");
                    expect("(");
                    QueryPtr sub = parse_query_inner();
                    expect(")");
                    return in_query(std::move(args), sub);
                }
            } catch (const ParseError&) {
            }
            restore(state);
        }
        ExprPtr e = parse_expr();
        return parse_pred_suffix(e);
    }

    PredPtr parse_pred_suffix(ExprPtr e) {
        if (accept_kw("IS")) {
            if (accept_kw("NOT")) {
                expect_kw("NULL");
                return pnot(is_null(e));
            }
            expect_kw("NULL");
            return is_null(e);
        }
        if (accept_kw("IN")) {
            if (accept("[")) {
                std::vector<Value> vals;
                if (!is_punct("]")) {
                    vals.push_back(parse_literal());
                    while (accept(",")) vals.push_back(parse_literal());
                }
                expect("]");
                return in_values(e, std::move(vals));
            }
            expect("(");
            if (is_kw("SELECT") || is_kw("WITH") || is_punct("(")) {
                QueryPtr sub = parse_query_inner();
                expect(")");
                return in_query({e}, sub);
            }
            std::vector<Value> vals;
            if (!is_punct(")")) {
                vals.push_back(parse_literal());
                while (accept(",")) vals.push_back(parse_literal());
            }
            expect(")");
            return in_values(e, std::move(vals));
        }
        CmpOp op;
        if (accept("=")) op = CmpOp::Eq;
        else if (accept("<>") || accept("!=")) op = CmpOp::Ne;
        else if (accept("<=")) op = CmpOp::Le;
        else if (accept(">=")) op = CmpOp::Ge;
        else if (accept("<")) op = CmpOp::Lt;
        else if (accept(">")) op = CmpOp::Gt;
        else fail("expected comparison");
        return cmp(e, op, parse_expr());
    }

    // ----- sources -------------------------------------------------------

    QueryPtr parse_source_unit() {
        QueryPtr q;
        if (accept("(")) {
            q = parse_query_inner();
            expect(")");
        } else {
            if (tok.kind != Tok::Ident || (is_reserved(tok.text) && !tok.quoted))
                fail("expected table name");
            q = base_rel(expect_ident());
        }
        if (accept_kw("AS")) {
            return rename(expect_ident(), q);
        }
        if (tok.kind == Tok::Ident && (!is_reserved(tok.text) || tok.quoted)) {
            return rename(expect_ident(), q);
        }
        return q;
    }

    QueryPtr parse_source_chain() {
        QueryPtr left = parse_source_unit();
        while (true) {
            if (accept(",")) {
                left = join(JoinKind::Cross, nullptr, left, parse_source_unit());
            } else if (is_kw("CROSS")) {
                bump();
                expect_kw("JOIN");
                left = join(JoinKind::Cross, nullptr, left, parse_source_unit());
            } else if (is_kw("JOIN") || is_kw("INNER") || is_kw("LEFT") || is_kw("RIGHT") ||
                       is_kw("FULL")) {
                JoinKind kind = JoinKind::Inner;
                if (accept_kw("LEFT")) kind = JoinKind::Left;
                else if (accept_kw("RIGHT")) kind = JoinKind::Right;
                else if (accept_kw("FULL")) kind = JoinKind::Full;
                else accept_kw("INNER");
                accept_kw("OUTER");
                expect_kw("JOIN");
                QueryPtr right = parse_source_unit();
                expect_kw("ON");
                PredPtr p = parse_pred();
                left = join(kind, p, left, right);
            } else {
                break;
            }
        }
        return left;
    }

    // ----- SELECT --------------------------------------------------------

    QueryPtr parse_select() {
        expect_kw("SELECT");
        bool distinct = accept_kw("DISTINCT");
        bool star = false;
        std::vector<ProjItem> items;
        if (accept("*")) {
            star = true;
        } else {
            while (true) {
                ProjItem item;
                item.expr = parse_expr();
                if (accept_kw("AS")) item.alias = expect_ident();
                items.push_back(std::move(item));
                if (!accept(",")) break;
            }
        }
        expect_kw("FROM");
        QueryPtr base = parse_source_chain();
        PredPtr where;
        if (accept_kw("WHERE")) where = parse_pred();

        QueryPtr q;
        if (is_kw("GROUP")) {
            bump();
            expect_kw("BY");
            if (star) fail("SELECT * cannot be grouped");
            std::vector<ExprPtr> keys;
            bool empty_keys = false;
            if (is_punct("(")) {
                // GROUP BY () groups everything into a single group; plain
                // parentheses start an ordinary key expression.
                auto st = save();
                bump();
                if (is_punct(")")) {
                    bump();
                    empty_keys = true;
                } else {
                    restore(st);
                }
            }
            if (!empty_keys) {
                keys.push_back(parse_expr());
                while (accept(",")) keys.push_back(parse_expr());
            }
            PredPtr having = btrue();
            if (accept_kw("HAVING")) having = parse_pred();
            QueryPtr from = where ? select(where, base) : base;
            q = group_by(from, std::move(keys), std::move(items), having);
        } else if (star) {
            q = where ? select(where, base) : base;
        } else {
            QueryPtr from = where ? select(where, base) : base;
            q = project(std::move(items), from);
        }
        if (distinct) q = set_union(q, q);
        return q;
    }

    QueryPtr parse_unit() {
        if (accept("(")) {
            QueryPtr q = parse_query_inner();
            expect(")");
            return q;
        }
        return parse_select();
    }

    /// [WITH defs] unit (UNION [ALL] unit)* [ORDER BY a [ASC|DESC]]
    QueryPtr parse_query_inner() {
        std::vector<CteDef> defs;
        if (accept_kw("WITH")) {
            while (true) {
                std::string name = expect_ident();
                expect_kw("AS");
                expect("(");
                QueryPtr def = parse_query_inner();
                expect(")");
                defs.push_back({std::move(name), def});
                if (!accept(",")) break;
            }
        }
        QueryPtr q = parse_unit();
        while (is_kw("UNION")) {
            bump();
            bool all = accept_kw("ALL");
            QueryPtr rhs = parse_unit();
            q = all ? bag_union(q, rhs) : set_union(q, rhs);
        }
        if (!defs.empty()) q = with(std::move(defs), q);
        if (is_kw("ORDER")) {
            bump();
            expect_kw("BY");
            std::string first = expect_ident();
            ColRef ref{std::nullopt, first};
            if (accept(".")) {
                ref.qual = first;
                ref.key = expect_ident();
            }
            bool asc = true;
            if (accept_kw("DESC")) asc = false;
            else accept_kw("ASC");
            q = order_by(q, ref, asc);
        }
        return q;
    }

    QueryPtr parse_query() {
        QueryPtr q = parse_query_inner();
        accept(";");
        if (tok.kind != Tok::End) fail("unexpected trailing input");
        return q;
    }
};

}  // namespace

QueryPtr parse_sql(const std::string& text) {
    Parser p(text);
    return p.parse_query();
}

}  // namespace sql
}  // namespace graphiti
