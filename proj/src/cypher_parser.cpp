#include "graphiti/cypher_parser.hpp"

#include <cctype>

#include "graphiti/detail/lexer.hpp"

namespace graphiti {
namespace cypher {

namespace {

using detail::ParserBase;
using detail::Tok;

struct Parser : ParserBase {
    int anon_counter = 0;

    explicit Parser(const std::string& s) : ParserBase(s) {}

    std::string fresh_var() { return "_a" + std::to_string(anon_counter++); }

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

    // ----- patterns ------------------------------------------------------

    struct PropFilter {
        std::string var;
        std::string key;
        Value value;
    };

    PathPattern parse_pattern(std::vector<PropFilter>* filters) {
        PathPattern pp;
        pp.nodes.push_back(parse_node_pat(filters));
        while (is_punct("-") || is_punct("<-")) {
            if (accept("<-")) {
                expect("[");
                pp.edges.push_back(parse_edge_body(Dir::Bwd));
                expect("]");
                expect("-");
            } else {
                expect("-");
                expect("[");
                EdgePat e = parse_edge_body(Dir::Both);
                expect("]");
                if (accept("->")) e.dir = Dir::Fwd;
                else expect("-");
                pp.edges.push_back(e);
            }
            pp.nodes.push_back(parse_node_pat(filters));
        }
        return pp;
    }

    NodePat parse_node_pat(std::vector<PropFilter>* filters) {
        expect("(");
        std::string var;
        if (tok.kind == Tok::Ident) var = expect_ident();
        if (var.empty()) var = fresh_var();
        expect(":");
        std::string label = expect_ident();
        if (is_punct("{")) parse_prop_map(var, filters);
        expect(")");
        return {var, label};
    }

    EdgePat parse_edge_body(Dir dir) {
        std::string var;
        if (tok.kind == Tok::Ident) var = expect_ident();
        if (var.empty()) var = fresh_var();
        expect(":");
        std::string label = expect_ident();
        return {var, label, dir};
    }

    void parse_prop_map(const std::string& var, std::vector<PropFilter>* filters) {
        expect("{");
        if (!filters) fail("property filter is not allowed inside EXISTS");
        while (true) {
            std::string key = expect_ident();
            expect(":");
            filters->push_back({var, key, parse_literal()});
            if (!accept(",")) break;
        }
        expect("}");
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
                return key(name, k);
            }
            // Bare property key, resolved through schema-wide key uniqueness.
            return key(std::nullopt, name);
        }
        fail("expected expression");
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

    PredPtr parse_atom_pred() {
        if (is_kw("EXISTS")) {
            bump();
            PathPattern pp;
            if (accept("{")) {
                expect_kw("MATCH");
                pp = parse_pattern(nullptr);
                expect("}");
            } else {
                expect("(");
                pp = parse_pattern(nullptr);
                expect(")");
            }
            return exists(std::move(pp));
        }
        if ((is_kw("TRUE") || is_kw("FALSE")) && !bool_kw_is_operand()) {
            bool v = is_kw("TRUE");
            bump();
            return v ? btrue() : bfalse();
        }
        if (is_punct("(")) {
            auto state = save();
            int save_anon = anon_counter;
            try {
                bump();
                PredPtr p = parse_pred();
                expect(")");
                if (!continues_expression()) return p;
            } catch (const ParseError&) {
            }
            restore(state);
            anon_counter = save_anon;
        }
        ExprPtr e = parse_expr();
        if (accept_kw("IS")) {
            if (accept_kw("NOT")) {
                expect_kw("NULL");
                return pnot(is_null(e));
            }
            expect_kw("NULL");
            return is_null(e);
        }
        if (accept_kw("IN")) {
            std::string close = accept("[") ? "]" : (expect("("), ")");
            std::vector<Value> vals;
            if (!is_punct(close)) {
                vals.push_back(parse_literal());
                while (accept(",")) vals.push_back(parse_literal());
            }
            expect(close);
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

    /// True when the current token can only continue an expression, meaning a
    /// just-parsed parenthesised predicate was really a parenthesised
    /// expression operand.
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

    /// TRUE/FALSE read as predicates unless the following token continues an
    /// expression (comparison, arithmetic, IS, IN).
    bool bool_kw_is_operand() {
        auto st = save();
        bump();
        bool operand = continues_expression();
        restore(st);
        return operand;
    }

    // ----- clauses -------------------------------------------------------

    PredPtr filters_to_pred(const std::vector<PropFilter>& filters, PredPtr where) {
        PredPtr p = where;
        for (auto it = filters.rbegin(); it != filters.rend(); ++it) {
            PredPtr eq = cmp(key(it->var, it->key), CmpOp::Eq, lit(it->value));
            p = p ? pand(eq, p) : eq;
        }
        return p ? p : btrue();
    }

    ClausePtr parse_clause_part() {
        expect_kw("MATCH");
        std::vector<PropFilter> filters;
        PathPattern pp = parse_pattern(&filters);
        PredPtr where;
        if (accept_kw("WHERE")) where = parse_pred();
        ClausePtr c = match(std::move(pp), filters_to_pred(filters, where));

        while (true) {
            if (accept_kw("MATCH")) {
                std::vector<PropFilter> fs;
                PathPattern p2 = parse_pattern(&fs);
                PredPtr w;
                if (accept_kw("WHERE")) w = parse_pred();
                c = match_after(c, std::move(p2), filters_to_pred(fs, w));
            } else if (is_kw("OPTIONAL")) {
                bump();
                expect_kw("MATCH");
                std::vector<PropFilter> fs;
                PathPattern p2 = parse_pattern(&fs);
                PredPtr w;
                if (accept_kw("WHERE")) w = parse_pred();
                c = opt_match(c, std::move(p2), filters_to_pred(fs, w));
            } else if (is_kw("WITH")) {
                bump();
                std::vector<std::string> olds, news;
                while (true) {
                    std::string o = expect_ident();
                    std::string n = o;
                    if (accept_kw("AS")) n = expect_ident();
                    olds.push_back(o);
                    news.push_back(n);
                    if (!accept(",")) break;
                }
                c = with(c, std::move(olds), std::move(news));
            } else {
                break;
            }
        }
        return c;
    }

    QueryPtr parse_return_query() {
        ClausePtr c = parse_clause_part();
        expect_kw("RETURN");
        std::vector<ExprPtr> exprs;
        std::vector<std::string> names;
        while (true) {
            std::size_t start = tok.begin;
            ExprPtr e = parse_expr();
            std::size_t end_pos = tok.begin;
            std::string name;
            if (accept_kw("AS")) {
                name = expect_ident();
            } else {
                name = src.substr(start, end_pos - start);
                while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
                    name.pop_back();
            }
            exprs.push_back(e);
            names.push_back(name);
            if (!accept(",")) break;
        }
        QueryPtr q = ret(c, std::move(exprs), std::move(names));
        if (is_kw("ORDER")) {
            bump();
            expect_kw("BY");
            std::string k = expect_ident();
            bool asc = true;
            if (accept_kw("DESC")) asc = false;
            else accept_kw("ASC");
            q = order_by(q, k, asc);
        }
        return q;
    }

    QueryPtr parse_query() {
        QueryPtr q = parse_return_query();
        while (is_kw("UNION")) {
            bump();
            bool all = accept_kw("ALL");
            q = union_q(q, parse_return_query(), all);
        }
        accept(";");
        if (tok.kind != Tok::End) fail("unexpected trailing input");
        return q;
    }
};

}  // namespace

QueryPtr parse_cypher(const std::string& text) {
    Parser p(text);
    return p.parse_query();
}

}  // namespace cypher
}  // namespace graphiti
