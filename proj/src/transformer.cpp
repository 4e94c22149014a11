#include "graphiti/transformer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "graphiti/detail/lexer.hpp"

namespace graphiti {

namespace {

using detail::ParserBase;
using detail::Tok;

struct DtlParser : ParserBase {
    int wildcard_counter = 0;

    explicit DtlParser(const std::string& s) : ParserBase(s, /*hash_comments=*/true) {}

    Term parse_term() {
        if (tok.kind == Tok::Ident && tok.text == "_") {
            bump();
            return Term::of_var("_w" + std::to_string(wildcard_counter++));
        }
        if (tok.kind == Tok::Int) {
            Value v(tok.ival);
            bump();
            return Term::of_const(v);
        }
        if (accept("-")) {
            if (tok.kind != Tok::Int) fail("expected integer after '-'");
            Value v(-tok.ival);
            bump();
            return Term::of_const(v);
        }
        if (tok.kind == Tok::Str) {
            Value v(tok.text);
            bump();
            return Term::of_const(v);
        }
        if (is_kw("TRUE")) { bump(); return Term::of_const(Value(true)); }
        if (is_kw("FALSE")) { bump(); return Term::of_const(Value(false)); }
        if (is_kw("NULL")) { bump(); return Term::of_const(Value::null()); }
        if (tok.kind == Tok::Ident) return Term::of_var(expect_ident());
        fail("expected term");
    }

    RulePred parse_pred() {
        RulePred p;
        p.name = expect_ident();
        expect("(");
        if (!is_punct(")")) {
            p.terms.push_back(parse_term());
            while (accept(",")) p.terms.push_back(parse_term());
        }
        expect(")");
        return p;
    }

    TransformRule parse_rule() {
        TransformRule r;
        r.body.push_back(parse_pred());
        while (accept(",")) r.body.push_back(parse_pred());
        expect("->");
        r.head = parse_pred();
        accept(";");
        return r;
    }

    Transformer parse() {
        Transformer t;
        while (tok.kind != Tok::End) t.rules.push_back(parse_rule());
        return t;
    }
};

void validate_transformer(const Transformer& t) {
    std::map<std::string, std::size_t> arity;
    auto check_arity = [&](const RulePred& p) {
        auto [it, fresh] = arity.emplace(p.name, p.terms.size());
        if (!fresh && it->second != p.terms.size())
            throw BindError("predicate '" + p.name + "' used with arities " +
                            std::to_string(it->second) + " and " +
                            std::to_string(p.terms.size()));
    };
    for (const auto& r : t.rules) {
        std::set<std::string> body_vars;
        for (const auto& p : r.body) {
            check_arity(p);
            for (const auto& term : p.terms)
                if (term.is_var) body_vars.insert(term.var);
        }
        check_arity(r.head);
        for (const auto& term : r.head.terms)
            if (term.is_var && !body_vars.count(term.var))
                throw BindError("unsafe head variable '" + term.var + "' in rule for '" +
                                r.head.name + "'");
    }
}

std::string term_str(const Term& t) {
    if (t.is_var) return t.var;
    switch (t.constant.kind()) {
        case ValueKind::Null: return "null";
        case ValueKind::Int: return std::to_string(t.constant.as_int());
        case ValueKind::Bool: return t.constant.as_bool() ? "true" : "false";
        case ValueKind::Str: {
            std::string out = "'";
            for (char c : t.constant.as_str()) {
                out.push_back(c);
                if (c == '\'') out.push_back(c);
            }
            return out + "'";
        }
    }
    return "null";
}

std::string pred_str(const RulePred& p) {
    std::string s = p.name + "(";
    for (std::size_t i = 0; i < p.terms.size(); ++i) s += (i ? ", " : "") + term_str(p.terms[i]);
    return s + ")";
}

}  // namespace

Transformer parse_transformer(const std::string& text) {
    DtlParser p(text);
    Transformer t = p.parse();
    validate_transformer(t);
    return t;
}

std::string print_transformer(const Transformer& t) {
    std::string out;
    for (const auto& r : t.rules) {
        for (std::size_t i = 0; i < r.body.size(); ++i)
            out += (i ? ", " : "") + pred_str(r.body[i]);
        out += " -> " + pred_str(r.head) + "\n";
    }
    return out;
}

GroundFactSet ground_graph(const GraphSchema& gs, const GraphInstance& g) {
    GroundFactSet out;
    for (const auto& n : g.nodes) {
        GroundFact f{n.label, {}};
        for (const auto& k : gs.keys_of(n.label)) f.args.push_back(n.props.at(k));
        out.facts.push_back(std::move(f));
    }
    for (const auto& e : g.edges) {
        const EdgeType* t = gs.find_edge(e.label);
        if (!t) throw BindError("unknown edge label '" + e.label + "'");
        GroundFact f{e.label, {}};
        for (const auto& k : t->keys) f.args.push_back(e.props.at(k));
        const auto* src = g.find_node(e.src);
        const auto* tgt = g.find_node(e.tgt);
        if (!src || !tgt) throw BindError("edge " + std::to_string(e.id) + " is dangling");
        f.args.push_back(src->props.at(gs.default_key_of(src->label)));
        f.args.push_back(tgt->props.at(gs.default_key_of(tgt->label)));
        out.facts.push_back(std::move(f));
    }
    return out;
}

GroundFactSet ground_rel(const RelInstance& d) {
    GroundFactSet out;
    for (const auto& t : d.tables)
        for (const auto& row : t.rows) out.facts.push_back({t.name, row});
    return out;
}

namespace {

using Subst = std::map<std::string, Value>;

/// Enumerates substitutions matching body[i..] against the fact index and
/// collects one head row per distinct head valuation.
void solve(const std::vector<RulePred>& body, std::size_t i,
           const std::map<std::string, std::vector<const GroundFact*>>& index, Subst& subst,
           const RulePred& head, std::vector<Row>& rows) {
    if (i == body.size()) {
        Row out;
        for (const auto& term : head.terms)
            out.push_back(term.is_var ? subst.at(term.var) : term.constant);
        for (const auto& r : rows)
            if (grouping_eq(r, out)) return;
        rows.push_back(std::move(out));
        return;
    }
    const RulePred& p = body[i];
    auto it = index.find(p.name);
    if (it == index.end()) return;
    for (const GroundFact* f : it->second) {
        if (f->args.size() != p.terms.size()) continue;
        Subst local = subst;
        bool ok = true;
        for (std::size_t t = 0; t < p.terms.size() && ok; ++t) {
            const Term& term = p.terms[t];
            if (!term.is_var) {
                ok = grouping_eq(term.constant, f->args[t]);
            } else {
                auto [pos, fresh] = local.emplace(term.var, f->args[t]);
                if (!fresh) ok = grouping_eq(pos->second, f->args[t]);
            }
        }
        if (ok) solve(body, i + 1, index, local, head, rows);
    }
}

}  // namespace

RelInstance apply_transformer(const Transformer& phi, const GroundFactSet& src,
                              const RelSchema& target) {
    std::map<std::string, std::vector<const GroundFact*>> index;
    for (const auto& f : src.facts) index[f.name].push_back(&f);

    RelInstance out;
    for (const auto& r : target.relations) out.tables.push_back({r.name, r.attrs, {}});

    for (const auto& rule : phi.rules) {
        const Relation& rel = target.require(rule.head.name);
        if (rel.attrs.size() != rule.head.terms.size())
            throw BindError("rule head '" + rule.head.name + "' has arity " +
                            std::to_string(rule.head.terms.size()) + ", relation has " +
                            std::to_string(rel.attrs.size()));
        std::vector<Row> rows;
        Subst subst;
        solve(rule.body, 0, index, subst, rule.head, rows);
        auto& table = out.get_or_create(rel.name, rel.attrs);
        for (auto& row : rows) table.rows.push_back(std::move(row));
    }
    return out;
}

bool check_equiv_mod(const Transformer& phi, const GraphSchema& gs, const GraphInstance& g,
                     const RelSchema& rs, const RelInstance& d) {
    RelInstance image = apply_transformer(phi, ground_graph(gs, g), rs);
    return rel_instance_equal(image, d);
}

void check_transformer_shape(const Transformer& phi, const GraphSchema& gs,
                             const RelSchema& rs) {
    for (const auto& rule : phi.rules) {
        for (const auto& p : rule.body) {
            if (const NodeType* n = gs.find_node(p.name)) {
                if (p.terms.size() != n->keys.size())
                    throw BindError("body predicate '" + p.name + "' has arity " +
                                    std::to_string(p.terms.size()) + ", node type has " +
                                    std::to_string(n->keys.size()) + " keys");
            } else if (const EdgeType* e = gs.find_edge(p.name)) {
                if (p.terms.size() != e->keys.size() + 2)
                    throw BindError("body predicate '" + p.name + "' has arity " +
                                    std::to_string(p.terms.size()) + ", edge type expects " +
                                    std::to_string(e->keys.size() + 2));
            } else {
                throw BindError("body predicate '" + p.name + "' is not a label");
            }
        }
        const Relation& rel = rs.require(rule.head.name);
        if (rel.attrs.size() != rule.head.terms.size())
            throw BindError("head predicate '" + rule.head.name + "' arity mismatch");
    }
}

}  // namespace graphiti
