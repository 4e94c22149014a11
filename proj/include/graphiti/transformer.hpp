#pragma once

#include <string>
#include <vector>

#include "graphiti/instance.hpp"
#include "graphiti/schema.hpp"
#include "graphiti/value.hpp"

namespace graphiti {

/// Term of a transformer rule: a constant value or a variable name.
struct Term {
    bool is_var = false;
    Value constant;
    std::string var;

    static Term of_var(std::string v) { return Term{true, Value::null(), std::move(v)}; }
    static Term of_const(Value c) { return Term{false, std::move(c), {}}; }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.is_var != b.is_var) return false;
        return a.is_var ? a.var == b.var : a.constant == b.constant;
    }
};

struct RulePred {
    std::string name;
    std::vector<Term> terms;
};

/// P1, ..., Pn -> P0 with every head variable occurring in the body.
struct TransformRule {
    std::vector<RulePred> body;
    RulePred head;
};

struct Transformer {
    std::vector<TransformRule> rules;
};

struct GroundFact {
    std::string name;
    Row args;
};

struct GroundFactSet {
    std::vector<GroundFact> facts;
};

/// Parses the `.dtl` rule syntax, one rule per `B1(..), B2(..) -> H(..)`;
/// `_` becomes a fresh body variable; `#` and `//` start comments. Enforces
/// head-variable safety and per-name arity consistency. Throws ParseError.
Transformer parse_transformer(const std::string& text);

std::string print_transformer(const Transformer& t);

/// Nodes become label(prop values in key order); edges become
/// label(prop values..., src default key value, tgt default key value).
GroundFactSet ground_graph(const GraphSchema& gs, const GraphInstance& g);

/// Each row of table R becomes R(values in attribute order).
GroundFactSet ground_rel(const RelInstance& d);

/// Minimal-model forward chaining, one step: each rule emits one head row per
/// distinct head-variable valuation (set semantics within a rule), bag union
/// across rules. The result is typed by the target schema: every relation is
/// present, head arities must match. Throws BindError on arity mismatch.
RelInstance apply_transformer(const Transformer& phi, const GroundFactSet& src,
                              const RelSchema& target);

/// True iff apply_transformer(phi, ground_graph(g)) equals d table by table
/// (bag equality, fixed attribute lists).
bool check_equiv_mod(const Transformer& phi, const GraphSchema& gs, const GraphInstance& g,
                     const RelSchema& rs, const RelInstance& d);

/// Checks phi's body predicates against the graph schema (label and arity:
/// keys for nodes, keys+2 for edges) and heads against the target schema.
void check_transformer_shape(const Transformer& phi, const GraphSchema& gs,
                             const RelSchema& rs);

}  // namespace graphiti
