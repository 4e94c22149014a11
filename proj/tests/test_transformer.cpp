#include "doctest.h"

#include <algorithm>
#include <set>

#include "graphiti/sdt.hpp"
#include "graphiti/transformer.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace graphiti;
using namespace graphiti::test;

namespace {

std::multiset<std::string> fact_strings(const GroundFactSet& fs) {
    std::multiset<std::string> out;
    for (const auto& f : fs.facts) {
        std::string s = f.name + "(";
        for (std::size_t i = 0; i < f.args.size(); ++i)
            s += (i ? "," : "") + to_string(f.args[i]);
        out.insert(s + ")");
    }
    return out;
}

}  // namespace

TEST_CASE("parse transformer rules") {
    Transformer fig5 = fx_transformer("fig5_transformer.dtl");
    REQUIRE(fig5.rules.size() == 5);
    const TransformRule& cs = fig5.rules[3];
    CHECK(cs.head.name == "Cs");
    REQUIRE(cs.body.size() == 3);
    CHECK(cs.body[1].name == "CS");
    REQUIRE(cs.body[1].terms.size() == 4);
    // Repeated variable: positions 1 and 3 carry the same variable.
    CHECK(cs.body[1].terms[0] == cs.body[1].terms[2]);
    // The wildcard became a fresh variable distinct from the others.
    CHECK(cs.body[0].terms[1].is_var);
    CHECK(cs.body[0].terms[1].var != cs.body[0].terms[0].var);

    Transformer single = parse_transformer("EMP(id, name) -> emp(id, name)");
    CHECK(single.rules.size() == 1);

    CHECK_THROWS_AS(parse_transformer("EMP(id) -> emp(id, name)"), BindError);  // unsafe head
    CHECK_THROWS_AS(parse_transformer("EMP(id) -> emp(id)\nEMP(id, x) -> emp(id)"),
                    BindError);  // arity reuse
    // Round trip through the printer.
    Transformer again = parse_transformer(print_transformer(fig5));
    CHECK(print_transformer(again) == print_transformer(fig5));
}

TEST_CASE("ground_graph encodes nodes and edges") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    GraphInstance g = fx_graph_instance("fig3_graph_instance.json");
    auto facts = fact_strings(ground_graph(gs, g));
    CHECK(facts.count("CONCEPT(1,'Atropine')") == 1);
    CHECK(facts.count("CONCEPT(2,'Aspirin')") == 1);
    CHECK(facts.count("CS(1,0,1,0)") == 1);
    CHECK(facts.count("CS(1,1,1,1)") == 1);
    CHECK(facts.count("SP(0,0,0,0,0)") == 1);
    CHECK(facts.count("SP(1,0,1,1,0)") == 1);
    CHECK(facts.size() == 10);

    CHECK(ground_graph(gs, GraphInstance{}).facts.empty());

    GraphSchema emp = fx_graph_schema("ex51_graph_schema.json");
    auto small = fact_strings(ground_graph(emp, fx_graph_instance("ex52_graph_instance.json")));
    std::multiset<std::string> expect{"EMP(1,'A')",          "EMP(2,'B')",
                                      "DEPT(1,'CS')",        "DEPT(2,'EE')",
                                      "WORK_AT(10,1,1)",     "WORK_AT(11,2,1)"};
    CHECK(small == expect);
}

TEST_CASE("ground_rel turns rows into facts") {
    RelInstance d = fx_rel_instance("fig3_rel_instance.json");
    auto facts = fact_strings(ground_rel(d));
    CHECK(facts.count("Concept(1,'Atropine')") == 1);
    CHECK(facts.count("Concept(2,'Aspirin')") == 1);
    CHECK(facts.size() == 10);
    CHECK(ground_rel(RelInstance{}).facts.empty());

    RelInstance one;
    one.tables.push_back({"R", {"a"}, {{I(7)}}});
    CHECK(fact_strings(ground_rel(one)) == std::multiset<std::string>{"R(7)"});
}

TEST_CASE("apply_transformer reproduces the paper example") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    Transformer phi = fx_transformer("fig5_transformer.dtl");
    GraphInstance g = fx_graph_instance("fig3_graph_instance.json");

    RelInstance image = apply_transformer(phi, ground_graph(gs, g), rs);
    CHECK(rel_instance_equal(image, fx_rel_instance("fig3_rel_instance.json")));

    // Empty source: every target table exists and is empty.
    RelInstance empty = apply_transformer(phi, GroundFactSet{}, rs);
    CHECK(empty.tables.size() == rs.relations.size());
    for (const auto& t : empty.tables) CHECK(t.rows.empty());
}

TEST_CASE("check_equiv_mod") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    Transformer phi = fx_transformer("fig5_transformer.dtl");
    GraphInstance g = fx_graph_instance("fig3_graph_instance.json");
    RelInstance d = fx_rel_instance("fig3_rel_instance.json");

    CHECK(check_equiv_mod(phi, gs, g, rs, d));
    RelInstance smaller = d;
    for (auto& t : smaller.tables)
        if (t.name == "Cs") t.rows.pop_back();
    CHECK_FALSE(check_equiv_mod(phi, gs, g, rs, smaller));
    CHECK(check_equiv_mod(phi, gs, GraphInstance{}, rs, RelInstance{}));
}

TEST_CASE("transformer shape checks") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    CHECK_NOTHROW(check_transformer_shape(fx_transformer("fig5_transformer.dtl"), gs, rs));
    CHECK_THROWS_AS(
        check_transformer_shape(parse_transformer("NOPE(x) -> Concept(x, x)"), gs, rs),
        BindError);
    CHECK_THROWS_AS(
        check_transformer_shape(parse_transformer("CONCEPT(x) -> Concept(x, x)"), gs, rs),
        BindError);  // node arity
    CHECK_THROWS_AS(
        check_transformer_shape(parse_transformer("CONCEPT(x, y) -> Concept(x)"), gs, rs),
        BindError);  // head arity
}

TEST_CASE("apply_transformer properties") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);
    Rng rng(test_seed() + 5);

    for (int iter = 0; iter < 40; ++iter) {
        GraphInstance g = random_instance(rng, gs, 3, 3, 3);
        GroundFactSet facts = ground_graph(gs, g);

        // Minimal-model output satisfies every rule as an implication.
        RelInstance out = apply_transformer(sdt.sdt, facts, sdt.induced_schema);
        CHECK(satisfies_rules(sdt.sdt, facts, out));

        // Functional semantics: the image is equivalent to itself modulo phi.
        CHECK(check_equiv_mod(sdt.sdt, gs, g, sdt.induced_schema, out));

        // Rule order does not matter up to bag equality per table.
        Transformer shuffled = sdt.sdt;
        std::shuffle(shuffled.rules.begin(), shuffled.rules.end(), rng.eng);
        CHECK(rel_instance_equal(out,
                                 apply_transformer(shuffled, facts, sdt.induced_schema)));

        // Monotone: adding source facts never removes output rows.
        GraphInstance bigger = g;
        GraphInstance extra = random_instance(rng, gs, 2, 0, 3);
        ElemId base = 1000 + iter * 100;
        for (auto n : extra.nodes) {
            n.id += base;
            n.props[gs.default_key_of(n.label)] =
                Value(100 + static_cast<std::int64_t>(n.id));
            bigger.nodes.push_back(n);
        }
        RelInstance out2 = apply_transformer(sdt.sdt, ground_graph(gs, bigger),
                                             sdt.induced_schema);
        for (const auto& t : out.tables) {
            const auto* t2 = out2.find(t.name);
            REQUIRE(t2 != nullptr);
            for (const auto& row : t.rows) {
                bool found = false;
                for (const auto& row2 : t2->rows)
                    if (grouping_eq(row, row2)) { found = true; break; }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("head multiplicity is one row per distinct head valuation per rule") {
    // Two body witnesses with the same head valuation collapse to one row;
    // a second rule producing the same row adds a bag duplicate.
    RelSchema rs;
    rs.relations.push_back({"Out", {"a"}});
    Transformer phi = parse_transformer("P(x, _) -> Out(x)\nQ(x) -> Out(x)");
    GroundFactSet src;
    src.facts.push_back({"P", {I(1), I(10)}});
    src.facts.push_back({"P", {I(1), I(20)}});
    src.facts.push_back({"Q", {I(1)}});
    RelInstance out = apply_transformer(phi, src, rs);
    REQUIRE(out.find("Out") != nullptr);
    CHECK(out.find("Out")->rows == std::vector<Row>{{I(1)}, {I(1)}});
}
