#include "doctest.h"

#include "graphiti/check.hpp"
#include "graphiti/cypher_parser.hpp"
#include "graphiti/json_io.hpp"
#include "graphiti/sql_parser.hpp"
#include "graphiti/transpile.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace graphiti;
using namespace graphiti::test;
namespace cy = graphiti::cypher;
namespace sq = graphiti::sql;

TEST_CASE("residual transformer matches the paper's substitution") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);
    Transformer phi = fx_transformer("fig5_transformer.dtl");
    Transformer res = residual_transformer(phi, sdt);

    REQUIRE(res.rules.size() == 5);
    // Body labels become induced relation names; heads and terms are untouched.
    CHECK(res.rules[0].body[0].name == "concept");
    CHECK(res.rules[0].head.name == "Concept");
    CHECK(res.rules[3].body[0].name == "concept");
    CHECK(res.rules[3].body[1].name == "cs");
    CHECK(res.rules[3].body[2].name == "pa");
    CHECK(res.rules[3].head.name == "Cs");
    CHECK(res.rules[4].body[1].name == "sp");
    for (std::size_t i = 0; i < res.rules.size(); ++i) {
        CHECK(res.rules[i].head.name == phi.rules[i].head.name);
        CHECK(res.rules[i].head.terms == phi.rules[i].head.terms);
        for (std::size_t j = 0; j < res.rules[i].body.size(); ++j)
            CHECK(res.rules[i].body[j].terms == phi.rules[i].body[j].terms);
    }

    CHECK(residual_transformer(Transformer{}, sdt).rules.empty());

    // The SDT itself as phi: identity-shaped rules R_l(...) -> R_l(...).
    Transformer res_sdt = residual_transformer(sdt.sdt, sdt);
    for (const auto& r : res_sdt.rules) {
        CHECK(r.body[0].name == r.head.name);
        CHECK(r.body[0].terms == r.head.terms);
    }

    Transformer bad = parse_transformer("NOPE(x) -> Concept(x, x)");
    CHECK_THROWS_AS(residual_transformer(bad, sdt), BindError);
}

TEST_CASE("transpiled queries check out as equivalent modulo the SDT") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);
    Rng rng(test_seed() + 9);
    EnumBounds small{1, 1, 2, 60};
    for (int iter = 0; iter < 5; ++iter) {
        cy::QueryPtr q = random_query(rng, gs, 2);
        sq::QueryPtr translated = transpile_query(sdt, gs, *q);
        CheckVerdict v =
            check_equivalence(gs, *q, sdt.induced_schema, *translated, sdt.sdt, small);
        CHECK(v.kind == VerdictKind::EquivalentUpToBound);
        CHECK(v.instances_enumerated > 0);
    }
}

TEST_CASE("the scaled qa3 pair is refuted with a replayable counterexample") {
    GraphSchema gs = fx_graph_schema("appendix_d3_graph_schema.json");
    RelSchema rs = fx_rel_schema("appendix_d3_rel_schema.json");
    cy::QueryPtr qg = fx_cypher("appendix_d3_check_cypher.cql");
    sq::QueryPtr qr = fx_sql("appendix_d3_check_sql.sql");
    Transformer phi = fx_transformer("appendix_d3_transformer.dtl");

    CheckVerdict v = check_equivalence(gs, *qg, rs, *qr, phi, EnumBounds{});
    REQUIRE(v.kind == VerdictKind::NotEquivalent);
    REQUIRE(v.counterexample.has_value());
    const Counterexample& cx = *v.counterexample;

    // The counterexample replays: instances are related by phi, results differ.
    CHECK(validate_graph_instance(gs, cx.graph).empty());
    CHECK(check_equiv_mod(phi, gs, cx.graph, rs, cx.rel));
    CHECK(check_rel_integrity(rs, cx.rel).empty());
    PairResult pr = eval_pair(gs, cx.graph, rs, cx.rel, *qg, *qr);
    CHECK_FALSE(pr.equivalent);
    CHECK(table_equiv(pr.cypher_result, cx.cypher_result).equivalent);
    CHECK(table_equiv(pr.sql_result, cx.sql_result).equivalent);

    // Determinism: a second run lands on the identical counterexample.
    CheckVerdict v2 = check_equivalence(gs, *qg, rs, *qr, phi, EnumBounds{});
    REQUIRE(v2.counterexample.has_value());
    CHECK(to_json(v2.counterexample->graph).dump() == to_json(cx.graph).dump());

    // Greedy shrinking leaves no removable element.
    CHECK(cx.graph.edges.empty());  // the refutation needs no WORK_AT edge
    CHECK(cx.graph.nodes.size() <= 3);
}

TEST_CASE("eval_pair reports the motivating example values") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    PairResult pr = eval_pair(gs, fx_graph_instance("fig3_graph_instance.json"), rs,
                              fx_rel_instance("fig3_rel_instance.json"),
                              *fx_cypher("fig4_cypher.cql"), *fx_sql("fig4_sql.sql"));
    CHECK(same_rows(pr.cypher_result, {{I(1), I(4)}}));
    CHECK(same_rows(pr.sql_result, {{I(1), I(2)}}));
    CHECK_FALSE(pr.equivalent);
}

TEST_CASE("eval_pair: optional match agrees with a hand-written left join") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);
    GraphInstance g = fx_graph_instance("optmatch_graph_instance.json");
    RelInstance d = apply_sdt(gs, g);
    sq::QueryPtr qr = sq::parse_sql(
        "SELECT e.name, j.dname FROM emp AS e LEFT JOIN "
        "(SELECT w.SRC AS src, d.dname AS dname FROM work_at AS w JOIN dept AS d "
        "ON w.TGT = d.dnum) AS j ON e.id = j.src");
    PairResult pr =
        eval_pair(gs, g, sdt.induced_schema, d, *fx_cypher("optmatch_cypher.cql"), *qr);
    CHECK(pr.equivalent);
    CHECK(same_rows(pr.cypher_result, {{S("A"), S("CS")}, {S("B"), N()}}));
}

TEST_CASE("eval_pair attributes evaluation errors to a side") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    RelSchema rs = infer_sdt(gs).induced_schema;
    try {
        eval_pair(gs, GraphInstance{}, rs, RelInstance{},
                  *cy::parse_cypher("MATCH (n:EMP) RETURN n.id AS a"),
                  *sq::parse_sql("SELECT nope FROM emp"));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("sql:") == 0);
    }
}

TEST_CASE("timeout yields Unknown") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    cy::QueryPtr qg = fx_cypher("appendix_c_cypher.cql");
    sq::QueryPtr qr = fx_sql("fig4_sql.sql");
    Transformer phi = fx_transformer("fig5_transformer.dtl");
    EnumBounds b{3, 3, 3, 0.0};
    CheckVerdict v = check_equivalence(gs, *qg, rs, *qr, phi, b);
    CHECK(v.kind == VerdictKind::Unknown);
    CHECK(v.unknown_reason == "timeout");
}

TEST_CASE("check distinguishes OPTIONAL MATCH from an inner join") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);
    cy::QueryPtr qg = fx_cypher("optmatch_cypher.cql");
    const char* join_body =
        "(SELECT w.SRC AS src, d.dname AS dname FROM work_at AS w JOIN dept AS d "
        "ON w.TGT = d.dnum) AS j ON e.id = j.src";

    sq::QueryPtr left = sq::parse_sql(std::string("SELECT e.name, j.dname FROM emp AS e "
                                                  "LEFT JOIN ") + join_body);
    CheckVerdict ok = check_equivalence(gs, *qg, sdt.induced_schema, *left, sdt.sdt,
                                        EnumBounds{2, 2, 2, 120});
    CHECK(ok.kind == VerdictKind::EquivalentUpToBound);

    sq::QueryPtr inner = sq::parse_sql(std::string("SELECT e.name, j.dname FROM emp AS e "
                                                   "JOIN ") + join_body);
    CheckVerdict bad = check_equivalence(gs, *qg, sdt.induced_schema, *inner, sdt.sdt,
                                         EnumBounds{2, 2, 2, 120});
    REQUIRE(bad.kind == VerdictKind::NotEquivalent);
    // The minimal witness is a single employee with no department edge.
    CHECK(bad.counterexample->graph.edges.empty());
    CHECK(bad.counterexample->graph.nodes.size() == 1);
}

TEST_CASE("enlarging bounds never flips a refutation") {
    GraphSchema gs = fx_graph_schema("appendix_d3_graph_schema.json");
    RelSchema rs = fx_rel_schema("appendix_d3_rel_schema.json");
    cy::QueryPtr qg = fx_cypher("appendix_d3_check_cypher.cql");
    sq::QueryPtr qr = fx_sql("appendix_d3_check_sql.sql");
    Transformer phi = fx_transformer("appendix_d3_transformer.dtl");
    CheckVerdict small = check_equivalence(gs, *qg, rs, *qr, phi, EnumBounds{2, 0, 2, 60});
    REQUIRE(small.kind == VerdictKind::NotEquivalent);
    for (EnumBounds b : {EnumBounds{2, 1, 2, 60}, EnumBounds{2, 2, 3, 60},
                         EnumBounds{3, 2, 3, 120}}) {
        CheckVerdict bigger = check_equivalence(gs, *qg, rs, *qr, phi, b);
        CHECK(bigger.kind == VerdictKind::NotEquivalent);
    }
}

TEST_CASE("composition identity holds on random instances") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    SdtResult sdt = infer_sdt(gs);
    Transformer phi = fx_transformer("fig5_transformer.dtl");
    Transformer residual = residual_transformer(phi, sdt);
    Rng rng(test_seed() + 10);
    for (int iter = 0; iter < 50; ++iter) {
        GraphInstance g = random_instance(rng, gs, 3, 3, 3);
        RelInstance via_sdt = apply_transformer(
            residual, ground_rel(apply_sdt(gs, g)), rs);
        RelInstance direct = apply_transformer(phi, ground_graph(gs, g), rs);
        CHECK(rel_instance_equal(via_sdt, direct));
    }
}
