#include "doctest.h"

#include <algorithm>

#include "graphiti/cypher_interp.hpp"
#include "graphiti/cypher_parser.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace graphiti;
using namespace graphiti::test;
namespace cy = graphiti::cypher;

namespace {

GraphSchema emp_schema() { return fx_graph_schema("ex51_graph_schema.json"); }
GraphInstance emp_graph() { return fx_graph_instance("ex52_graph_instance.json"); }

}  // namespace

TEST_CASE("parse: example query with aggregate") {
    cy::QueryPtr q = fx_cypher("ex32_cypher.cql");
    const auto& r = std::get<cy::Query::Return>(q->node);
    CHECK(r.names == std::vector<std::string>{"name", "num"});
    const auto& m = std::get<cy::Clause::Match>(r.clause->node);
    REQUIRE(m.pattern.nodes.size() == 2);
    CHECK(m.pattern.nodes[0].var == "n");
    CHECK(m.pattern.nodes[0].label == "EMP");
    CHECK(m.pattern.edges[0].dir == cy::Dir::Fwd);
    CHECK(std::get<cy::Pred::BoolLit>(m.pred->node).v);
    const auto& agg = std::get<cy::Expr::Agg>(r.exprs[1]->node);
    CHECK(agg.fn == cy::AggKind::Count);
}

TEST_CASE("parse: minimal query") {
    cy::QueryPtr q = cy::parse_cypher("MATCH (n:EMP) RETURN n.id AS id");
    const auto& r = std::get<cy::Query::Return>(q->node);
    CHECK(r.names == std::vector<std::string>{"id"});
    const auto& k = std::get<cy::Expr::Key>(r.exprs[0]->node);
    CHECK(k.ref.var == "n");
    CHECK(k.ref.key == "id");
}

TEST_CASE("parse: motivating query has the MatchAfter/With shape") {
    cy::QueryPtr q = fx_cypher("fig4_cypher.cql");
    const auto& r = std::get<cy::Query::Return>(q->node);
    CHECK(r.names == std::vector<std::string>{"c2.CID", "Count(*)"});
    const auto& ma = std::get<cy::Clause::MatchAfter>(r.clause->node);
    const auto& w = std::get<cy::Clause::With>(ma.prev->node);
    CHECK(w.old_vars == std::vector<std::string>{"s"});
    CHECK(w.new_vars == std::vector<std::string>{"s"});
    const auto& first = std::get<cy::Clause::Match>(w.prev->node);
    // Inline {CID: 1} desugars into the predicate.
    const auto& cmp = std::get<cy::Pred::Cmp>(first.pred->node);
    CHECK(std::get<cy::Expr::Key>(cmp.lhs->node).ref.key == "CID");
    // COUNT(*) desugars to Count of the literal 1.
    const auto& agg = std::get<cy::Expr::Agg>(r.exprs[1]->node);
    CHECK(std::get<cy::Expr::Lit>(agg.arg->node).v == I(1));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(cy::parse_cypher("MATCH (n:EMP RETURN n.id"), ParseError);
    CHECK_THROWS_AS(cy::parse_cypher("MATCH (n:EMP) RETURN Med(n.id)"), ParseError);
    try {
        cy::parse_cypher("MATCH (n:EMP)\nRETURN n..id");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("parse: AST JSON round-trip") {
    for (const char* name :
         {"fig4_cypher.cql", "appendix_c_cypher.cql", "optmatch_cypher.cql",
          "appendix_d2_cypher.cql", "appendix_d3_cypher.cql", "ex32_cypher.cql"}) {
        cy::QueryPtr q = fx_cypher(name);
        CHECK(cy::equal(*q, *cy::query_from_json(cy::to_json(*q))));
    }
    Rng rng(test_seed() + 11);
    GraphSchema gs = emp_schema();
    for (int iter = 0; iter < 200; ++iter) {
        cy::QueryPtr q = random_query(rng, gs, 3);
        CHECK(cy::equal(*q, *cy::query_from_json(cy::to_json(*q))));
    }
}

TEST_CASE("match_pattern on the example graph") {
    GraphSchema gs = emp_schema();
    GraphInstance g = emp_graph();

    cy::PathPattern single{{{"m", "DEPT"}}, {}};
    auto bindings = cy::match_pattern(gs, g, single);
    REQUIRE(bindings.size() == 2);
    CHECK(*bindings[0].find("m")->elem == 2);  // CS before EE, element-id order
    CHECK(*bindings[1].find("m")->elem == 3);

    cy::PathPattern path{{{"n", "EMP"}, {"m", "DEPT"}}, {{"e", "WORK_AT", cy::Dir::Fwd}}};
    auto fwd = cy::match_pattern(gs, g, path);
    REQUIRE(fwd.size() == 2);
    for (const auto& b : fwd) CHECK(*b.find("m")->elem == 2);  // both edges point at CS

    path.edges[0].dir = cy::Dir::Bwd;
    CHECK(cy::match_pattern(gs, g, path).empty());

    path.edges[0].dir = cy::Dir::Both;
    CHECK(cy::match_pattern(gs, g, path).size() == 2);
}

TEST_CASE("match_pattern bindings respect labels") {
    GraphSchema gs = emp_schema();
    Rng rng(test_seed() + 2);
    for (int iter = 0; iter < 30; ++iter) {
        GraphInstance g = random_instance(rng, gs, 3, 3, 4);
        cy::PathPattern path{{{"a", "EMP"}, {"b", "DEPT"}}, {{"e", "WORK_AT", cy::Dir::Both}}};
        for (const auto& b : cy::match_pattern(gs, g, path)) {
            CHECK(g.find_node(*b.find("a")->elem)->label == "EMP");
            CHECK(g.find_node(*b.find("b")->elem)->label == "DEPT");
            CHECK(g.find_edge(*b.find("e")->elem)->label == "WORK_AT");
        }
    }
}

TEST_CASE("eval_clause: match, optional match, with") {
    GraphSchema gs = emp_schema();
    GraphInstance g = emp_graph();

    // The two WORK_AT matches of the worked example.
    cy::ClausePtr m = cy::match(
        {{{"n", "EMP"}, {"m", "DEPT"}}, {{"e", "WORK_AT", cy::Dir::Fwd}}}, cy::btrue());
    auto bindings = cy::eval_clause(gs, g, *m);
    REQUIRE(bindings.size() == 2);
    CHECK(*bindings[0].find("n")->elem == 0);
    CHECK(*bindings[1].find("n")->elem == 1);
    CHECK(*bindings[0].find("m")->elem == 2);

    // Renaming preserves bindings.
    cy::ClausePtr w = cy::with(cy::match({{{"n", "EMP"}}, {}}, cy::btrue()), {"n"}, {"p"});
    auto renamed = cy::eval_clause(gs, g, *w);
    REQUIRE(renamed.size() == 2);
    CHECK(renamed[0].find("p") != nullptr);
    CHECK(renamed[0].find("n") == nullptr);

    // Fig. optional-match example: (A, CS) and (B, Null).
    GraphInstance opt = fx_graph_instance("optmatch_graph_instance.json");
    ResultTable t = cy::eval_cypher(gs, opt, *fx_cypher("optmatch_cypher.cql"));
    CHECK(same_rows(t, {{S("A"), S("CS")}, {S("B"), N()}}));
}

TEST_CASE("aggregates over groups with Nulls") {
    GraphSchema gs = emp_schema();
    GraphInstance opt = fx_graph_instance("optmatch_graph_instance.json");
    // m.dnum values across employees: [1, Null].
    cy::QueryPtr q = cy::parse_cypher(
        "MATCH (n:EMP) OPTIONAL MATCH (n:EMP)-[e:WORK_AT]->(m:DEPT) "
        "RETURN Count(m.dnum) AS c, Sum(m.dnum) AS s, Min(m.dnum) AS lo, Max(m.dnum) AS hi");
    ResultTable t = cy::eval_cypher(gs, opt, *q);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0] == Row{I(1), I(1), I(1), I(1)});

    // All-Null input: every aggregate is Null, Count included.
    GraphInstance lonely;
    lonely.nodes.push_back({0, "EMP", {{"id", I(1)}, {"name", S("A")}}});
    ResultTable t2 = cy::eval_cypher(gs, lonely, *q);
    REQUIRE(t2.rows.size() == 1);
    CHECK(t2.rows[0] == Row{N(), N(), N(), N()});

    // Grouping equality treats Null keys as equal: two employees with no
    // department land in one group, not two.
    lonely.nodes.push_back({1, "EMP", {{"id", I(2)}, {"name", S("B")}}});
    ResultTable grouped = cy::eval_cypher(
        gs, lonely,
        *cy::parse_cypher("MATCH (n:EMP) OPTIONAL MATCH (n:EMP)-[e:WORK_AT]->(m:DEPT) "
                          "RETURN m.dname AS d, Count(n.id) AS c"));
    REQUIRE(grouped.rows.size() == 1);
    CHECK(grouped.rows[0] == Row{N(), I(2)});
}

TEST_CASE("eval_cypher on the paper instances") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    GraphInstance g = fx_graph_instance("fig3_graph_instance.json");

    ResultTable motivating = cy::eval_cypher(gs, g, *fx_cypher("fig4_cypher.cql"));
    CHECK(same_rows(motivating, {{I(1), I(4)}}));

    ResultTable corrected = cy::eval_cypher(gs, g, *fx_cypher("appendix_c_cypher.cql"));
    CHECK(same_rows(corrected, {{I(1), I(2)}}));

    ResultTable empty = cy::eval_cypher(emp_schema(), GraphInstance{},
                                        *cy::parse_cypher("MATCH (n:EMP) RETURN n.id AS id"));
    CHECK(empty.columns == std::vector<std::string>{"id"});
    CHECK(empty.rows.empty());
}

TEST_CASE("union, union all, order by") {
    GraphSchema gs = emp_schema();
    GraphInstance g = emp_graph();

    ResultTable u = cy::eval_cypher(
        gs, g,
        *cy::parse_cypher("MATCH (m:DEPT) RETURN m.dnum AS d UNION MATCH (m:DEPT) RETURN "
                          "m.dnum AS d"));
    CHECK(u.rows.size() == 2);  // dedup under grouping equality

    ResultTable ua = cy::eval_cypher(
        gs, g,
        *cy::parse_cypher("MATCH (m:DEPT) RETURN m.dnum AS d UNION ALL MATCH (m:DEPT) RETURN "
                          "m.dnum AS d"));
    CHECK(ua.rows.size() == 4);

    ResultTable ob = cy::eval_cypher(
        gs, g, *cy::parse_cypher("MATCH (n:EMP) RETURN n.id AS id ORDER BY id DESC"));
    CHECK(ob.ordered);
    CHECK(ob.rows == std::vector<Row>{{I(2)}, {I(1)}});
}

TEST_CASE("order by is a stable sorted permutation with Nulls last") {
    GraphSchema gs = emp_schema();
    Rng rng(test_seed() + 3);
    cy::QueryPtr q = cy::parse_cypher(
        "MATCH (n:EMP) OPTIONAL MATCH (n:EMP)-[e:WORK_AT]->(m:DEPT) "
        "RETURN m.dnum AS d, n.id AS id ORDER BY d ASC");
    cy::QueryPtr plain = cy::parse_cypher(
        "MATCH (n:EMP) OPTIONAL MATCH (n:EMP)-[e:WORK_AT]->(m:DEPT) "
        "RETURN m.dnum AS d, n.id AS id");
    for (int iter = 0; iter < 30; ++iter) {
        GraphInstance g = random_instance(rng, gs, 3, 4, 3);
        ResultTable sorted = cy::eval_cypher(gs, g, *q);
        ResultTable unsorted = cy::eval_cypher(gs, g, *plain);

        // Permutation of the unsorted rows.
        auto a = sorted.rows, b = unsorted.rows;
        std::sort(a.begin(), a.end(), row_less);
        std::sort(b.begin(), b.end(), row_less);
        CHECK(a == b);

        // Sorted by the key, Nulls last, and stable among equal keys.
        for (std::size_t i = 1; i < sorted.rows.size(); ++i)
            CHECK_FALSE(value_less(sorted.rows[i][0], sorted.rows[i - 1][0]));
        std::vector<Row> expect = unsorted.rows;
        std::stable_sort(expect.begin(), expect.end(),
                         [](const Row& x, const Row& y) { return value_less(x[0], y[0]); });
        CHECK(sorted.rows == expect);
    }
}

TEST_CASE("exists anchors on head and last variables") {
    GraphSchema gs = emp_schema();
    GraphInstance g = fx_graph_instance("optmatch_graph_instance.json");
    // Employee rows survive only when they actually reach some department.
    cy::QueryPtr q = cy::parse_cypher(
        "MATCH (n:EMP) MATCH (m:DEPT) WHERE EXISTS((n:EMP)-[e:WORK_AT]->(m:DEPT)) "
        "RETURN n.id AS id, m.dnum AS d");
    ResultTable t = cy::eval_cypher(gs, g, *q);
    CHECK(same_rows(t, {{I(1), I(1)}}));  // only A works at CS
}

TEST_CASE("validation rejects malformed queries") {
    GraphSchema gs = emp_schema();
    auto reject = [&](const std::string& text) {
        CHECK_THROWS_AS(cy::validate(gs, *cy::parse_cypher(text)), BindError);
    };
    reject("MATCH (n:NOPE) RETURN n.id AS a");
    reject("MATCH (n:EMP) RETURN n.dname AS a");                       // key of another label
    reject("MATCH (n:EMP) MATCH (n:DEPT) RETURN n.id AS a");           // label clash
    reject("MATCH (n:EMP)-[e:WORK_AT]->(n:DEPT) RETURN n.id AS a");    // repeated pattern var
    reject("MATCH (n:DEPT)-[e:WORK_AT]->(m:EMP) RETURN n.dnum AS a");  // wrong direction
    reject("MATCH (n:EMP) RETURN Count(Count(n.id)) AS a");            // nested aggregate
    reject("MATCH (n:EMP) RETURN n.id AS a ORDER BY b");
    reject("MATCH (n:EMP) RETURN n.id AS a UNION MATCH (m:DEPT) RETURN m.dnum AS a, 1 AS b");
    reject("MATCH (n:EMP) WITH n AS q, n AS r RETURN q.id AS a");      // duplicate old var
    reject("MATCH (n:EMP) WHERE EXISTS((x:EMP)-[e:WORK_AT]->(y:DEPT)) RETURN n.id AS a");
    reject("MATCH (n:EMP) WHERE Count(n.id) > 1 RETURN n.id AS a");    // aggregate in WHERE
}

TEST_CASE("null-padded variables never merge again") {
    GraphSchema gs = emp_schema();
    GraphInstance g = fx_graph_instance("optmatch_graph_instance.json");
    // B's padded m cannot join the second pattern, so B disappears.
    cy::QueryPtr q = cy::parse_cypher(
        "MATCH (n:EMP) OPTIONAL MATCH (n:EMP)-[e:WORK_AT]->(m:DEPT) "
        "MATCH (m:DEPT) RETURN n.name AS nm, m.dname AS dn");
    ResultTable t = cy::eval_cypher(gs, g, *q);
    CHECK(same_rows(t, {{S("A"), S("CS")}}));
}
