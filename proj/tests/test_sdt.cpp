#include "doctest.h"

#include "graphiti/sdt.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace graphiti;
using namespace graphiti::test;

TEST_CASE("infer_sdt on the worked example schema") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);

    REQUIRE(sdt.induced_schema.relations.size() == 3);
    const Relation& emp = sdt.induced_schema.require("emp");
    CHECK(emp.attrs == std::vector<std::string>{"id", "name"});
    const Relation& dept = sdt.induced_schema.require("dept");
    CHECK(dept.attrs == std::vector<std::string>{"dnum", "dname"});
    const Relation& work = sdt.induced_schema.require("work_at");
    CHECK(work.attrs == std::vector<std::string>{"wid", "SRC", "TGT"});

    REQUIRE(sdt.induced_schema.xi.pks.size() == 3);
    CHECK(sdt.induced_schema.xi.pk_of("emp")->attr == "id");
    CHECK(sdt.induced_schema.xi.pk_of("dept")->attr == "dnum");
    CHECK(sdt.induced_schema.xi.pk_of("work_at")->attr == "wid");

    REQUIRE(sdt.induced_schema.xi.fks.size() == 2);
    CHECK(sdt.induced_schema.xi.fks[0].rel == "work_at");
    CHECK(sdt.induced_schema.xi.fks[0].attr == "SRC");
    CHECK(sdt.induced_schema.xi.fks[0].ref_rel == "emp");
    CHECK(sdt.induced_schema.xi.fks[0].ref_attr == "id");
    CHECK(sdt.induced_schema.xi.fks[1].attr == "TGT");
    CHECK(sdt.induced_schema.xi.fks[1].ref_rel == "dept");

    CHECK(sdt.relation_of("EMP") == "emp");
    CHECK(sdt.pk_of("DEPT") == "dnum");

    // SDT rules are label(keys) -> relation(keys), edges with two extra terms.
    REQUIRE(sdt.sdt.rules.size() == 3);
    const TransformRule& edge_rule = sdt.sdt.rules.back();
    CHECK(edge_rule.body[0].name == "WORK_AT");
    CHECK(edge_rule.head.name == "work_at");
    CHECK(edge_rule.body[0].terms.size() == 3);
    CHECK(edge_rule.body[0].terms == edge_rule.head.terms);
}

TEST_CASE("infer_sdt on the biomedical schema keeps SRC/TGT foreign keys") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);
    const Relation& cs = sdt.induced_schema.require("cs");
    CHECK(cs.attrs == std::vector<std::string>{"ECID", "ECSID", "SRC", "TGT"});
    bool src_to_concept = false, tgt_to_pa = false;
    for (const auto& fk : sdt.induced_schema.xi.fks) {
        if (fk.rel == "cs" && fk.attr == "SRC" && fk.ref_rel == "concept" &&
            fk.ref_attr == "CID")
            src_to_concept = true;
        if (fk.rel == "cs" && fk.attr == "TGT" && fk.ref_rel == "pa" && fk.ref_attr == "PID")
            tgt_to_pa = true;
    }
    CHECK(src_to_concept);
    CHECK(tgt_to_pa);
}

TEST_CASE("infer_sdt corner cases") {
    SdtResult empty = infer_sdt(GraphSchema{});
    CHECK(empty.induced_schema.relations.empty());
    CHECK(empty.sdt.rules.empty());

    GraphSchema clash;
    clash.node_types.push_back({"EMP", {"a"}});
    clash.node_types.push_back({"emp", {"b"}});
    CHECK_THROWS_AS(infer_sdt(clash), BindError);

    GraphSchema reserved;
    reserved.node_types.push_back({"A", {"a"}});
    reserved.edge_types.push_back({"E", "A", "A", {"SRC"}});
    CHECK_THROWS_AS(infer_sdt(reserved), BindError);
}

TEST_CASE("apply_sdt reproduces the example tables cell for cell") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    RelInstance got = apply_sdt(gs, fx_graph_instance("ex52_graph_instance.json"));
    RelInstance want = fx_rel_instance("ex52_rel_instance.json");
    for (const auto& w : want.tables) {
        const auto* g = got.find(w.name);
        REQUIRE(g != nullptr);
        CHECK(g->attrs == w.attrs);
        CHECK(g->rows == w.rows);
    }
    CHECK(got.tables.size() == want.tables.size());

    RelInstance nothing = apply_sdt(gs, GraphInstance{});
    for (const auto& t : nothing.tables) CHECK(t.rows.empty());
}

TEST_CASE("apply_sdt satisfies the induced integrity constraint") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    SdtResult sdt = infer_sdt(gs);
    Rng rng(test_seed() + 6);
    for (int iter = 0; iter < 40; ++iter) {
        GraphInstance g = random_instance(rng, gs, 3, 3, 3);
        RelInstance d = apply_sdt(gs, g);
        CHECK(check_rel_integrity(sdt.induced_schema, d).empty());
        // One row per element of the label.
        for (const auto& n : gs.node_types) {
            std::size_t count = 0;
            for (const auto& node : g.nodes)
                if (node.label == n.label) ++count;
            CHECK(d.find(sdt.relation_of(n.label))->rows.size() == count);
        }
    }
}

TEST_CASE("invert_sdt round-trips") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    GraphInstance g = fx_graph_instance("ex52_graph_instance.json");
    RelInstance d = fx_rel_instance("ex52_rel_instance.json");

    GraphInstance back = invert_sdt(gs, d);
    CHECK(graph_isomorphic(gs, back, g));

    CHECK(invert_sdt(gs, RelInstance{}).nodes.empty());

    // apply_sdt(invert_sdt(d)) == d exactly.
    CHECK(rel_instance_equal(apply_sdt(gs, back), d));

    // Broken foreign key: inversion refuses.
    RelInstance broken = d;
    for (auto& t : broken.tables)
        if (t.name == "work_at") t.rows.push_back({I(12), I(9), I(1)});
    CHECK_THROWS_AS(invert_sdt(gs, broken), BindError);
}

TEST_CASE("invert_sdt round-trips random instances") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    Rng rng(test_seed() + 7);
    for (int iter = 0; iter < 60; ++iter) {
        GraphInstance g = random_instance(rng, gs, 3, 3, 3);
        REQUIRE(validate_graph_instance(gs, g).empty());
        RelInstance d = apply_sdt(gs, g);
        GraphInstance back = invert_sdt(gs, d);
        CHECK(graph_isomorphic(gs, back, g));
        CHECK(rel_instance_equal(apply_sdt(gs, back), d));
    }
}
