#include "doctest.h"

#include "graphiti/json_io.hpp"
#include "support/fixtures.hpp"

using namespace graphiti;
using namespace graphiti::test;

TEST_CASE("graph schema invariants") {
    GraphSchema gs = fx_graph_schema("fig2_graph_schema.json");
    CHECK(gs.node_types.size() == 3);
    CHECK(gs.edge_types.size() == 2);
    CHECK(*gs.key_owner("CID") == "CONCEPT");
    CHECK(gs.key_owner("nope") == nullptr);

    GraphSchema bad = gs;
    bad.node_types.push_back({"OTHER", {"CID"}});  // duplicate key in the schema
    CHECK_THROWS_AS(bad.validate(), BindError);
    bad = gs;
    bad.edge_types.push_back({"X", "CONCEPT", "MISSING", {"k9"}});
    CHECK_THROWS_AS(bad.validate(), BindError);
}

TEST_CASE("instance validation") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");

    CHECK(validate_graph_instance(gs, GraphInstance{}).empty());
    CHECK(validate_graph_instance(gs, fx_graph_instance("ex52_graph_instance.json")).empty());

    GraphInstance dup = fx_graph_instance("ex52_graph_instance.json");
    for (auto& n : dup.nodes)
        if (n.label == "EMP") n.props["id"] = I(1);
    auto violations = validate_graph_instance(gs, dup);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().message.find("default key not unique") != std::string::npos);

    GraphInstance dangling = fx_graph_instance("ex52_graph_instance.json");
    dangling.edges[0].tgt = 99;
    CHECK_FALSE(validate_graph_instance(gs, dangling).empty());

    GraphInstance wrong_label = fx_graph_instance("ex52_graph_instance.json");
    wrong_label.edges[0].tgt = wrong_label.edges[0].src;  // EMP where DEPT expected
    CHECK_FALSE(validate_graph_instance(gs, wrong_label).empty());

    GraphInstance missing_key = fx_graph_instance("ex52_graph_instance.json");
    missing_key.nodes[0].props.erase("name");
    CHECK_FALSE(validate_graph_instance(gs, missing_key).empty());
}

TEST_CASE("relational integrity") {
    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    RelInstance d = fx_rel_instance("fig3_rel_instance.json");
    CHECK(check_rel_integrity(rs, d).empty());

    RelInstance pk_dup = d;
    for (auto& t : pk_dup.tables)
        if (t.name == "Sentence") t.rows.push_back({I(0), I(7)});
    CHECK_FALSE(check_rel_integrity(rs, pk_dup).empty());

    RelInstance fk_bad = d;
    for (auto& t : fk_bad.tables)
        if (t.name == "Pa") t.rows.push_back({I(9), I(7)});  // CSID 7 has no Cs row
    CHECK_FALSE(check_rel_integrity(rs, fk_bad).empty());

    RelSchema with_nn = rs;
    with_nn.xi.not_nulls.push_back({"Concept", "NAME"});
    RelInstance nn = d;
    for (auto& t : nn.tables)
        if (t.name == "Concept") t.rows.push_back({I(3), N()});
    CHECK_FALSE(check_rel_integrity(with_nn, nn).empty());
}

TEST_CASE("rel instance bag equality") {
    RelInstance d = fx_rel_instance("fig3_rel_instance.json");
    RelInstance d2 = d;
    std::swap(d2.tables[0], d2.tables[1]);  // table order does not matter
    std::reverse(d2.tables[0].rows.begin(), d2.tables[0].rows.end());
    CHECK(rel_instance_equal(d, d2));

    RelInstance shrunk = d;
    for (auto& t : shrunk.tables)
        if (t.name == "Cs") t.rows.pop_back();
    CHECK_FALSE(rel_instance_equal(d, shrunk));

    // Missing tables count as empty.
    RelInstance empty1, empty2;
    empty2.tables.push_back({"Concept", {"CID", "NAME"}, {}});
    CHECK(rel_instance_equal(empty1, empty2));
}

TEST_CASE("JSON round-trips") {
    auto same_json = [](const Json& a, const Json& b) { return a.dump() == b.dump(); };

    Json gsj = Json::parse(fixture_text("fig2_graph_schema.json"));
    CHECK(same_json(to_json(graph_schema_from_json(gsj)), to_json(graph_schema_from_json(
                                                              to_json(graph_schema_from_json(gsj))))));

    GraphInstance g = fx_graph_instance("fig3_graph_instance.json");
    CHECK(same_json(to_json(g), to_json(graph_instance_from_json(to_json(g)))));

    RelSchema rs = fx_rel_schema("fig2_rel_schema.json");
    CHECK(same_json(to_json(rs), to_json(rel_schema_from_json(to_json(rs)))));

    RelInstance d = fx_rel_instance("fig3_rel_instance.json");
    CHECK(same_json(to_json(d), to_json(rel_instance_from_json(to_json(d)))));

    ResultTable t;
    t.columns = {"a", "b"};
    t.rows = {{I(1), N()}, {S("x"), B(true)}};
    t.ordered = true;
    CHECK(same_json(to_json(t), to_json(result_table_from_json(to_json(t)))));

    CHECK(value_from_json(Json(nullptr)).is_null());
    CHECK_THROWS(value_from_json(Json(1.5)));
}
