#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "graphiti/enumerate.hpp"
#include "graphiti/json_io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace graphiti;
using namespace graphiti::test;

namespace {

std::vector<GraphInstance> collect(const GraphSchema& gs, const EnumBounds& b) {
    std::vector<GraphInstance> out;
    enumerate_graphs(gs, b, [&](const GraphInstance& g) {
        out.push_back(g);
        return true;
    });
    return out;
}

GraphSchema single_type() {
    GraphSchema gs;
    gs.node_types.push_back({"N", {"k"}});
    return gs;
}

/// Minimal profile of an instance under the canonical encoding.
std::tuple<int, int, std::int64_t> profile_of(const GraphSchema& gs, const GraphInstance& g) {
    std::map<std::string, int> node_counts, edge_counts;
    std::int64_t maxval = 0;
    for (const auto& n : g.nodes) {
        node_counts[n.label]++;
        const auto& keys = gs.keys_of(n.label);
        for (std::size_t k = 1; k < keys.size(); ++k)
            maxval = std::max(maxval, n.props.at(keys[k]).as_int());
    }
    for (const auto& e : g.edges) {
        edge_counts[e.label]++;
        const auto& keys = gs.keys_of(e.label);
        for (std::size_t k = 1; k < keys.size(); ++k)
            maxval = std::max(maxval, e.props.at(keys[k]).as_int());
    }
    int n = 0, e = 0;
    for (auto& [l, c] : node_counts) n = std::max(n, c);
    for (auto& [l, c] : edge_counts) e = std::max(e, c);
    return {n, e, static_cast<int>(maxval) + 1};
}

}  // namespace

TEST_CASE("a single one-key node type yields the empty and the one-node instance") {
    auto got = collect(single_type(), {1, 0, 1, 60});
    REQUIRE(got.size() == 2);
    CHECK(got[0].nodes.empty());
    REQUIRE(got[1].nodes.size() == 1);
    CHECK(got[1].nodes[0].props.at("k") == I(0));  // canonical default key
}

TEST_CASE("all-zero bounds yield exactly the empty instance") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    auto got = collect(gs, {0, 0, 0, 60});
    REQUIRE(got.size() == 1);
    CHECK(got[0].nodes.empty());
    CHECK(got[0].edges.empty());
}

TEST_CASE("enumeration agrees with the naive oracle") {
    GraphSchema emp = fx_graph_schema("ex51_graph_schema.json");
    struct CaseBounds {
        int n, e, v;
    };
    for (CaseBounds cb : {CaseBounds{1, 1, 1}, CaseBounds{1, 1, 2}, CaseBounds{2, 1, 1}}) {
        EnumBounds b{cb.n, cb.e, cb.v, 60};
        auto got = collect(emp, b);
        auto want = naive_enumerate(emp, b);
        CAPTURE(cb.n);
        CAPTURE(cb.e);
        CAPTURE(cb.v);
        CHECK(got.size() == want.size());
    }
    // The documented hand count: empty, 3 single/double-node layouts, 1 edge.
    CHECK(collect(emp, {1, 1, 1, 60}).size() == 5);

    GraphSchema fig2 = fx_graph_schema("fig2_graph_schema.json");
    for (int v : {1, 2}) {
        EnumBounds b{1, 1, v, 60};
        CHECK(collect(fig2, b).size() == naive_enumerate(fig2, b).size());
    }
}

TEST_CASE("enumerated instances are valid, distinct, and deterministic") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    EnumBounds b{2, 1, 2, 60};
    auto first = collect(gs, b);
    auto second = collect(gs, b);
    REQUIRE(first.size() == second.size());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(validate_graph_instance(gs, first[i]).empty());
        std::string enc = to_json(first[i]).dump();
        CHECK(enc == to_json(second[i]).dump());
        CHECK(seen.insert(enc).second);  // encodings are pairwise distinct
    }
    CHECK(first.size() > 10);
}

TEST_CASE("iterative deepening visits profiles in lexicographic order") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    auto got = collect(gs, {2, 2, 2, 60});
    std::tuple<int, int, std::int64_t> last{-1, -1, 0};
    for (const auto& g : got) {
        auto p = profile_of(gs, g);
        CHECK(last <= p);
        last = p;
    }
}

TEST_CASE("early stop works") {
    GraphSchema gs = fx_graph_schema("ex51_graph_schema.json");
    int seen = 0;
    bool exhausted = enumerate_graphs(gs, {2, 2, 2, 60}, [&](const GraphInstance&) {
        return ++seen < 7;
    });
    CHECK_FALSE(exhausted);
    CHECK(seen == 7);

    GraphEnumerator en(gs, {1, 1, 1, 60});
    int pulled = 0;
    while (en.next()) ++pulled;
    CHECK(pulled == 5);
}
