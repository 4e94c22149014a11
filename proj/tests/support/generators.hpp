#pragma once

#include <cstdint>
#include <random>

#include "graphiti/cypher_ast.hpp"
#include "graphiti/instance.hpp"
#include "graphiti/result_table.hpp"

namespace graphiti::test {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}
    int pick(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
    bool coin(double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
    }
};

/// Seed from GRAPHITI_SEED when set, else a fixed default.
std::uint64_t test_seed();

/// Grammar-conforming random Cypher query over the given schema, AST depth
/// bounded, valid by construction (anchored EXISTS, consistent labels and
/// scopes, Union arities matched).
cypher::QueryPtr random_query(Rng& rng, const GraphSchema& gs, int depth);

/// Random valid instance: distinct random default keys (not necessarily
/// canonical), random Int properties, type-correct edges.
GraphInstance random_instance(Rng& rng, const GraphSchema& gs, int max_nodes_per_type,
                              int max_edges_per_type, int value_range);

ResultTable random_table(Rng& rng, int cols, int rows, int value_range, bool allow_null);

}  // namespace graphiti::test
