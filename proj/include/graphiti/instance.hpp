#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphiti/schema.hpp"
#include "graphiti/value.hpp"

namespace graphiti {

using ElemId = std::int64_t;

/// In-memory property graph. Element ids are unique across nodes and edges.
struct GraphInstance {
    struct Node {
        ElemId id;
        std::string label;
        std::map<std::string, Value> props;
    };
    struct Edge {
        ElemId id;
        std::string label;
        ElemId src;
        ElemId tgt;
        std::map<std::string, Value> props;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;

    const Node* find_node(ElemId id) const;
    const Edge* find_edge(ElemId id) const;

    /// Sorts nodes and edges by id so iteration order is deterministic.
    void normalize();
};

struct Violation {
    std::string message;
};

/// Checks every instance-level invariant against the schema and returns the
/// violations (an empty list means the instance is valid). Violations are
/// data, not failures.
std::vector<Violation> validate_graph_instance(const GraphSchema& schema,
                                               const GraphInstance& g);

/// Bag-semantics relational instance; rows listed in attribute order.
struct RelInstance {
    struct Table {
        std::string name;
        std::vector<std::string> attrs;
        std::vector<Row> rows;
    };

    std::vector<Table> tables;

    const Table* find(const std::string& name) const;
    Table& get_or_create(const std::string& name, const std::vector<std::string>& attrs);
};

/// Checks rows conform to the schema and the integrity constraint holds
/// (PK uniqueness under grouping equality, FK membership, NotNull).
std::vector<Violation> check_rel_integrity(const RelSchema& schema, const RelInstance& d);

/// Bag equality of two instances, table by table, by name (attribute lists
/// must match exactly; no column bijection).
bool rel_instance_equal(const RelInstance& a, const RelInstance& b);

}  // namespace graphiti
