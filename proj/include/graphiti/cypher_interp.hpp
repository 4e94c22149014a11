#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphiti/cypher_ast.hpp"
#include "graphiti/instance.hpp"
#include "graphiti/result_table.hpp"

namespace graphiti {
namespace cypher {

/// One matched subgraph: pattern variables mapped to elements. An element of
/// std::nullopt is a Null-padded variable introduced by OPTIONAL MATCH; all
/// its property keys read as Null and it never joins with anything, itself
/// included.
struct Binding {
    struct Entry {
        std::string var;
        std::string label;
        std::optional<ElemId> elem;
    };
    std::vector<Entry> entries;

    const Entry* find(const std::string& var) const;
};

/// Enumerates the matches of a path pattern; one binding per match, in
/// deterministic element-id order.
std::vector<Binding> match_pattern(const GraphSchema& schema, const GraphInstance& g,
                                   const PathPattern& pp);

std::vector<Binding> eval_clause(const GraphSchema& schema, const GraphInstance& g,
                                 const Clause& c);

/// Expression evaluation over a group of bindings. Non-aggregate leaves read
/// the head binding; aggregates fold over the whole group.
Value eval_expr(const GraphSchema& schema, const GraphInstance& g,
                const std::vector<Binding>& group, const Expr& e);

Tri eval_pred(const GraphSchema& schema, const GraphInstance& g, const Binding& b,
              const Pred& p);

/// The reference interpreter. Validates q against the schema first.
ResultTable eval_cypher(const GraphSchema& schema, const GraphInstance& g, const Query& q);

}  // namespace cypher
}  // namespace graphiti
