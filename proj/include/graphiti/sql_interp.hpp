#pragma once

#include <vector>

#include "graphiti/instance.hpp"
#include "graphiti/result_table.hpp"
#include "graphiti/sql_ast.hpp"

namespace graphiti {
namespace sql {

/// Binding check: resolves every attribute reference, enforces aggregate
/// placement (aggregates only inside GroupBy projections and HAVING, never
/// nested), HAVING/projection references to non-grouped attributes, row-IN
/// arities and union arities. Returns the query's output columns.
/// Throws BindError.
std::vector<ColRef> bind_sql(const RelSchema& schema, const Query& q);

/// Bag-semantics evaluation. Base relations missing from the instance read
/// as empty tables of their schema shape.
ResultTable eval_sql(const RelSchema& schema, const RelInstance& d, const Query& q);

/// Evaluation without the binding pass, for callers that bound q once and
/// evaluate it over many instances.
ResultTable eval_sql_unchecked(const RelSchema& schema, const RelInstance& d, const Query& q);

}  // namespace sql
}  // namespace graphiti
