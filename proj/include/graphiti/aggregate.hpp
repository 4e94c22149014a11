#pragma once

#include <vector>

#include "graphiti/cypher_ast.hpp"
#include "graphiti/value.hpp"

namespace graphiti {

/// Aggregate evaluation shared by both interpreters. All aggregates skip
/// Nulls and return Null when every input is Null (including Count, which
/// therefore is Null rather than 0 on an all-Null column); Avg is Sum/Count
/// over the value domain's integer division.
Value aggregate(cypher::AggKind fn, const std::vector<Value>& values);

}  // namespace graphiti
