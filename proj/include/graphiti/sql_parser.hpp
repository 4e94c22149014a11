#pragma once

#include <string>

#include "graphiti/sql_ast.hpp"

namespace graphiti {
namespace sql {

/// Parses the textual SQL subset:
///   SELECT [DISTINCT] items|* FROM sources [WHERE p]
///     [GROUP BY exprs [HAVING p]] [UNION [ALL] ...] [ORDER BY a [ASC|DESC]]
/// with WITH-CTEs, comma/CROSS/INNER/LEFT/RIGHT/FULL joins, IN value lists
/// and IN (subquery) row membership. DISTINCT desugars to a self set-union;
/// COUNT(*) desugars to Count of the literal 1. Throws ParseError.
QueryPtr parse_sql(const std::string& text);

/// Pretty-printer; emits text that re-parses to the identical AST.
std::string print_sql(const Query& q);

}  // namespace sql
}  // namespace graphiti
