#pragma once

#include <string>

#include "graphiti/cypher_ast.hpp"

namespace graphiti {
namespace cypher {

/// Parses the textual Cypher subset:
///   MATCH / OPTIONAL MATCH / WHERE / WITH a AS b / RETURN e AS k /
///   ORDER BY k [ASC|DESC] / UNION [ALL]
/// Patterns are `(x:L)-[e:R]->(y:M)` with `<-` and `-` for direction;
/// `{key: value}` inline filters desugar into the WHERE predicate;
/// COUNT(*) desugars to Count of the literal 1. Throws ParseError.
QueryPtr parse_cypher(const std::string& text);

}  // namespace cypher
}  // namespace graphiti
