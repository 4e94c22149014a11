#pragma once

#include <string>

#include "graphiti/cypher_parser.hpp"
#include "graphiti/json_io.hpp"
#include "graphiti/sql_parser.hpp"
#include "graphiti/transformer.hpp"

namespace graphiti::test {

std::string fixture_path(const std::string& name);
std::string fixture_text(const std::string& name);

GraphSchema fx_graph_schema(const std::string& name);
RelSchema fx_rel_schema(const std::string& name);
GraphInstance fx_graph_instance(const std::string& name);
RelInstance fx_rel_instance(const std::string& name);
cypher::QueryPtr fx_cypher(const std::string& name);
sql::QueryPtr fx_sql(const std::string& name);
Transformer fx_transformer(const std::string& name);

inline Value I(std::int64_t i) { return Value(i); }
inline Value S(const std::string& s) { return Value(s); }
inline Value B(bool b) { return Value(b); }
inline Value N() { return Value::null(); }

/// Bag comparison of result-table rows against expected rows (column order
/// taken as-is; no bijection search).
bool same_rows(const ResultTable& t, std::vector<Row> expected);

}  // namespace graphiti::test
