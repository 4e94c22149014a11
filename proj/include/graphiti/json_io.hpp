#pragma once

#include <string>

#include "json.hpp"

#include "graphiti/instance.hpp"
#include "graphiti/result_table.hpp"
#include "graphiti/schema.hpp"

namespace graphiti {

using Json = nlohmann::json;

// JSON shapes are documented in FORMATS.md and stable across releases.
// Null is encoded as JSON null.

Json to_json(const Value& v);
Value value_from_json(const Json& j);

Json to_json(const GraphSchema& s);
GraphSchema graph_schema_from_json(const Json& j);

Json to_json(const RelSchema& s);
RelSchema rel_schema_from_json(const Json& j);

Json to_json(const GraphInstance& g);
GraphInstance graph_instance_from_json(const Json& j);

Json to_json(const RelInstance& d);
RelInstance rel_instance_from_json(const Json& j);

Json to_json(const ResultTable& t);
ResultTable result_table_from_json(const Json& j);

/// Reads a whole file; throws Error when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace graphiti
