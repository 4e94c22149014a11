#include "support/fixtures.hpp"

#include <algorithm>

namespace graphiti::test {

std::string fixture_path(const std::string& name) {
    return std::string(GRAPHITI_FIXTURE_DIR) + "/paper/" + name;
}

std::string fixture_text(const std::string& name) { return read_file(fixture_path(name)); }

GraphSchema fx_graph_schema(const std::string& name) {
    return graph_schema_from_json(Json::parse(fixture_text(name)));
}

RelSchema fx_rel_schema(const std::string& name) {
    return rel_schema_from_json(Json::parse(fixture_text(name)));
}

GraphInstance fx_graph_instance(const std::string& name) {
    return graph_instance_from_json(Json::parse(fixture_text(name)));
}

RelInstance fx_rel_instance(const std::string& name) {
    return rel_instance_from_json(Json::parse(fixture_text(name)));
}

cypher::QueryPtr fx_cypher(const std::string& name) {
    return cypher::parse_cypher(fixture_text(name));
}

sql::QueryPtr fx_sql(const std::string& name) { return sql::parse_sql(fixture_text(name)); }

Transformer fx_transformer(const std::string& name) {
    return parse_transformer(fixture_text(name));
}

bool same_rows(const ResultTable& t, std::vector<Row> expected) {
    std::vector<Row> got = t.rows;
    std::sort(got.begin(), got.end(), row_less);
    std::sort(expected.begin(), expected.end(), row_less);
    if (got.size() != expected.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (!grouping_eq(got[i], expected[i])) return false;
    return true;
}

}  // namespace graphiti::test
