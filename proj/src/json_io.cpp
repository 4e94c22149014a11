#include "graphiti/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace graphiti {

Json to_json(const Value& v) {
    switch (v.kind()) {
        case ValueKind::Null: return nullptr;
        case ValueKind::Int: return v.as_int();
        case ValueKind::Str: return v.as_str();
        case ValueKind::Bool: return v.as_bool();
    }
    return nullptr;
}

Value value_from_json(const Json& j) {
    if (j.is_null()) return Value::null();
    if (j.is_boolean()) return Value(j.get<bool>());
    if (j.is_number_integer()) return Value(j.get<std::int64_t>());
    if (j.is_number_float()) {
        double d = j.get<double>();
        if (std::floor(d) != d) throw Error("non-integer number in JSON value");
        return Value(static_cast<std::int64_t>(d));
    }
    if (j.is_string()) return Value(j.get<std::string>());
    throw Error("unsupported JSON value: " + j.dump());
}

Json to_json(const GraphSchema& s) {
    Json nodes = Json::array();
    for (const auto& n : s.node_types) nodes.push_back({{"label", n.label}, {"keys", n.keys}});
    Json edges = Json::array();
    for (const auto& e : s.edge_types)
        edges.push_back(
            {{"label", e.label}, {"src", e.src_label}, {"tgt", e.tgt_label}, {"keys", e.keys}});
    return {{"nodeTypes", nodes}, {"edgeTypes", edges}};
}

GraphSchema graph_schema_from_json(const Json& j) {
    GraphSchema s;
    for (const auto& n : j.at("nodeTypes"))
        s.node_types.push_back({n.at("label").get<std::string>(),
                                n.at("keys").get<std::vector<std::string>>()});
    for (const auto& e : j.value("edgeTypes", Json::array()))
        s.edge_types.push_back({e.at("label").get<std::string>(), e.at("src").get<std::string>(),
                                e.at("tgt").get<std::string>(),
                                e.at("keys").get<std::vector<std::string>>()});
    s.validate();
    return s;
}

Json to_json(const RelSchema& s) {
    Json rels = Json::array();
    for (const auto& r : s.relations) rels.push_back({{"name", r.name}, {"attrs", r.attrs}});
    Json pks = Json::array();
    for (const auto& pk : s.xi.pks) pks.push_back({{"rel", pk.rel}, {"attr", pk.attr}});
    Json fks = Json::array();
    for (const auto& fk : s.xi.fks)
        fks.push_back({{"rel", fk.rel},
                       {"attr", fk.attr},
                       {"refRel", fk.ref_rel},
                       {"refAttr", fk.ref_attr}});
    Json nns = Json::array();
    for (const auto& nn : s.xi.not_nulls) nns.push_back({{"rel", nn.rel}, {"attr", nn.attr}});
    return {{"relations", rels},
            {"constraints", {{"pk", pks}, {"fk", fks}, {"notNull", nns}}}};
}

RelSchema rel_schema_from_json(const Json& j) {
    RelSchema s;
    for (const auto& r : j.at("relations"))
        s.relations.push_back(
            {r.at("name").get<std::string>(), r.at("attrs").get<std::vector<std::string>>()});
    if (j.contains("constraints")) {
        const Json& c = j.at("constraints");
        for (const auto& pk : c.value("pk", Json::array()))
            s.xi.pks.push_back({pk.at("rel").get<std::string>(), pk.at("attr").get<std::string>()});
        for (const auto& fk : c.value("fk", Json::array()))
            s.xi.fks.push_back({fk.at("rel").get<std::string>(), fk.at("attr").get<std::string>(),
                                fk.at("refRel").get<std::string>(),
                                fk.at("refAttr").get<std::string>()});
        for (const auto& nn : c.value("notNull", Json::array()))
            s.xi.not_nulls.push_back(
                {nn.at("rel").get<std::string>(), nn.at("attr").get<std::string>()});
    }
    s.validate();
    return s;
}

static Json props_to_json(const std::map<std::string, Value>& props) {
    Json out = Json::object();
    for (const auto& [k, v] : props) out[k] = to_json(v);
    return out;
}

static std::map<std::string, Value> props_from_json(const Json& j) {
    std::map<std::string, Value> out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = value_from_json(it.value());
    return out;
}

Json to_json(const GraphInstance& g) {
    Json nodes = Json::array();
    for (const auto& n : g.nodes)
        nodes.push_back({{"id", n.id}, {"label", n.label}, {"props", props_to_json(n.props)}});
    Json edges = Json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"id", e.id},
                         {"label", e.label},
                         {"src", e.src},
                         {"tgt", e.tgt},
                         {"props", props_to_json(e.props)}});
    return {{"nodes", nodes}, {"edges", edges}};
}

GraphInstance graph_instance_from_json(const Json& j) {
    GraphInstance g;
    for (const auto& n : j.value("nodes", Json::array()))
        g.nodes.push_back({n.at("id").get<ElemId>(), n.at("label").get<std::string>(),
                           props_from_json(n.value("props", Json::object()))});
    for (const auto& e : j.value("edges", Json::array()))
        g.edges.push_back({e.at("id").get<ElemId>(), e.at("label").get<std::string>(),
                           e.at("src").get<ElemId>(), e.at("tgt").get<ElemId>(),
                           props_from_json(e.value("props", Json::object()))});
    g.normalize();
    return g;
}

Json to_json(const RelInstance& d) {
    Json tables = Json::array();
    for (const auto& t : d.tables) {
        Json rows = Json::array();
        for (const auto& row : t.rows) {
            Json r = Json::array();
            for (const auto& v : row) r.push_back(to_json(v));
            rows.push_back(r);
        }
        tables.push_back({{"name", t.name}, {"attrs", t.attrs}, {"rows", rows}});
    }
    return {{"tables", tables}};
}

RelInstance rel_instance_from_json(const Json& j) {
    RelInstance d;
    for (const auto& t : j.value("tables", Json::array())) {
        RelInstance::Table table;
        table.name = t.at("name").get<std::string>();
        table.attrs = t.at("attrs").get<std::vector<std::string>>();
        for (const auto& row : t.value("rows", Json::array())) {
            Row r;
            for (const auto& v : row) r.push_back(value_from_json(v));
            if (r.size() != table.attrs.size())
                throw Error("row arity mismatch in table '" + table.name + "'");
            table.rows.push_back(std::move(r));
        }
        d.tables.push_back(std::move(table));
    }
    return d;
}

Json to_json(const ResultTable& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(to_json(v));
        rows.push_back(r);
    }
    return {{"columns", t.columns}, {"ordered", t.ordered}, {"rows", rows}};
}

ResultTable result_table_from_json(const Json& j) {
    ResultTable t;
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.ordered = j.value("ordered", false);
    for (const auto& row : j.value("rows", Json::array())) {
        Row r;
        for (const auto& v : row) r.push_back(value_from_json(v));
        t.rows.push_back(std::move(r));
    }
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file '" + path + "'");
    out << content;
}

}  // namespace graphiti
