#include "graphiti/instance.hpp"

#include <algorithm>
#include <set>

namespace graphiti {

const GraphInstance::Node* GraphInstance::find_node(ElemId id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

const GraphInstance::Edge* GraphInstance::find_edge(ElemId id) const {
    for (const auto& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

void GraphInstance::normalize() {
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
}

static void check_props(const GraphSchema& schema, const std::string& label,
                        const std::map<std::string, Value>& props, ElemId id,
                        std::vector<Violation>& out) {
    const auto& keys = schema.keys_of(label);
    for (const auto& k : keys)
        if (!props.count(k))
            out.push_back({"element " + std::to_string(id) + " misses key '" + k + "'"});
    for (const auto& [k, v] : props) {
        (void)v;
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            out.push_back({"element " + std::to_string(id) + " has extra key '" + k + "'"});
    }
}

std::vector<Violation> validate_graph_instance(const GraphSchema& schema,
                                               const GraphInstance& g) {
    std::vector<Violation> out;
    std::set<ElemId> ids;
    for (const auto& n : g.nodes)
        if (!ids.insert(n.id).second)
            out.push_back({"duplicate element id " + std::to_string(n.id)});
    for (const auto& e : g.edges)
        if (!ids.insert(e.id).second)
            out.push_back({"duplicate element id " + std::to_string(e.id)});

    // Per-type default key registry: values must be non-Null and unique.
    std::map<std::string, std::vector<Value>> defaults;

    for (const auto& n : g.nodes) {
        const NodeType* t = schema.find_node(n.label);
        if (!t) {
            out.push_back({"node " + std::to_string(n.id) + " has unknown label '" + n.label +
                           "'"});
            continue;
        }
        check_props(schema, n.label, n.props, n.id, out);
        auto it = n.props.find(t->default_key());
        if (it != n.props.end()) {
            if (it->second.is_null())
                out.push_back({"default key " + n.label + "." + t->default_key() +
                               " is Null on node " + std::to_string(n.id)});
            else
                defaults[n.label].push_back(it->second);
        }
    }
    for (const auto& e : g.edges) {
        const EdgeType* t = schema.find_edge(e.label);
        if (!t) {
            out.push_back({"edge " + std::to_string(e.id) + " has unknown label '" + e.label +
                           "'"});
            continue;
        }
        check_props(schema, e.label, e.props, e.id, out);
        const auto* src = g.find_node(e.src);
        const auto* tgt = g.find_node(e.tgt);
        if (!src)
            out.push_back({"edge " + std::to_string(e.id) + " has dangling source"});
        else if (src->label != t->src_label)
            out.push_back({"edge " + std::to_string(e.id) + " source label '" + src->label +
                           "' does not match type '" + t->src_label + "'"});
        if (!tgt)
            out.push_back({"edge " + std::to_string(e.id) + " has dangling target"});
        else if (tgt->label != t->tgt_label)
            out.push_back({"edge " + std::to_string(e.id) + " target label '" + tgt->label +
                           "' does not match type '" + t->tgt_label + "'"});
        auto it = e.props.find(t->default_key());
        if (it != e.props.end()) {
            if (it->second.is_null())
                out.push_back({"default key " + e.label + "." + t->default_key() +
                               " is Null on edge " + std::to_string(e.id)});
            else
                defaults[e.label].push_back(it->second);
        }
    }
    for (auto& [label, vals] : defaults) {
        std::sort(vals.begin(), vals.end(), value_less);
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (vals[i] == vals[i - 1])
                out.push_back({"default key not unique for label '" + label + "' (value " +
                               to_string(vals[i]) + ")"});
    }
    return out;
}

const RelInstance::Table* RelInstance::find(const std::string& name) const {
    for (const auto& t : tables)
        if (t.name == name) return &t;
    return nullptr;
}

RelInstance::Table& RelInstance::get_or_create(const std::string& name,
                                               const std::vector<std::string>& attrs) {
    for (auto& t : tables)
        if (t.name == name) return t;
    tables.push_back({name, attrs, {}});
    return tables.back();
}

std::vector<Violation> check_rel_integrity(const RelSchema& schema, const RelInstance& d) {
    std::vector<Violation> out;
    for (const auto& t : d.tables) {
        const Relation* r = schema.find(t.name);
        if (!r) {
            out.push_back({"unknown relation '" + t.name + "'"});
            continue;
        }
        if (t.attrs != r->attrs) {
            out.push_back({"relation '" + t.name + "' attribute list mismatch"});
            continue;
        }
        for (const auto& row : t.rows)
            if (row.size() != t.attrs.size())
                out.push_back({"relation '" + t.name + "' has a row of wrong arity"});
    }
    auto column = [&](const std::string& rel, const std::string& attr) {
        std::vector<Value> vals;
        const auto* t = d.find(rel);
        if (!t) return vals;
        auto idx = schema.require(rel).attr_index(attr);
        if (!idx) return vals;
        for (const auto& row : t->rows)
            if (row.size() > *idx) vals.push_back(row[*idx]);
        return vals;
    };
    for (const auto& pk : schema.xi.pks) {
        auto vals = column(pk.rel, pk.attr);
        std::sort(vals.begin(), vals.end(), value_less);
        for (std::size_t i = 1; i < vals.size(); ++i)
            if (vals[i] == vals[i - 1])
                out.push_back({"PK violated: " + pk.rel + "." + pk.attr + " repeats " +
                               to_string(vals[i])});
    }
    for (const auto& fk : schema.xi.fks) {
        auto vals = column(fk.rel, fk.attr);
        auto refs = column(fk.ref_rel, fk.ref_attr);
        for (const auto& v : vals) {
            if (v.is_null()) continue;
            bool found = false;
            for (const auto& r : refs)
                if (r == v) { found = true; break; }
            if (!found)
                out.push_back({"FK violated: " + fk.rel + "." + fk.attr + " = " + to_string(v) +
                               " has no match in " + fk.ref_rel + "." + fk.ref_attr});
        }
    }
    for (const auto& nn : schema.xi.not_nulls)
        for (const auto& v : column(nn.rel, nn.attr))
            if (v.is_null())
                out.push_back({"NotNull violated: " + nn.rel + "." + nn.attr});
    return out;
}

static std::map<Row, int, bool (*)(const Row&, const Row&)> row_bag(
    const std::vector<Row>& rows) {
    std::map<Row, int, bool (*)(const Row&, const Row&)> bag(row_less);
    for (const auto& r : rows) bag[r]++;
    return bag;
}

bool rel_instance_equal(const RelInstance& a, const RelInstance& b) {
    auto names = [](const RelInstance& d) {
        std::set<std::string> s;
        for (const auto& t : d.tables) s.insert(t.name);
        return s;
    };
    std::set<std::string> na = names(a);
    for (const auto& name : na) {
        const auto* ta = a.find(name);
        const auto* tb = b.find(name);
        std::vector<Row> ra = ta ? ta->rows : std::vector<Row>{};
        std::vector<Row> rb = tb ? tb->rows : std::vector<Row>{};
        if (ta && tb && !ta->rows.empty() && !tb->rows.empty() && ta->attrs != tb->attrs)
            return false;
        if (row_bag(ra) != row_bag(rb)) return false;
    }
    for (const auto& name : names(b)) {
        if (na.count(name)) continue;
        const auto* tb = b.find(name);
        if (tb && !tb->rows.empty()) return false;
    }
    return true;
}

}  // namespace graphiti
