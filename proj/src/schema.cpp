#include "graphiti/schema.hpp"

#include <algorithm>
#include <set>

namespace graphiti {

void GraphSchema::validate() const {
    std::set<std::string> labels;
    std::set<std::string> keys;
    auto add_keys = [&](const std::string& label, const std::vector<std::string>& ks) {
        if (ks.empty()) throw BindError("type '" + label + "' has no property keys");
        std::set<std::string> local(ks.begin(), ks.end());
        if (local.size() != ks.size())
            throw BindError("type '" + label + "' repeats a property key");
        for (const auto& k : ks)
            if (!keys.insert(k).second)
                throw BindError("property key '" + k + "' is not unique in the schema");
    };
    for (const auto& n : node_types) {
        if (!labels.insert(n.label).second)
            throw BindError("duplicate label '" + n.label + "'");
        add_keys(n.label, n.keys);
    }
    for (const auto& e : edge_types) {
        if (!labels.insert(e.label).second)
            throw BindError("duplicate label '" + e.label + "'");
        add_keys(e.label, e.keys);
        if (!find_node(e.src_label))
            throw BindError("edge type '" + e.label + "' has unknown source label '" +
                            e.src_label + "'");
        if (!find_node(e.tgt_label))
            throw BindError("edge type '" + e.label + "' has unknown target label '" +
                            e.tgt_label + "'");
    }
}

const NodeType* GraphSchema::find_node(const std::string& label) const {
    for (const auto& n : node_types)
        if (n.label == label) return &n;
    return nullptr;
}

const EdgeType* GraphSchema::find_edge(const std::string& label) const {
    for (const auto& e : edge_types)
        if (e.label == label) return &e;
    return nullptr;
}

const std::string* GraphSchema::key_owner(const std::string& key) const {
    for (const auto& n : node_types)
        if (std::find(n.keys.begin(), n.keys.end(), key) != n.keys.end()) return &n.label;
    for (const auto& e : edge_types)
        if (std::find(e.keys.begin(), e.keys.end(), key) != e.keys.end()) return &e.label;
    return nullptr;
}

const std::vector<std::string>& GraphSchema::keys_of(const std::string& label) const {
    if (const auto* n = find_node(label)) return n->keys;
    if (const auto* e = find_edge(label)) return e->keys;
    throw BindError("unknown label '" + label + "'");
}

const PkAtom* IntegrityConstraint::pk_of(const std::string& rel) const {
    for (const auto& pk : pks)
        if (pk.rel == rel) return &pk;
    return nullptr;
}

std::optional<std::size_t> Relation::attr_index(const std::string& attr) const {
    for (std::size_t i = 0; i < attrs.size(); ++i)
        if (attrs[i] == attr) return i;
    return std::nullopt;
}

void RelSchema::validate() const {
    std::set<std::string> names;
    for (const auto& r : relations) {
        if (!names.insert(r.name).second)
            throw BindError("duplicate relation '" + r.name + "'");
        std::set<std::string> attrs(r.attrs.begin(), r.attrs.end());
        if (attrs.size() != r.attrs.size())
            throw BindError("relation '" + r.name + "' repeats an attribute");
    }
    std::set<std::string> pk_rels;
    for (const auto& pk : xi.pks) {
        if (!pk_rels.insert(pk.rel).second)
            throw BindError("relation '" + pk.rel + "' has more than one PK atom");
        const Relation& r = require(pk.rel);
        if (!r.attr_index(pk.attr))
            throw BindError("PK attribute '" + pk.attr + "' not in relation '" + pk.rel + "'");
    }
    for (const auto& fk : xi.fks) {
        const Relation& r = require(fk.rel);
        if (!r.attr_index(fk.attr))
            throw BindError("FK attribute '" + fk.attr + "' not in relation '" + fk.rel + "'");
        require(fk.ref_rel);
        const PkAtom* pk = xi.pk_of(fk.ref_rel);
        if (!pk || pk->attr != fk.ref_attr)
            throw BindError("FK target " + fk.ref_rel + "." + fk.ref_attr +
                            " is not a primary key");
    }
    for (const auto& nn : xi.not_nulls) {
        const Relation& r = require(nn.rel);
        if (!r.attr_index(nn.attr))
            throw BindError("NotNull attribute '" + nn.attr + "' not in relation '" + nn.rel +
                            "'");
    }
}

const Relation* RelSchema::find(const std::string& name) const {
    for (const auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

const Relation& RelSchema::require(const std::string& name) const {
    if (const Relation* r = find(name)) return *r;
    throw BindError("unknown relation '" + name + "'");
}

}  // namespace graphiti
