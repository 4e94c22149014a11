#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphiti/error.hpp"

namespace graphiti {

/// Node type: label plus ordered property keys. keys[0] is the default
/// property key, whose values are globally unique among nodes of this type.
struct NodeType {
    std::string label;
    std::vector<std::string> keys;

    const std::string& default_key() const { return keys.front(); }
};

/// Edge type: label, endpoint node labels, ordered property keys.
struct EdgeType {
    std::string label;
    std::string src_label;
    std::string tgt_label;
    std::vector<std::string> keys;

    const std::string& default_key() const { return keys.front(); }
};

class GraphSchema {
public:
    std::vector<NodeType> node_types;
    std::vector<EdgeType> edge_types;

    /// Checks the schema-level invariants: labels pairwise distinct, property
    /// keys unique across the whole schema, every key list non-empty, edge
    /// endpoints name node types. Throws BindError.
    void validate() const;

    const NodeType* find_node(const std::string& label) const;
    const EdgeType* find_edge(const std::string& label) const;
    bool has_label(const std::string& label) const {
        return find_node(label) || find_edge(label);
    }

    /// Property keys are schema-unique, so a key alone identifies its owning
    /// label. Returns nullptr for unknown keys.
    const std::string* key_owner(const std::string& key) const;

    /// Ordered key list of a node or edge label.
    const std::vector<std::string>& keys_of(const std::string& label) const;
    const std::string& default_key_of(const std::string& label) const {
        return keys_of(label).front();
    }
};

struct PkAtom {
    std::string rel;
    std::string attr;
};

struct FkAtom {
    std::string rel;
    std::string attr;
    std::string ref_rel;
    std::string ref_attr;
};

struct NotNullAtom {
    std::string rel;
    std::string attr;
};

/// Conjunction of PK / FK / NotNull atoms.
struct IntegrityConstraint {
    std::vector<PkAtom> pks;
    std::vector<FkAtom> fks;
    std::vector<NotNullAtom> not_nulls;

    const PkAtom* pk_of(const std::string& rel) const;
};

struct Relation {
    std::string name;
    std::vector<std::string> attrs;

    std::optional<std::size_t> attr_index(const std::string& attr) const;
};

class RelSchema {
public:
    std::vector<Relation> relations;
    IntegrityConstraint xi;

    /// Attribute names unique per relation; at most one PK atom per relation;
    /// FK targets are PK attributes of their target relation. Throws BindError.
    void validate() const;

    const Relation* find(const std::string& name) const;
    const Relation& require(const std::string& name) const;
};

}  // namespace graphiti
