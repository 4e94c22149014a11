#pragma once

#include <map>
#include <string>

#include "graphiti/instance.hpp"
#include "graphiti/schema.hpp"
#include "graphiti/transformer.hpp"

namespace graphiti {

/// Induced relational schema, standard database transformer, and the
/// label-to-relation mapping.
struct SdtResult {
    RelSchema induced_schema;
    Transformer sdt;
    std::map<std::string, std::string> label_map;

    const std::string& relation_of(const std::string& label) const;
    /// Primary key attribute of the relation induced by `label`.
    const std::string& pk_of(const std::string& label) const;
};

/// Attribute names of the foreign keys added to every edge relation.
inline constexpr const char* kSrcAttr = "SRC";
inline constexpr const char* kTgtAttr = "TGT";

/// One relation per label: node relations carry the node keys, edge relations
/// the edge keys followed by SRC and TGT; the default key becomes the primary
/// key and SRC/TGT reference the endpoint relations' primary keys. Relation
/// names are the lowercased labels (collisions rejected).
SdtResult infer_sdt(const GraphSchema& gs);

/// Convenience composition of infer_sdt and apply_transformer.
RelInstance apply_sdt(const GraphSchema& gs, const GraphInstance& g);

/// Reconstructs the graph from an induced-schema instance: nodes from node
/// tables, edges from edge tables with SRC/TGT resolved through default keys.
/// Throws BindError when d violates the induced integrity constraint.
GraphInstance invert_sdt(const GraphSchema& gs, const RelInstance& d);

/// Isomorphism up to element-id renaming, keyed on default-key values.
bool graph_isomorphic(const GraphSchema& gs, const GraphInstance& a, const GraphInstance& b);

}  // namespace graphiti
