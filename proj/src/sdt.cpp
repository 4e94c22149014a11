#include "graphiti/sdt.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace graphiti {

const std::string& SdtResult::relation_of(const std::string& label) const {
    auto it = label_map.find(label);
    if (it == label_map.end()) throw BindError("label '" + label + "' has no induced relation");
    return it->second;
}

const std::string& SdtResult::pk_of(const std::string& label) const {
    const PkAtom* pk = induced_schema.xi.pk_of(relation_of(label));
    if (!pk) throw BindError("relation of '" + label + "' has no primary key");
    return pk->attr;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string fresh_among(std::string base, const std::vector<std::string>& taken) {
    std::string name = base;
    while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "_";
    return name;
}

}  // namespace

SdtResult infer_sdt(const GraphSchema& gs) {
    gs.validate();
    SdtResult out;
    std::set<std::string> names;

    auto add_relation = [&](const std::string& label) -> std::string {
        std::string name = lower(label);
        if (!names.insert(name).second)
            throw BindError("labels '" + label + "' collide after lowercasing");
        out.label_map[label] = name;
        return name;
    };

    for (const auto& n : gs.node_types) {
        std::string name = add_relation(n.label);
        out.induced_schema.relations.push_back({name, n.keys});
        out.induced_schema.xi.pks.push_back({name, n.default_key()});
        TransformRule rule;
        RulePred body{n.label, {}};
        for (const auto& k : n.keys) body.terms.push_back(Term::of_var(k));
        rule.body.push_back(body);
        rule.head = RulePred{name, body.terms};
        out.sdt.rules.push_back(std::move(rule));
    }
    for (const auto& e : gs.edge_types) {
        for (const char* fk : {kSrcAttr, kTgtAttr})
            if (std::find(e.keys.begin(), e.keys.end(), fk) != e.keys.end())
                throw BindError("edge type '" + e.label + "' uses the reserved key '" +
                                std::string(fk) + "'");
        std::string name = add_relation(e.label);
        std::vector<std::string> attrs = e.keys;
        attrs.push_back(kSrcAttr);
        attrs.push_back(kTgtAttr);
        out.induced_schema.relations.push_back({name, attrs});
        out.induced_schema.xi.pks.push_back({name, e.default_key()});

        TransformRule rule;
        RulePred body{e.label, {}};
        std::string src_var = fresh_among("fks", e.keys);
        std::string tgt_var = fresh_among("fkt", e.keys);
        for (const auto& k : e.keys) body.terms.push_back(Term::of_var(k));
        body.terms.push_back(Term::of_var(src_var));
        body.terms.push_back(Term::of_var(tgt_var));
        rule.body.push_back(body);
        rule.head = RulePred{name, body.terms};
        out.sdt.rules.push_back(std::move(rule));
    }
    // FK atoms need the node relations registered first.
    for (const auto& e : gs.edge_types) {
        const std::string& name = out.label_map.at(e.label);
        const std::string& src_rel = out.relation_of(e.src_label);
        const std::string& tgt_rel = out.relation_of(e.tgt_label);
        out.induced_schema.xi.fks.push_back(
            {name, kSrcAttr, src_rel, gs.default_key_of(e.src_label)});
        out.induced_schema.xi.fks.push_back(
            {name, kTgtAttr, tgt_rel, gs.default_key_of(e.tgt_label)});
    }
    out.induced_schema.validate();
    return out;
}

RelInstance apply_sdt(const GraphSchema& gs, const GraphInstance& g) {
    SdtResult sdt = infer_sdt(gs);
    return apply_transformer(sdt.sdt, ground_graph(gs, g), sdt.induced_schema);
}

GraphInstance invert_sdt(const GraphSchema& gs, const RelInstance& d) {
    SdtResult sdt = infer_sdt(gs);
    auto violations = check_rel_integrity(sdt.induced_schema, d);
    if (!violations.empty())
        throw BindError("instance violates the induced integrity constraint: " +
                        violations.front().message);

    GraphInstance g;
    ElemId next_id = 0;
    // (label, default key value) -> node id
    std::map<std::pair<std::string, std::string>, ElemId> by_key;

    for (const auto& n : gs.node_types) {
        const auto* table = d.find(sdt.relation_of(n.label));
        if (!table) continue;
        for (const auto& row : table->rows) {
            GraphInstance::Node node;
            node.id = next_id++;
            node.label = n.label;
            for (std::size_t i = 0; i < n.keys.size(); ++i) node.props[n.keys[i]] = row[i];
            by_key[{n.label, to_string(row[0])}] = node.id;
            g.nodes.push_back(std::move(node));
        }
    }
    for (const auto& e : gs.edge_types) {
        const auto* table = d.find(sdt.relation_of(e.label));
        if (!table) continue;
        std::size_t m = e.keys.size();
        for (const auto& row : table->rows) {
            GraphInstance::Edge edge;
            edge.id = next_id++;
            edge.label = e.label;
            for (std::size_t i = 0; i < m; ++i) edge.props[e.keys[i]] = row[i];
            auto src = by_key.find({e.src_label, to_string(row[m])});
            auto tgt = by_key.find({e.tgt_label, to_string(row[m + 1])});
            if (src == by_key.end() || tgt == by_key.end())
                throw BindError("edge row in '" + table->name +
                                "' references a missing endpoint");
            edge.src = src->second;
            edge.tgt = tgt->second;
            g.edges.push_back(std::move(edge));
        }
    }
    return g;
}

bool graph_isomorphic(const GraphSchema& gs, const GraphInstance& a, const GraphInstance& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
    // Default keys are unique per type, so (label, default value) identifies
    // an element; isomorphism reduces to key-indexed lookup.
    auto node_key = [&](const GraphInstance::Node& n) {
        return std::make_pair(n.label, to_string(n.props.at(gs.default_key_of(n.label))));
    };
    std::map<std::pair<std::string, std::string>, const GraphInstance::Node*> bnodes;
    for (const auto& n : b.nodes) bnodes[node_key(n)] = &n;
    std::map<ElemId, ElemId> node_map;
    for (const auto& n : a.nodes) {
        auto it = bnodes.find(node_key(n));
        if (it == bnodes.end() || it->second->props != n.props) return false;
        node_map[n.id] = it->second->id;
    }
    auto edge_key = [&](const GraphInstance::Edge& e) {
        return std::make_pair(e.label, to_string(e.props.at(gs.default_key_of(e.label))));
    };
    std::map<std::pair<std::string, std::string>, const GraphInstance::Edge*> bedges;
    for (const auto& e : b.edges) bedges[edge_key(e)] = &e;
    for (const auto& e : a.edges) {
        auto it = bedges.find(edge_key(e));
        if (it == bedges.end() || it->second->props != e.props) return false;
        if (node_map.at(e.src) != it->second->src || node_map.at(e.tgt) != it->second->tgt)
            return false;
    }
    return true;
}

}  // namespace graphiti
