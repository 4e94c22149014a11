#include "graphiti/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace graphiti {

namespace {

struct EdgeTuple {
    int src, tgt;
    std::vector<int> props;

    friend bool operator<(const EdgeTuple& a, const EdgeTuple& b) {
        if (a.src != b.src) return a.src < b.src;
        if (a.tgt != b.tgt) return a.tgt < b.tgt;
        return a.props < b.props;
    }
    friend bool operator==(const EdgeTuple& a, const EdgeTuple& b) {
        return a.src == b.src && a.tgt == b.tgt && a.props == b.props;
    }
};

struct Candidate {
    std::vector<int> counts;                              // per node type
    std::vector<std::vector<std::vector<int>>> props;     // [type][node][free key]
    std::vector<std::vector<EdgeTuple>> edges;            // [edge type], sorted
};

bool candidate_less(const Candidate& a, const Candidate& b) {
    if (a.props != b.props) return a.props < b.props;
    for (std::size_t t = 0; t < a.edges.size(); ++t) {
        if (a.edges[t] != b.edges[t])
            return std::lexicographical_compare(a.edges[t].begin(), a.edges[t].end(),
                                                b.edges[t].begin(), b.edges[t].end());
    }
    return false;
}

struct Enumerator {
    const GraphSchema& gs;
    const EnumBounds& b;
    const std::function<bool(const GraphInstance&)>& fn;

    std::vector<int> node_free;              // free key count per node type
    std::vector<int> edge_free;              // free key count per edge type
    std::vector<int> edge_src, edge_tgt;     // node type indices per edge type

    bool stopped = false;

    Enumerator(const GraphSchema& g, const EnumBounds& bounds,
               const std::function<bool(const GraphInstance&)>& f)
        : gs(g), b(bounds), fn(f) {
        for (const auto& n : gs.node_types)
            node_free.push_back(static_cast<int>(n.keys.size()) - 1);
        for (const auto& e : gs.edge_types) {
            edge_free.push_back(static_cast<int>(e.keys.size()) - 1);
            int si = 0, ti = 0;
            for (std::size_t i = 0; i < gs.node_types.size(); ++i) {
                if (gs.node_types[i].label == e.src_label) si = static_cast<int>(i);
                if (gs.node_types[i].label == e.tgt_label) ti = static_cast<int>(i);
            }
            edge_src.push_back(si);
            edge_tgt.push_back(ti);
        }
    }

    bool run() {
        int max_v = std::max(1, b.value_domain);
        for (int n = 0; n <= b.max_nodes_per_type && !stopped; ++n)
            for (int e = 0; e <= b.max_edges_per_type && !stopped; ++e)
                for (int v = 1; v <= max_v && !stopped; ++v) profile(n, e, v);
        return !stopped;
    }

    /// Emits all canonical instances whose minimal profile is exactly
    /// (n nodes per type, e edges per type, value domain v).
    void profile(int n, int e, int v) {
        std::vector<int> counts(gs.node_types.size(), 0);
        for_count_vectors(counts, 0, n, [&] {
            if (stopped) return;
            if (!counts.empty() &&
                *std::max_element(counts.begin(), counts.end()) != n)
                return;
            if (counts.empty() && n != 0) return;
            count_vector(counts, n, e, v);
        });
    }

    template <typename F>
    void for_count_vectors(std::vector<int>& counts, std::size_t i, int maxc, const F& f) {
        if (i == counts.size()) {
            f();
            return;
        }
        for (int c = 0; c <= maxc && !stopped; ++c) {
            counts[i] = c;
            for_count_vectors(counts, i + 1, maxc, f);
        }
    }

    void count_vector(const std::vector<int>& counts, int n, int e, int v) {
        (void)n;
        // With a zero value domain no free property can be assigned at all.
        int free_slots = 0;
        for (std::size_t t = 0; t < counts.size(); ++t) free_slots += counts[t] * node_free[t];
        if (b.value_domain == 0 && free_slots > 0) return;

        // Possible edge tuples per edge type under this count vector.
        std::vector<std::vector<EdgeTuple>> combos(gs.edge_types.size());
        std::vector<std::vector<int>> combo_max(gs.edge_types.size());
        for (std::size_t t = 0; t < gs.edge_types.size(); ++t) {
            int cs = counts[edge_src[t]], ct = counts[edge_tgt[t]];
            if (cs == 0 || ct == 0) continue;
            if (b.value_domain == 0 && edge_free[t] > 0) continue;
            std::vector<int> props(edge_free[t], 0);
            for (int s = 0; s < cs; ++s)
                for (int g = 0; g < ct; ++g) {
                    std::fill(props.begin(), props.end(), 0);
                    while (true) {
                        combos[t].push_back({s, g, props});
                        combo_max[t].push_back(
                            props.empty() ? 0 : *std::max_element(props.begin(), props.end()));
                        if (!advance_digits(props, v)) break;
                    }
                }
        }

        // Edge count vectors with max == e.
        std::vector<int> ecounts(gs.edge_types.size(), 0);
        for_edge_counts(ecounts, 0, e, combos, [&] {
            if (stopped) return;
            bool ok = ecounts.empty() ? (e == 0)
                                      : *std::max_element(ecounts.begin(), ecounts.end()) == e;
            if (gs.edge_types.empty()) ok = (e == 0);
            if (!ok) return;
            edge_counts(counts, ecounts, combos, combo_max, free_slots, v);
        });
    }

    template <typename F>
    void for_edge_counts(std::vector<int>& ecounts, std::size_t i, int maxc,
                         const std::vector<std::vector<EdgeTuple>>& combos, const F& f) {
        if (i == ecounts.size()) {
            f();
            return;
        }
        int limit = combos[i].empty() ? 0 : maxc;
        for (int c = 0; c <= limit && !stopped; ++c) {
            ecounts[i] = c;
            for_edge_counts(ecounts, i + 1, maxc, combos, f);
        }
    }

    static bool advance_digits(std::vector<int>& digits, int base) {
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (++digits[i] < base) return true;
            digits[i] = 0;
        }
        return false;
    }

    /// Non-decreasing index tuple over [0, m): multiset selection.
    static bool advance_multiset(std::vector<int>& idx, int m) {
        for (std::size_t i = idx.size(); i-- > 0;) {
            if (idx[i] + 1 < m) {
                int val = idx[i] + 1;
                for (std::size_t j = i; j < idx.size(); ++j) idx[j] = val;
                return true;
            }
        }
        return false;
    }

    void edge_counts(const std::vector<int>& counts, const std::vector<int>& ecounts,
                     const std::vector<std::vector<EdgeTuple>>& combos,
                     const std::vector<std::vector<int>>& combo_max, int free_slots, int v) {
        std::vector<int> digits(free_slots, 0);
        std::vector<std::vector<int>> sel(gs.edge_types.size());
        while (!stopped) {
            // Node digits fixed; iterate edge selections.
            for (std::size_t t = 0; t < sel.size(); ++t) sel[t].assign(ecounts[t], 0);
            while (!stopped) {
                emit(counts, digits, ecounts, combos, combo_max, sel, v);
                // Advance the edge selections, rightmost type first.
                std::size_t t = sel.size();
                bool advanced = false;
                while (t-- > 0) {
                    if (sel[t].empty()) continue;
                    if (advance_multiset(sel[t], static_cast<int>(combos[t].size()))) {
                        advanced = true;
                        break;
                    }
                    sel[t].assign(ecounts[t], 0);
                }
                if (!advanced) break;
            }
            if (!advance_digits(digits, v)) break;
        }
    }

    void emit(const std::vector<int>& counts, const std::vector<int>& digits,
              const std::vector<int>& ecounts, const std::vector<std::vector<EdgeTuple>>& combos,
              const std::vector<std::vector<int>>& combo_max,
              const std::vector<std::vector<int>>& sel, int v) {
        (void)ecounts;
        // Exact-profile filter: the largest free value must be v-1.
        if (v > 1) {
            int maxval = digits.empty() ? 0 : *std::max_element(digits.begin(), digits.end());
            for (std::size_t t = 0; t < sel.size(); ++t)
                for (int idx : sel[t]) maxval = std::max(maxval, combo_max[t][idx]);
            if (maxval != v - 1) return;
        }

        Candidate cand;
        cand.counts = counts;
        cand.props.resize(counts.size());
        std::size_t cursor = 0;
        for (std::size_t t = 0; t < counts.size(); ++t) {
            cand.props[t].resize(counts[t]);
            for (int i = 0; i < counts[t]; ++i) {
                cand.props[t][i].resize(node_free[t]);
                for (int k = 0; k < node_free[t]; ++k) cand.props[t][i][k] = digits[cursor++];
            }
        }
        cand.edges.resize(sel.size());
        for (std::size_t t = 0; t < sel.size(); ++t)
            for (int idx : sel[t]) cand.edges[t].push_back(combos[t][idx]);

        if (!canonical(cand)) return;

        GraphInstance g = materialize(cand);
        if (!fn(g)) stopped = true;
    }

    bool canonical(const Candidate& cand) const {
        // Quotient by per-type node renaming: reject unless no permutation
        // yields a lexicographically smaller encoding.
        std::vector<std::vector<int>> perms(cand.counts.size());
        for (std::size_t t = 0; t < perms.size(); ++t) {
            perms[t].resize(cand.counts[t]);
            std::iota(perms[t].begin(), perms[t].end(), 0);
        }
        Candidate scratch = cand;
        return canonical_rec(cand, perms, 0, scratch);
    }

    bool canonical_rec(const Candidate& cand, std::vector<std::vector<int>>& perms,
                       std::size_t t, Candidate& scratch) const {
        if (t == perms.size()) {
            apply_perm(cand, perms, scratch);
            return !candidate_less(scratch, cand);
        }
        std::vector<int>& p = perms[t];
        std::sort(p.begin(), p.end());
        do {
            if (!canonical_rec(cand, perms, t + 1, scratch)) return false;
        } while (std::next_permutation(p.begin(), p.end()));
        return true;
    }

    /// perms[t][j] = old index of the node placed at new index j.
    void apply_perm(const Candidate& cand, const std::vector<std::vector<int>>& perms,
                    Candidate& out) const {
        for (std::size_t t = 0; t < cand.props.size(); ++t)
            for (std::size_t j = 0; j < cand.props[t].size(); ++j)
                out.props[t][j] = cand.props[t][perms[t][j]];
        // Inverse maps: old index -> new index.
        std::vector<std::vector<int>> inv(perms.size());
        for (std::size_t t = 0; t < perms.size(); ++t) {
            inv[t].resize(perms[t].size());
            for (std::size_t j = 0; j < perms[t].size(); ++j) inv[t][perms[t][j]] = static_cast<int>(j);
        }
        for (std::size_t t = 0; t < cand.edges.size(); ++t) {
            out.edges[t] = cand.edges[t];
            for (auto& e : out.edges[t]) {
                e.src = inv[edge_src[t]][e.src];
                e.tgt = inv[edge_tgt[t]][e.tgt];
            }
            std::sort(out.edges[t].begin(), out.edges[t].end());
        }
    }

    GraphInstance materialize(const Candidate& cand) const {
        GraphInstance g;
        ElemId next = 0;
        std::vector<std::vector<ElemId>> ids(cand.counts.size());
        for (std::size_t t = 0; t < cand.counts.size(); ++t) {
            const NodeType& nt = gs.node_types[t];
            for (int i = 0; i < cand.counts[t]; ++i) {
                GraphInstance::Node node;
                node.id = next++;
                node.label = nt.label;
                node.props[nt.keys[0]] = Value(static_cast<std::int64_t>(i));
                for (std::size_t k = 1; k < nt.keys.size(); ++k)
                    node.props[nt.keys[k]] =
                        Value(static_cast<std::int64_t>(cand.props[t][i][k - 1]));
                ids[t].push_back(node.id);
                g.nodes.push_back(std::move(node));
            }
        }
        for (std::size_t t = 0; t < cand.edges.size(); ++t) {
            const EdgeType& et = gs.edge_types[t];
            for (std::size_t j = 0; j < cand.edges[t].size(); ++j) {
                const EdgeTuple& tuple = cand.edges[t][j];
                GraphInstance::Edge edge;
                edge.id = next++;
                edge.label = et.label;
                edge.src = ids[edge_src[t]][tuple.src];
                edge.tgt = ids[edge_tgt[t]][tuple.tgt];
                edge.props[et.keys[0]] = Value(static_cast<std::int64_t>(j));
                for (std::size_t k = 1; k < et.keys.size(); ++k)
                    edge.props[et.keys[k]] =
                        Value(static_cast<std::int64_t>(tuple.props[k - 1]));
                g.edges.push_back(std::move(edge));
            }
        }
        return g;
    }
};

}  // namespace

bool enumerate_graphs(const GraphSchema& gs, const EnumBounds& b,
                      const std::function<bool(const GraphInstance&)>& fn) {
    gs.validate();
    Enumerator e(gs, b, fn);
    return e.run();
}

GraphEnumerator::GraphEnumerator(const GraphSchema& gs, const EnumBounds& b) {
    // Materialised eagerly; intended for desk-scale bounds in tests and
    // sampling, not the exhaustive check loop (which streams).
    enumerate_graphs(gs, b, [this](const GraphInstance& g) {
        buffer_.push_back(g);
        return true;
    });
}

std::optional<GraphInstance> GraphEnumerator::next() {
    if (pos_ >= buffer_.size()) return std::nullopt;
    return buffer_[pos_++];
}

}  // namespace graphiti
