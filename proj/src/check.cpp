#include "graphiti/check.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "graphiti/cypher_interp.hpp"
#include "graphiti/sql_interp.hpp"
#include "graphiti/transpile.hpp"

namespace graphiti {

Transformer residual_transformer(const Transformer& phi, const SdtResult& sdt) {
    Transformer out = phi;
    for (auto& rule : out.rules)
        for (auto& pred : rule.body) {
            auto it = sdt.label_map.find(pred.name);
            if (it == sdt.label_map.end())
                throw BindError("body label '" + pred.name + "' is not covered by the SDT");
            pred.name = it->second;
        }
    return out;
}

namespace {

struct Pipeline {
    const GraphSchema& gs;
    const RelSchema& rs;
    const cypher::Query& q_g;
    const sql::Query& q_r;
    const Transformer& phi;
    SdtResult sdt;
    sql::QueryPtr q_induced;
    Transformer residual;

    Pipeline(const GraphSchema& gs_, const cypher::Query& q_g_, const RelSchema& rs_,
             const sql::Query& q_r_, const Transformer& phi_)
        : gs(gs_), rs(rs_), q_g(q_g_), q_r(q_r_), phi(phi_) {
        gs.validate();
        rs.validate();
        check_transformer_shape(phi, gs, rs);
        sdt = infer_sdt(gs);
        q_induced = transpile_query(sdt, gs, q_g);
        sql::bind_sql(sdt.induced_schema, *q_induced);
        sql::bind_sql(rs, q_r);
        residual = residual_transformer(phi, sdt);
    }

    struct InstanceOutcome {
        bool skipped = false;   // transformed image violates the constraint
        bool differ = false;
        RelInstance image;      // over the target schema
        ResultTable induced_result;
        ResultTable target_result;
    };

    InstanceOutcome run(const GraphInstance& g) const {
        InstanceOutcome out;
        GroundFactSet graph_facts = ground_graph(gs, g);
        RelInstance d_induced =
            apply_transformer(sdt.sdt, graph_facts, sdt.induced_schema);
        out.image = apply_transformer(residual, ground_rel(d_induced), rs);

        // The residual route must agree with the direct application of phi.
        RelInstance direct = apply_transformer(phi, graph_facts, rs);
        if (!rel_instance_equal(out.image, direct))
            throw Error("residual transformer disagrees with the direct transformer");

        if (!check_rel_integrity(rs, out.image).empty()) {
            out.skipped = true;
            return out;
        }
        out.induced_result = sql::eval_sql_unchecked(sdt.induced_schema, d_induced, *q_induced);
        out.target_result = sql::eval_sql_unchecked(rs, out.image, q_r);
        out.differ = !table_equiv(out.induced_result, out.target_result).equivalent;
        return out;
    }

    /// Greedy shrinking: repeatedly drop a single edge or a node (with its
    /// incident edges) while the instance still witnesses the difference.
    GraphInstance shrink(GraphInstance g) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                GraphInstance smaller = g;
                smaller.edges.erase(smaller.edges.begin() + i);
                InstanceOutcome o = run(smaller);
                if (!o.skipped && o.differ) {
                    g = std::move(smaller);
                    changed = true;
                    break;
                }
            }
            if (changed) continue;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                GraphInstance smaller = g;
                ElemId id = smaller.nodes[i].id;
                smaller.nodes.erase(smaller.nodes.begin() + i);
                smaller.edges.erase(
                    std::remove_if(smaller.edges.begin(), smaller.edges.end(),
                                   [&](const GraphInstance::Edge& e) {
                                       return e.src == id || e.tgt == id;
                                   }),
                    smaller.edges.end());
                InstanceOutcome o = run(smaller);
                if (!o.skipped && o.differ) {
                    g = std::move(smaller);
                    changed = true;
                    break;
                }
            }
        }
        return g;
    }
};

}  // namespace

CheckVerdict check_equivalence(const GraphSchema& gs, const cypher::Query& q_g,
                               const RelSchema& rs, const sql::Query& q_r,
                               const Transformer& phi, const EnumBounds& bounds,
                               int threads) {
    Pipeline pipe(gs, q_g, rs, q_r, phi);

    CheckVerdict verdict;
    verdict.bounds = bounds;

    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw ? static_cast<int>(hw) : 1;
    }

    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(bounds.time_limit_seconds));

    std::vector<GraphInstance> batch;
    const std::size_t batch_size = static_cast<std::size_t>(threads) * 512;
    batch.reserve(batch_size);
    std::optional<GraphInstance> first_failure;
    bool timed_out = false;

    auto flush = [&]() -> bool {  // returns true to continue enumeration
        if (batch.empty()) return true;
        std::vector<uint8_t> differ(batch.size(), 0);
        std::vector<uint8_t> skipped(batch.size(), 0);
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        std::atomic<bool> failed{false};
        std::string error_msg;
        std::mutex error_mu;
        int nworkers = std::min<int>(threads, static_cast<int>(batch.size()));
        for (int w = 0; w < nworkers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = cursor.fetch_add(1);
                    if (i >= batch.size()) return;
                    try {
                        auto o = pipe.run(batch[i]);
                        skipped[i] = o.skipped;
                        differ[i] = o.differ;
                    } catch (const std::exception& e) {
                        std::lock_guard<std::mutex> lk(error_mu);
                        if (error_msg.empty()) error_msg = e.what();
                        failed = true;
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (failed) throw Error(error_msg);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            verdict.instances_enumerated++;
            if (!skipped[i]) verdict.instances_checked++;
            if (differ[i]) {
                first_failure = batch[i];
                batch.clear();
                return false;
            }
        }
        batch.clear();
        return true;
    };

    enumerate_graphs(gs, bounds, [&](const GraphInstance& g) {
        batch.push_back(g);
        if (batch.size() < batch_size) return true;
        if (std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return false;
        }
        return flush();
    });
    if (!timed_out && !first_failure) flush();

    if (first_failure) {
        GraphInstance g = pipe.shrink(std::move(*first_failure));
        auto o = pipe.run(g);
        Counterexample cx;
        cx.graph = g;
        cx.rel = o.image;
        cx.cypher_result = cypher::eval_cypher(gs, g, q_g);
        cx.sql_result = o.target_result;
        if (table_equiv(cx.cypher_result, cx.sql_result).equivalent)
            throw Error("counterexample does not replay on the graph side");
        verdict.kind = VerdictKind::NotEquivalent;
        verdict.counterexample = std::move(cx);
        return verdict;
    }
    if (timed_out) {
        verdict.kind = VerdictKind::Unknown;
        verdict.unknown_reason = "timeout";
        return verdict;
    }
    verdict.kind = VerdictKind::EquivalentUpToBound;
    return verdict;
}

PairResult eval_pair(const GraphSchema& gs, const GraphInstance& g, const RelSchema& rs,
                     const RelInstance& d, const cypher::Query& q_g, const sql::Query& q_r) {
    PairResult out;
    try {
        out.cypher_result = cypher::eval_cypher(gs, g, q_g);
    } catch (const Error& e) {
        throw Error(std::string("cypher: ") + e.what());
    }
    try {
        out.sql_result = sql::eval_sql(rs, d, q_r);
    } catch (const Error& e) {
        throw Error(std::string("sql: ") + e.what());
    }
    out.equivalent = table_equiv(out.cypher_result, out.sql_result).equivalent;
    return out;
}

}  // namespace graphiti
