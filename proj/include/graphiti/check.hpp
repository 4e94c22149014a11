#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "graphiti/cypher_ast.hpp"
#include "graphiti/enumerate.hpp"
#include "graphiti/result_table.hpp"
#include "graphiti/sdt.hpp"
#include "graphiti/sql_ast.hpp"
#include "graphiti/transformer.hpp"

namespace graphiti {

/// Residual transformer: substitute every body predicate's graph label by its
/// induced relation name; terms and heads stay unchanged. Throws BindError
/// when a body label is not covered by the SDT.
Transformer residual_transformer(const Transformer& phi, const SdtResult& sdt);

enum class VerdictKind { EquivalentUpToBound, NotEquivalent, Unknown };

struct Counterexample {
    GraphInstance graph;
    RelInstance rel;
    ResultTable cypher_result;
    ResultTable sql_result;
};

struct CheckVerdict {
    VerdictKind kind = VerdictKind::Unknown;
    EnumBounds bounds;
    std::uint64_t instances_enumerated = 0;
    std::uint64_t instances_checked = 0;  // not skipped by the integrity constraint
    std::optional<Counterexample> counterexample;
    std::string unknown_reason;
};

/// Bounded equivalence check of a Cypher query against a SQL query modulo a
/// database transformer: transpile the Cypher query over the induced schema,
/// derive the residual transformer, and compare both SQL queries on every
/// enumerated instance whose transformed image satisfies the target integrity
/// constraint. NotEquivalent verdicts carry a greedily shrunk, replayable
/// counterexample; exceeding the time limit yields Unknown.
CheckVerdict check_equivalence(const GraphSchema& gs, const cypher::Query& q_g,
                               const RelSchema& rs, const sql::Query& q_r,
                               const Transformer& phi, const EnumBounds& bounds,
                               int threads = 0);

struct PairResult {
    ResultTable cypher_result;
    ResultTable sql_result;
    bool equivalent = false;
};

/// Evaluates both queries on a concrete pair of instances (the caller is
/// responsible for G ~_phi D) and reports table equivalence.
PairResult eval_pair(const GraphSchema& gs, const GraphInstance& g, const RelSchema& rs,
                     const RelInstance& d, const cypher::Query& q_g, const sql::Query& q_r);

}  // namespace graphiti
