#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graphiti/cypher_ast.hpp"
#include "graphiti/sdt.hpp"
#include "graphiti/sql_ast.hpp"

namespace graphiti {

/// Variable set threaded through clause and pattern judgments.
using VarSet = std::vector<std::pair<std::string, std::string>>;  // (var, label)

/// Transpilation state: the CTE definitions accumulated for the current
/// return query plus a fresh-name supply that never collides with user
/// variables.
struct TranspileContext {
    const SdtResult& sdt;
    const GraphSchema& gs;
    std::vector<std::string> used_names;
    int counter = 1;
    std::vector<sql::CteDef> defs;

    std::string fresh();
};

/// Pattern translation: a single node pattern becomes the renamed base
/// relation; longer patterns join node and edge relations through SRC/TGT
/// against the endpoint primary keys (direction-resolved; both orientations
/// for undirected edges). Columns are variable-qualified.
std::pair<VarSet, sql::QueryPtr> transpile_pattern(TranspileContext& ctx,
                                                   const cypher::PathPattern& pp);

/// Clause translation. The returned query is a reference to a CTE bound in
/// ctx.defs whose columns are the clause variables' attributes flattened to
/// `var_key`; joins across clauses use primary-key equalities over shared
/// variables.
std::pair<VarSet, std::string> transpile_clause(TranspileContext& ctx,
                                                const cypher::Clause& c);

/// Expression/predicate environment: where each variable's attributes live.
struct AttrEnv {
    struct Entry {
        std::string var;
        std::string label;
        std::string qual;   // CTE name, or the variable itself for raw patterns
        bool flattened;     // true: key is var_key under qual; false: (var, key)
    };
    std::vector<Entry> entries;
    const GraphSchema* gs = nullptr;

    sql::ExprPtr resolve(const cypher::KeyRef& ref) const;
};

sql::ExprPtr transpile_expr(TranspileContext& ctx, const AttrEnv& env, const cypher::Expr& e);
sql::PredPtr transpile_pred(TranspileContext& ctx, const AttrEnv& env, const cypher::Pred& p);

/// Full query translation per the syntax-directed rules; total on validated
/// queries. The result is deterministic and re-parses through print_sql.
sql::QueryPtr transpile_query(const SdtResult& sdt, const GraphSchema& gs,
                              const cypher::Query& q);

/// Flattened column key for a variable's property.
std::string flat_key(const std::string& var, const std::string& key);

}  // namespace graphiti
