#pragma once

#include <vector>

#include "graphiti/enumerate.hpp"
#include "graphiti/result_table.hpp"
#include "graphiti/transformer.hpp"

namespace graphiti::test {

/// Independent table-equivalence oracle: plain search over all column
/// permutations with sorted-multiset (or positional, when both ordered)
/// comparison. Deliberately shares no code with table_equiv.
bool oracle_table_equiv(const ResultTable& t1, const ResultTable& t2);

/// Naive enumeration oracle: generate every instance shape (including
/// non-canonical ones), then deduplicate by pairwise isomorphism checks over
/// all node permutations. Exponential; desk-scale bounds only.
std::vector<GraphInstance> naive_enumerate(const GraphSchema& gs, const EnumBounds& b);

/// Checks the Herbrand condition directly: every rule of phi, applied to any
/// substitution satisfied by src, has its head row present in out.
bool satisfies_rules(const Transformer& phi, const GroundFactSet& src, const RelInstance& out);

}  // namespace graphiti::test
