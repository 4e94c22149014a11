#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphiti/value.hpp"

namespace graphiti {

/// Common output of both interpreters. `ordered` is true iff the table was
/// produced by an OrderBy, which switches comparison to list semantics.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<Row> rows;
    bool ordered = false;
};

struct TableEquivResult {
    bool equivalent = false;
    /// When equivalent: bijection[i] is the column of t2 matched to column i
    /// of t1.
    std::vector<std::size_t> bijection;
    /// When not equivalent: a row of t1 (or t2) whose multiplicity differs
    /// under every bijection tried, if column counts matched at all.
    std::optional<Row> witness;
    /// Number of column bijections examined.
    std::size_t bijections_tried = 0;
};

/// Table equivalence per the bag (or, when both tables are ordered, list)
/// semantics: names and column order are ignored; some column bijection must
/// make the row bags (lists) equal under grouping equality.
TableEquivResult table_equiv(const ResultTable& t1, const ResultTable& t2);

}  // namespace graphiti
