#include "graphiti/result_table.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace graphiti {

namespace {

Row permute(const Row& row, const std::vector<std::size_t>& perm) {
    // out[perm[i]] = row[i]: column i of t1 lands on column perm[i] of t2.
    Row out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[perm[i]] = row[i];
    return out;
}

using Bag = std::map<Row, int, bool (*)(const Row&, const Row&)>;

Bag to_bag(const std::vector<Row>& rows) {
    Bag bag(row_less);
    for (const auto& r : rows) bag[r]++;
    return bag;
}

}  // namespace

TableEquivResult table_equiv(const ResultTable& t1, const ResultTable& t2) {
    TableEquivResult res;
    if (t1.columns.size() != t2.columns.size() || t1.rows.size() != t2.rows.size())
        return res;

    const bool list_semantics = t1.ordered && t2.ordered;
    const std::size_t n = t1.columns.size();
    Bag bag2 = to_bag(t2.rows);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Row> witness;
    do {
        res.bijections_tried++;
        bool ok = true;
        if (list_semantics) {
            for (std::size_t r = 0; r < t1.rows.size() && ok; ++r)
                if (!grouping_eq(permute(t1.rows[r], perm), t2.rows[r])) {
                    ok = false;
                    if (!witness) witness = t1.rows[r];
                }
        } else {
            Bag bag1(row_less);
            for (const auto& r : t1.rows) bag1[permute(r, perm)]++;
            if (bag1 != bag2) {
                ok = false;
                if (!witness) {
                    for (const auto& [row, cnt] : bag1) {
                        auto it = bag2.find(row);
                        if (it == bag2.end() || it->second != cnt) {
                            witness = row;
                            break;
                        }
                    }
                }
            }
        }
        if (ok) {
            res.equivalent = true;
            res.bijection = perm;
            return res;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    res.witness = witness;
    return res;
}

}  // namespace graphiti
