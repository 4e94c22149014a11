#include "doctest.h"

#include "graphiti/aggregate.hpp"
#include "graphiti/result_table.hpp"
#include "graphiti/value.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace graphiti;
using namespace graphiti::test;

TEST_CASE("3VL value equality") {
    CHECK(value_eq_3vl(I(1), I(1)) == Tri::True);
    CHECK(value_eq_3vl(N(), I(1)) == Tri::Null);
    CHECK(value_eq_3vl(N(), N()) == Tri::Null);
    CHECK(value_eq_3vl(I(1), I(2)) == Tri::False);
    // Cross-kind non-Null comparison is false, not an error.
    CHECK(value_eq_3vl(I(1), S("1")) == Tri::False);
}

TEST_CASE("grouping equality treats Null as equal to Null") {
    CHECK(grouping_eq(N(), N()));
    CHECK_FALSE(grouping_eq(I(1), I(2)));
    CHECK(grouping_eq(S("a"), S("a")));
    CHECK_FALSE(grouping_eq(N(), I(0)));
}

TEST_CASE("Kleene connectives") {
    CHECK(tri_and(Tri::False, Tri::Null) == Tri::False);
    CHECK(tri_or(Tri::True, Tri::Null) == Tri::True);
    CHECK(tri_and(Tri::True, Tri::Null) == Tri::Null);
    CHECK(tri_or(Tri::False, Tri::Null) == Tri::Null);
    CHECK(tri_not(Tri::Null) == Tri::Null);
    CHECK(tri_not(Tri::False) == Tri::True);
}

TEST_CASE("arithmetic") {
    CHECK(value_arith(I(2), ArithOp::Add, I(3)) == I(5));
    CHECK(value_arith(N(), ArithOp::Mul, I(3)).is_null());
    CHECK(value_arith(I(7), ArithOp::Div, I(2)) == I(3));
    CHECK_THROWS_AS(value_arith(I(1), ArithOp::Div, I(0)), EvalError);
    CHECK_THROWS_AS(value_arith(I(1), ArithOp::Add, S("x")), EvalError);
}

TEST_CASE("value order puts Null last") {
    CHECK(value_less(I(5), N()));
    CHECK_FALSE(value_less(N(), I(5)));
    CHECK_FALSE(value_less(N(), N()));
    CHECK(value_less(I(9), S("a")));  // canonical kind order
    CHECK(value_less(S("a"), S("b")));
}

TEST_CASE("aggregates skip Nulls and go Null when everything is Null") {
    using cypher::AggKind;
    std::vector<Value> vals{I(1), N(), I(3)};
    CHECK(aggregate(AggKind::Count, vals) == I(2));
    CHECK(aggregate(AggKind::Sum, vals) == I(4));
    CHECK(aggregate(AggKind::Min, {I(3), N(), I(1)}) == I(1));
    CHECK(aggregate(AggKind::Max, vals) == I(3));
    CHECK(aggregate(AggKind::Avg, vals) == I(2));
    CHECK(aggregate(AggKind::Sum, {N(), N()}).is_null());
    CHECK(aggregate(AggKind::Count, {N(), N()}).is_null());
    CHECK(aggregate(AggKind::Avg, {I(1), I(2)}) == I(1));  // integer division
}

namespace {

ResultTable table(std::vector<std::string> cols, std::vector<Row> rows, bool ordered = false) {
    ResultTable t;
    t.columns = std::move(cols);
    t.rows = std::move(rows);
    t.ordered = ordered;
    return t;
}

}  // namespace

TEST_CASE("table equivalence finds column bijections") {
    ResultTable t = table({"a", "b"}, {{I(1), I(2)}, {I(3), I(4)}});
    auto self = table_equiv(t, t);
    CHECK(self.equivalent);
    CHECK(self.bijection == std::vector<std::size_t>{0, 1});

    // columns (a,b) rows {(1,2)} vs columns (y,x) rows {(2,1)}: a maps to x.
    ResultTable t1 = table({"a", "b"}, {{I(1), I(2)}});
    ResultTable t2 = table({"y", "x"}, {{I(2), I(1)}});
    auto res = table_equiv(t1, t2);
    CHECK(res.equivalent);
    CHECK(res.bijection == std::vector<std::size_t>{1, 0});
}

TEST_CASE("table equivalence tracks multiplicities") {
    ResultTable a = table({"c", "n"}, {{I(1), I(2)}, {I(1), I(2)}});
    ResultTable b = table({"c", "n"},
                          {{I(1), I(2)}, {I(1), I(2)}, {I(1), I(2)}, {I(1), I(2)}});
    auto res = table_equiv(a, b);
    CHECK_FALSE(res.equivalent);

    ResultTable c = table({"c", "n"}, {{I(1), I(2)}, {I(1), I(4)}});
    auto res2 = table_equiv(a, c);
    CHECK_FALSE(res2.equivalent);
    CHECK(res2.witness.has_value());
    CHECK(res2.bijections_tried == 2);
}

TEST_CASE("ordered tables compare positionally") {
    ResultTable a = table({"k"}, {{I(1)}, {I(2)}}, true);
    ResultTable b = table({"k"}, {{I(2)}, {I(1)}}, true);
    CHECK_FALSE(table_equiv(a, b).equivalent);
    // Same rows as bags once either side is unordered.
    b.ordered = false;
    CHECK(table_equiv(a, b).equivalent);
}

TEST_CASE("table equivalence is reflexive, symmetric, permutation-invariant") {
    Rng rng(test_seed());
    for (int iter = 0; iter < 60; ++iter) {
        int cols = 1 + rng.pick(4);
        ResultTable t = random_table(rng, cols, rng.pick(5), 3, true);
        CHECK(table_equiv(t, t).equivalent);

        // Permute columns and rename; equivalence must survive.
        std::vector<std::size_t> perm(cols);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.eng);
        ResultTable p;
        for (int c = 0; c < cols; ++c) p.columns.push_back("z" + std::to_string(c));
        for (const auto& row : t.rows) {
            Row r(cols);
            for (int c = 0; c < cols; ++c) r[perm[c]] = row[c];
            p.rows.push_back(std::move(r));
        }
        std::shuffle(p.rows.begin(), p.rows.end(), rng.eng);
        CHECK(table_equiv(t, p).equivalent);
        CHECK(table_equiv(p, t).equivalent);
    }
}

TEST_CASE("table equivalence agrees with the exhaustive oracle") {
    Rng rng(test_seed() + 1);
    for (int iter = 0; iter < 120; ++iter) {
        int cols = 1 + rng.pick(4);
        ResultTable a = random_table(rng, cols, rng.pick(4), 2, true);
        ResultTable b = rng.coin(0.4) ? a : random_table(rng, cols, rng.pick(4), 2, true);
        if (rng.coin(0.3)) {
            a.ordered = true;
            b.ordered = true;
        }
        CHECK(table_equiv(a, b).equivalent == oracle_table_equiv(a, b));
    }
}
