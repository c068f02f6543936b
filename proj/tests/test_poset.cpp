#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "permuto/ordered_partition.hpp"

using namespace permuto;

namespace {

// Independent enumeration: build ordered partitions by repeatedly choosing
// the next block as an arbitrary nonempty arrangement of unused values.
// Deliberately a different path from the (word, bar mask) production code.
void naive_enumerate_rec(int n, std::vector<int>& remaining,
                         std::vector<std::vector<int>>& acc,
                         std::vector<OrderedPartition>& out) {
    if (remaining.empty()) {
        OrderedPartition a;
        a.n = n;
        a.blocks = acc;
        out.push_back(a);
        return;
    }
    int m = static_cast<int>(remaining.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> chosen, rest;
        for (int i = 0; i < m; ++i)
            ((mask >> i) & 1u ? chosen : rest).push_back(remaining[i]);
        std::sort(chosen.begin(), chosen.end());
        do {
            acc.push_back(chosen);
            naive_enumerate_rec(n, rest, acc, out);
            acc.pop_back();
        } while (std::next_permutation(chosen.begin(), chosen.end()));
    }
}

std::vector<OrderedPartition> naive_enumerate(int n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    std::vector<std::vector<int>> acc;
    std::vector<OrderedPartition> out;
    naive_enumerate_rec(n, all, acc, out);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("poset");

TEST_CASE("degree") {
    CHECK(OrderedPartition::parse("2,3,5|7,4,1|6").degree() == 4);
    CHECK(OrderedPartition::parse("1|2|3").degree() == 0);
    CHECK(OrderedPartition::parse("4,1,3,2").degree() == 3);
    CHECK(OrderedPartition::parse("1").degree() == 0);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(OrderedPartition(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(OrderedPartition(2, {{1}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(OrderedPartition(2, {{1}}), std::invalid_argument);
    CHECK_THROWS_AS(OrderedPartition(2, {{1}, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_cells(0), std::out_of_range);
    CHECK_THROWS_AS(enumerate_cells(3, 3), std::out_of_range);
}

TEST_CASE("enumerate small") {
    auto top3 = enumerate_cells(3, 2);
    CHECK(top3.size() == 6);  // the six bar-free permutations
    for (const auto& a : top3) CHECK(a.blocks.size() == 1);

    auto one = enumerate_cells(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].str() == "1");
    CHECK(one[0].degree() == 0);
}

TEST_CASE("enumerate matches naive oracle for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto got = enumerate_cells(n);
        auto want = naive_enumerate(n);
        std::sort(want.begin(), want.end());
        REQUIRE(got.size() == want.size());
        CHECK(std::equal(got.begin(), got.end(), want.begin()));
        // no duplicates, deterministic order
        for (size_t i = 0; i + 1 < got.size(); ++i) CHECK(got[i] < got[i + 1]);
    }
    // frozen value from the naive oracle: 4! * C(3,1) = 72
    CHECK(enumerate_cells(4, 1).size() == 72);
}

TEST_CASE("cell count law n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        auto counts = count_cells_by_dim(n);
        for (int d = 0; d < n; ++d)
            CHECK(counts[d] == factorial(n) * binomial(n - 1, d));
    }
}

TEST_CASE("pair form round trip") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& a : enumerate_cells(n))
            CHECK(PairForm::of(a).to_partition() == a);
}

TEST_CASE("leq paper examples") {
    auto a = OrderedPartition::parse("2,3,5|7,1|4|6");
    auto b = OrderedPartition::parse("2,3,5|4,7,1|6");
    CHECK(leq(a, b));
    auto a2 = OrderedPartition::parse("2,3,5|4,7|1|6");
    auto b2 = OrderedPartition::parse("2,3,5|7,1,4|6");
    CHECK_FALSE(leq(a2, b2));

    auto c = OrderedPartition::parse("1,2,3");
    CHECK(leq(c, c));
    CHECK_THROWS_AS(leq(c, OrderedPartition::parse("1")), std::invalid_argument);
}

TEST_CASE("leq_oracle basics") {
    auto v = OrderedPartition::parse("1|2");
    CHECK(leq_oracle(v, OrderedPartition::parse("1,2")));
    CHECK(leq_oracle(v, OrderedPartition::parse("2,1")));
    CHECK_FALSE(leq_oracle(OrderedPartition::parse("1,2"), v));
    CHECK_THROWS_AS(leq_oracle(OrderedPartition::parse("1,2,3,4,5,6,7"),
                               OrderedPartition::parse("1,2,3,4,5,6,7")),
                    std::out_of_range);
}

TEST_CASE("leq equals closure oracle for n <= 5") {
    for (int n = 1; n <= 5; ++n) {
        auto cells = enumerate_cells(n);
        // full upward closure by layered sweep
        std::vector<std::set<std::uint64_t>> reach(cells.size());
        std::vector<int> order(cells.size());
        for (size_t i = 0; i < cells.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            return cells[x].degree() > cells[y].degree();
        });
        std::map<std::uint64_t, int> idx;
        for (size_t i = 0; i < cells.size(); ++i) idx[pack_cell(cells[i])] = static_cast<int>(i);
        for (int i : order) {
            reach[i].insert(pack_cell(cells[i]));
            for (const auto& up : upward_covers(cells[i])) {
                const auto& r = reach[idx.at(pack_cell(up))];
                reach[i].insert(r.begin(), r.end());
            }
        }
        for (size_t i = 0; i < cells.size(); ++i)
            for (size_t j = 0; j < cells.size(); ++j)
                CHECK(leq(cells[i], cells[j]) ==
                      (reach[i].count(pack_cell(cells[j])) > 0));
    }
}

TEST_CASE("poset axioms and degree monotonicity for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        auto cells = enumerate_cells(n);
        size_t m = cells.size();
        std::vector<std::vector<char>> le(m, std::vector<char>(m, 0));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) le[i][j] = leq(cells[i], cells[j]);
        for (size_t i = 0; i < m; ++i) {
            CHECK(le[i][i]);  // reflexive
            for (size_t j = 0; j < m; ++j) {
                if (le[i][j] && le[j][i]) CHECK(i == j);  // antisymmetric
                if (le[i][j]) {
                    CHECK(cells[i].degree() <= cells[j].degree());
                    if (cells[i].degree() == cells[j].degree()) CHECK(i == j);
                    for (size_t k = 0; k < m; ++k)
                        if (le[j][k]) CHECK(le[i][k]);  // transitive
                }
            }
        }
    }
}

TEST_CASE("cover relations") {
    auto covers2 = cover_relations(2);
    CHECK(covers2.size() == 4);
    CHECK(cover_relations(1).empty());

    // n = 3: covers agree with the transitive reduction of leq
    auto cells = enumerate_cells(3);
    std::set<std::pair<std::uint64_t, std::uint64_t>> from_shuffles;
    for (const auto& [a, b] : cover_relations(3))
        from_shuffles.emplace(pack_cell(a), pack_cell(b));
    std::set<std::pair<std::uint64_t, std::uint64_t>> reduction;
    for (const auto& a : cells)
        for (const auto& b : cells) {
            if (a == b || !leq(a, b)) continue;
            bool direct = true;
            for (const auto& c : cells)
                if (!(c == a) && !(c == b) && leq(a, c) && leq(c, b)) direct = false;
            if (direct) reduction.emplace(pack_cell(a), pack_cell(b));
        }
    CHECK(from_shuffles == reduction);
}

TEST_CASE("hasse dot export") {
    auto dot = hasse_dot(2);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("\"1|2\" -> \"1,2\"") != std::string::npos);
}

TEST_SUITE_END();
