#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "permuto/coend.hpp"

using namespace permuto;

namespace {

std::vector<std::vector<int>> perms_of(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 1);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("coend");

TEST_CASE("canonicalize examples") {
    // one basepoint strip forced by the degeneracy relation
    auto c1 = canonicalize(OrderedPartition::parse("1,2"), {0, 1});
    CHECK(c1.k == 1);
    CHECK(c1.cell == OrderedPartition::parse("1"));
    CHECK(c1.labels == std::vector<int>{1});

    // related by the transposition action
    auto a = canonicalize(OrderedPartition::parse("1,2"), {1, 2});
    auto b = canonicalize(OrderedPartition::parse("2,1"), {2, 1});
    CHECK(a == b);

    // all coordinates stripped
    auto base = canonicalize(OrderedPartition::parse("1|2"), {0, 0});
    CHECK(base.is_basepoint());
    CHECK(base.str() == "*");

    CHECK_THROWS_AS(canonicalize(OrderedPartition::parse("1,2"), {1}),
                    std::invalid_argument);
}

TEST_CASE("canonicalize is idempotent and representative independent") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 400; ++iter) {
        int k = 1 + static_cast<int>(rng() % 5);
        int s = 1 + static_cast<int>(rng() % 3);
        auto cells = enumerate_cells(k);
        const auto& cell = cells[rng() % cells.size()];
        std::vector<int> labels(k);
        for (auto& x : labels) x = static_cast<int>(rng() % (s + 1));
        auto cls = canonicalize(cell, labels);
        if (!cls.is_basepoint()) {
            auto again = canonicalize(cls.cell, cls.labels);
            CHECK(again == cls);
            // every orbit element canonicalizes to the same class
            for (const auto& p : perms_of(k)) {
                auto [tc, ty] = act_on_pair(BasedInjection::permutation(p), cell, labels);
                CHECK(canonicalize(tc, ty) == cls);
            }
        }
    }
}

TEST_CASE("strip order does not matter") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        int k = 2 + static_cast<int>(rng() % 4);
        auto cells = enumerate_cells(k);
        const auto& cell = cells[rng() % cells.size()];
        std::vector<int> labels(k);
        for (auto& x : labels) x = static_cast<int>(rng() % 3);  // many zeros
        auto direct = canonicalize(cell, labels);
        // strip a random zero first, then canonicalize the rest
        std::vector<int> zero_slots;
        for (int i = 0; i < k; ++i)
            if (labels[i] == 0) zero_slots.push_back(i);
        if (zero_slots.empty() || k == 1) continue;
        int slot = zero_slots[rng() % zero_slots.size()];
        auto cell2 = degeneracy_pullback(slot, cell);
        auto labels2 = labels;
        labels2.erase(labels2.begin() + slot);
        CHECK(canonicalize(cell2, labels2) == direct);
    }
}

TEST_CASE("enumerate_coend small cases") {
    auto only_base = enumerate_coend(BasedSet(0), 3);
    for (size_t k = 0; k < only_base.size(); ++k)
        CHECK(only_base[k].size() == (k == 0 ? 1u : 0u));

    auto s1k1 = enumerate_coend(BasedSet(1), 1);
    REQUIRE(s1k1.size() == 2);
    CHECK(s1k1[0].size() == 1);
    REQUIRE(s1k1[1].size() == 1);
    CHECK(s1k1[1][0].cell == OrderedPartition::parse("1"));
    CHECK(s1k1[1][0].labels == std::vector<int>{1});

    CHECK_THROWS_AS(enumerate_coend(BasedSet(1), 9), std::out_of_range);
}

TEST_CASE("class counts match the free-action count") {
    // The diagonal action is free on cells, so filtration-k classes with
    // basepoint-free labels number |L(k)| * s^k / k!.
    for (int s = 1; s <= 2; ++s) {
        auto groups = enumerate_coend(BasedSet(s), 4);
        for (int k = 1; k <= 4; ++k) {
            long long total = factorial(k) * (1LL << (k - 1));  // |L(k)| = k! 2^{k-1}
            long long labels = 1;
            for (int i = 0; i < k; ++i) labels *= s;
            CHECK(static_cast<long long>(groups[k].size()) ==
                  total * labels / factorial(k));
        }
    }
}

TEST_CASE("f_map well-definedness and sections") {
    // all representatives of a class map to one class (k <= 3, s <= 2)
    for (int s = 1; s <= 2; ++s)
        for (int k = 1; k <= 3; ++k) {
            auto cells = enumerate_cells(k);
            std::vector<int> labels(k);
            long long total = 1;
            for (int i = 0; i < k; ++i) total *= (s + 1);
            for (long long code = 0; code < total; ++code) {
                long long c2 = code;
                for (int i = 0; i < k; ++i) {
                    labels[i] = static_cast<int>(c2 % (s + 1));
                    c2 /= (s + 1);
                }
                for (const auto& cell : cells) {
                    auto cls = canonicalize(cell, labels);
                    if (cls.is_basepoint() || cls.k != k) continue;
                    for (const auto& c : EpsilonCase::all_cases(k)) {
                        auto image = f_map(c, cls);
                        // apply e x D_* to a non-canonical representative too
                        for (const auto& p : perms_of(k)) {
                            auto [tc, ty] =
                                act_on_pair(BasedInjection::permutation(p), cls.cell, cls.labels);
                            auto up = insert(c, tc);
                            auto uy = ty;
                            uy.insert(uy.begin() + c.i, 0);
                            CHECK(canonicalize(up, uy) == image);
                        }
                        // stripping the inserted coordinate recovers the class
                        auto down = degeneracy_pullback(c.i, insert(c, cls.cell));
                        CHECK(canonicalize(down, cls.labels) == cls);
                    }
                }
            }
        }

    // basepoint class maps to itself
    CoendClass base;
    base.k = 0;
    CHECK(f_map(EpsilonCase(0, 0, 0, 1), base).is_basepoint());
}

TEST_CASE("exactness of the skeleton sequence") {
    auto r1 = verify_exactness(BasedSet(0), 2);
    CHECK(r1.all());

    auto r2 = verify_exactness(BasedSet(1), 2);
    INFO(r2.detail);
    CHECK(r2.injective);
    CHECK(r2.surjective);
    CHECK(r2.coequalizer);

    auto r3 = verify_exactness(BasedSet(2), 3);
    INFO(r3.detail);
    CHECK(r3.all());

    CHECK_THROWS_AS(verify_exactness(BasedSet(1), 5), std::out_of_range);
}

TEST_SUITE_END();
