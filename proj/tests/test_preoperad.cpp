#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "permuto/ordered_partition.hpp"
#include "permuto/preoperad.hpp"

using namespace permuto;

namespace {

std::vector<BasedInjection> all_injections(int k, int l) {
    std::vector<BasedInjection> out;
    std::vector<int> sel(l);
    std::iota(sel.begin(), sel.end(), 1);
    std::vector<int> comb(k);
    std::function<void(int, int)> pick = [&](int start, int depth) {
        if (depth == k) {
            std::vector<int> im = comb;
            std::sort(im.begin(), im.end());
            do {
                out.emplace_back(k, l, im);
            } while (std::next_permutation(im.begin(), im.end()));
            return;
        }
        for (int v = start; v <= l; ++v) {
            comb[depth] = v;
            pick(v + 1, depth + 1);
        }
    };
    pick(1, 0);
    return out;
}

BasedInjection random_injection(int k, int l, std::mt19937_64& rng) {
    std::vector<int> pool(l);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(k);
    return BasedInjection(k, l, pool);
}

OrderedPartition random_cell(int n, std::mt19937_64& rng) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    std::shuffle(w.begin(), w.end(), rng);
    std::uniform_int_distribution<unsigned> d(0, (1u << (n - 1)) - 1);
    unsigned mask = d(rng);
    std::vector<std::vector<int>> blocks(1);
    for (int p = 0; p < n; ++p) {
        blocks.back().push_back(w[p]);
        if (p + 1 < n && (mask >> p) & 1u) blocks.emplace_back();
    }
    OrderedPartition a;
    a.n = n;
    a.blocks = std::move(blocks);
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("preoperad");

TEST_CASE("decompose injection") {
    auto phi = BasedInjection(2, 3, {3, 2});
    auto dec = decompose_injection(phi);
    CHECK(dec.sharp.images == std::vector<int>{2, 1});
    CHECK(dec.inc.images == std::vector<int>{2, 3});
    CHECK(compose(dec.inc, dec.sharp) == phi);

    auto inc = BasedInjection(2, 4, {1, 3});
    CHECK(decompose_injection(inc).sharp == BasedInjection::identity(2));
    auto perm = BasedInjection(3, 3, {2, 3, 1});
    CHECK(decompose_injection(perm).inc == BasedInjection::identity(3));

    CHECK_THROWS_AS(BasedInjection(2, 3, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(BasedInjection(2, 1, {1, 2}), std::invalid_argument);
}

TEST_CASE("pullback examples") {
    auto a = OrderedPartition::parse("2|3,1");
    auto phi = BasedInjection(2, 3, {1, 3});
    auto got = pullback(phi, a);
    CHECK(got == OrderedPartition::parse("2,1"));
    CHECK(pullback_oracle(phi, a) == got);

    // identity functor law
    for (const auto& c : enumerate_cells(4))
        CHECK(pullback(BasedInjection::identity(4), c) == c);
}

TEST_CASE("pullback equals subsequence-restriction oracle, l <= 5") {
    for (int l = 1; l <= 5; ++l) {
        auto cells = enumerate_cells(l);
        for (int k = 1; k <= l; ++k)
            for (const auto& phi : all_injections(k, l))
                for (const auto& a : cells)
                    CHECK(pullback(phi, a) == pullback_oracle(phi, a));
    }
}

TEST_CASE("functoriality exhaustive l <= 4") {
    for (int l = 1; l <= 4; ++l)
        for (const auto& a : enumerate_cells(l))
            for (int k = 1; k <= l; ++k)
                for (const auto& phi : all_injections(k, l))
                    for (int j = 1; j <= k; ++j)
                        for (const auto& psi : all_injections(j, k))
                            CHECK(pullback(psi, pullback(phi, a)) ==
                                  pullback(compose(phi, psi), a));
}

TEST_CASE("functoriality fuzzed l <= 6") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 1000; ++iter) {
        int l = 2 + static_cast<int>(rng() % 5);
        int k = 1 + static_cast<int>(rng() % l);
        int j = 1 + static_cast<int>(rng() % k);
        auto a = random_cell(l, rng);
        auto phi = random_injection(k, l, rng);
        auto psi = random_injection(j, k, rng);
        CHECK(pullback(psi, pullback(phi, a)) == pullback(compose(phi, psi), a));
    }
}

TEST_CASE("order preservation of pullback, l <= 4 exhaustive") {
    for (int l = 2; l <= 4; ++l) {
        auto cells = enumerate_cells(l);
        for (int k = 1; k <= l; ++k) {
            auto injections = all_injections(k, l);
            for (const auto& a : cells)
                for (const auto& b : cells) {
                    if (!leq(a, b)) continue;
                    for (const auto& phi : injections)
                        CHECK(leq(pullback(phi, a), pullback(phi, b)));
                }
        }
    }
}

TEST_CASE("symmetric action") {
    auto a = OrderedPartition::parse("1,2");
    auto sigma = BasedInjection::permutation({2, 1});
    CHECK(symmetric_action(sigma, a) == OrderedPartition::parse("2,1"));
    CHECK(symmetric_action(BasedInjection::identity(2), a) == a);

    // contravariance: (sigma tau)^* = tau^* sigma^*
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto s = random_injection(n, n, rng);
        auto t = random_injection(n, n, rng);
        auto c = random_cell(n, rng);
        CHECK(symmetric_action(t, symmetric_action(s, c)) ==
              symmetric_action(compose(s, t), c));
    }
}

TEST_CASE("degeneracy pullback") {
    CHECK(degeneracy_pullback(0, OrderedPartition::parse("1|2")) ==
          OrderedPartition::parse("1"));
    CHECK_THROWS_AS(degeneracy_pullback(3, OrderedPartition::parse("1|2")),
                    std::out_of_range);
    for (int n = 2; n <= 5; ++n)
        for (const auto& a : enumerate_cells(n))
            for (int i = 0; i <= n - 1; ++i)
                CHECK(degeneracy_pullback(i, a) ==
                      pullback(BasedInjection::degeneracy(n - 1, i), a));
}

TEST_CASE("insert examples") {
    // case (1.a.ii): value 2 becomes its own block between the bars
    CHECK(insert(EpsilonCase(1, 1, 0, 2), OrderedPartition::parse("1|2")) ==
          OrderedPartition::parse("1|2|3"));
    // case (2.b): append into the last block
    CHECK(insert(EpsilonCase(2, 2, 1, 2), OrderedPartition::parse("1,2")) ==
          OrderedPartition::parse("1,2,3"));
    // boundary aliases collapse to the epsilon = 0 maps
    CHECK(EpsilonCase(0, 2, -1, 2).eps == 0);
    CHECK(EpsilonCase(0, 0, 1, 2).eps == 0);
    CHECK_THROWS_AS(EpsilonCase(0, 3, 0, 2), std::invalid_argument);
}

TEST_CASE("insert then degeneracy round trips, size <= 4") {
    for (int k = 1; k <= 4; ++k)
        for (const auto& b : enumerate_cells(k))
            for (const auto& c : EpsilonCase::all_cases(k)) {
                auto up = insert(c, b);
                CHECK(degeneracy_pullback(c.i, up) == b);
            }
}

TEST_CASE("insert is injective per case, size <= 4") {
    for (int k = 1; k <= 4; ++k) {
        auto cells = enumerate_cells(k);
        for (const auto& c : EpsilonCase::all_cases(k)) {
            std::map<std::uint64_t, int> seen;
            for (size_t idx = 0; idx < cells.size(); ++idx) {
                auto key = pack_cell(insert(c, cells[idx]));
                auto [it, fresh] = seen.emplace(key, idx);
                CHECK(fresh);
            }
        }
    }
}

// Both relation families from the insertion calculus.  The two inserted
// positions must not be adjacent (strict j inequality): on the j = j'
// diagonal the literal statement has counterexamples, e.g. for b = [1],
// e_{0,0,-1} . e_{0,0,0} gives 12|3 while e_{1,1,0} . e_{0,0,-1} gives 123.
TEST_CASE("insertion relation families, size <= 4") {
    for (int k = 1; k <= 4; ++k) {
        auto cells = enumerate_cells(k);
        for (int i = 0; i <= k; ++i)
            for (int ip = i; ip <= k; ++ip)
                for (int j = 0; j <= k; ++j)
                    for (int jp = 0; jp <= k; ++jp)
                        for (int eps = -1; eps <= 1; ++eps)
                            for (int epsp = -1; epsp <= 1; ++epsp) {
                                if (j < jp) {
                                    // e_{i,j,eps} . e_{ip,jp,epsp} = e_{ip+1,jp+1,epsp} . e_{i,j,eps}
                                    for (const auto& b : cells) {
                                        auto lhs = insert(EpsilonCase(i, j, eps, k + 1),
                                                          insert(EpsilonCase(ip, jp, epsp, k), b));
                                        auto rhs = insert(EpsilonCase(ip + 1, jp + 1, epsp, k + 1),
                                                          insert(EpsilonCase(i, j, eps, k), b));
                                        CHECK(lhs == rhs);
                                    }
                                }
                                if (j > jp) {
                                    // e_{i,j+1,eps} . e_{ip,jp,epsp} = e_{ip+1,jp,epsp} . e_{i,j,eps}
                                    for (const auto& b : cells) {
                                        auto lhs = insert(EpsilonCase(i, j + 1, eps, k + 1),
                                                          insert(EpsilonCase(ip, jp, epsp, k), b));
                                        auto rhs = insert(EpsilonCase(ip + 1, jp, epsp, k + 1),
                                                          insert(EpsilonCase(i, j, eps, k), b));
                                        CHECK(lhs == rhs);
                                    }
                                }
                            }
    }
}

TEST_CASE("category relations under pullback, k <= 4") {
    // D^j D^i = D^{i+1} D^j for j <= i
    for (int k = 1; k <= 4; ++k)
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= i; ++j) {
                auto lhs = compose(BasedInjection::degeneracy(k + 1, j),
                                   BasedInjection::degeneracy(k, i));
                auto rhs = compose(BasedInjection::degeneracy(k + 1, i + 1),
                                   BasedInjection::degeneracy(k, j));
                CHECK(lhs == rhs);
                for (const auto& a : enumerate_cells(k + 2))
                    CHECK(pullback(lhs, a) == pullback(rhs, a));
            }
    // sigma . D^i = D^{sigma(i+1)-1} . d_i(sigma)
    for (int k = 1; k <= 4; ++k) {
        auto perms = all_injections(k + 1, k + 1);
        for (const auto& sigma : perms)
            for (int i = 0; i <= k; ++i) {
                auto lhs = compose(sigma, BasedInjection::degeneracy(k, i));
                auto d_i_sigma = decompose_injection(lhs).sharp;
                auto rhs = compose(BasedInjection::degeneracy(k, sigma(i + 1) - 1), d_i_sigma);
                CHECK(lhs == rhs);
                for (const auto& a : enumerate_cells(k + 1)) {
                    CHECK(pullback(lhs, a) ==
                          pullback(d_i_sigma, pullback(BasedInjection::degeneracy(k, sigma(i + 1) - 1), a)));
                }
            }
    }
}

TEST_CASE("morphism checker") {
    auto id = MorphismFamily::identity(3);
    auto rep = check_preoperad_morphism(id);
    CHECK(rep.is_morphism());
    CHECK(rep.idempotent);
    CHECK(rep.image[2].size() == enumerate_cells(3).size());

    // collapse to the all-singleton vertex with the word unchanged
    auto collapse = MorphismFamily::from_function(3, [](const OrderedPartition& a) {
        std::vector<std::vector<int>> blocks;
        for (int v : a.word()) blocks.push_back({v});
        return OrderedPartition(a.n, std::move(blocks));
    });
    auto rep2 = check_preoperad_morphism(collapse);
    CHECK(rep2.complete);  // mechanical run; verdicts are whatever the generators give
    CHECK(rep2.idempotent);

    // perturb the identity on one cell: breaks equivariance
    auto broken = MorphismFamily::identity(3);
    auto cells = enumerate_cells(3, 2);
    broken.tables[2][pack_cell(cells[0])] = cells[1];
    auto rep3 = check_preoperad_morphism(broken);
    CHECK_FALSE(rep3.is_morphism());
    CHECK_FALSE(rep3.counterexample.empty());
}

TEST_SUITE_END();
