#include <doctest.h>

#include <numeric>
#include <random>

#include "permuto/ordered_partition.hpp"
#include "permuto/tensoralg.hpp"

using namespace permuto;

TEST_SUITE_BEGIN("tensoralg");

TEST_CASE("shuffle map examples") {
    auto sh = shuffle_map({1, 2}, std::make_pair(1, 1));
    SplitTensorElement want;
    want.add({1}, {2}, 1);
    want.add({2}, {1}, 1);
    CHECK(sh == want);

    // 2^k - 2 terms in the full map on distinct letters
    for (int k = 2; k <= 8; ++k) {
        Word w(k);
        std::iota(w.begin(), w.end(), 1);
        CHECK(shuffle_map(w).term_count() == (1LL << k) - 2);
    }

    CHECK_THROWS_AS(shuffle_map({1, 2, 3}, std::make_pair(3, 0)), std::invalid_argument);
    CHECK_THROWS_AS(shuffle_map({1}), std::invalid_argument);
}

TEST_CASE("component term counts are binomial") {
    Word w{1, 2, 3, 4, 5};
    for (int i = 1; i <= 4; ++i)
        CHECK(shuffle_map(w, std::make_pair(i, 5 - i)).term_count() == binomial(5, i));
}

TEST_CASE("reduced coproduct equals shuffle map") {
    // length 2 expansion by hand
    auto c2 = reduced_coproduct_quotient({1, 2});
    CHECK(c2 == shuffle_map({1, 2}));

    // all distinct-letter words of length <= 6
    for (int k = 2; k <= 6; ++k) {
        Word w(k);
        std::iota(w.begin(), w.end(), 1);
        do {
            CHECK(reduced_coproduct_quotient(w) == shuffle_map(w));
        } while (std::next_permutation(w.begin(), w.end()));
    }

    // fuzzed words with repeated letters
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        int k = 2 + static_cast<int>(rng() % 5);
        Word w(k);
        for (auto& x : w) x = 1 + static_cast<int>(rng() % 3);
        CHECK(reduced_coproduct_quotient(w) == shuffle_map(w));
    }
}

TEST_CASE("single letter has zero reduced coproduct") {
    CHECK(reduced_coproduct_quotient({1}).terms.empty());
}

TEST_CASE("lie ranks") {
    CHECK(lie_rank(2).rank == 1);
    CHECK(lie_rank(3).rank == 2);
    CHECK(lie_rank(4).rank == 6);
    for (int n = 2; n <= 5; ++n) {
        auto r = lie_rank(n);
        CHECK(r.rank == factorial(n - 1));
        CHECK(r.direct_summand);
    }
    CHECK_THROWS_AS(lie_rank(7), std::out_of_range);
}

TEST_SUITE_END();
