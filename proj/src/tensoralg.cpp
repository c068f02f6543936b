#include "permuto/tensoralg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "permuto/ordered_partition.hpp"

namespace permuto {

void TensorElement::add(const Word& w, long long coeff) {
    if (coeff == 0) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
    }
}

void SplitTensorElement::add(Word left, Word right, long long coeff) {
    if (left.empty() || right.empty())
        throw std::invalid_argument("SplitTensorElement: components must be nonempty");
    if (coeff == 0) return;
    auto key = std::make_pair(std::move(left), std::move(right));
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms.erase(it);
    }
}

SplitTensorElement shuffle_map(const Word& w, std::optional<std::pair<int, int>> component) {
    int k = static_cast<int>(w.size());
    if (k < 2) throw std::invalid_argument("shuffle_map: word length must be >= 2");
    if (component) {
        auto [i, j] = *component;
        if (i <= 0 || j <= 0 || i + j != k)
            throw std::invalid_argument("shuffle_map: bad component (need i,j > 0, i+j = k)");
    }
    SplitTensorElement out;
    for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
        int i = __builtin_popcount(mask);
        if (component && i != component->first) continue;
        Word left, right;
        for (int p = 0; p < k; ++p)
            ((mask >> p) & 1u ? left : right).push_back(w[p]);
        out.add(std::move(left), std::move(right), 1);
    }
    return out;
}

SplitTensorElement reduced_coproduct_quotient(const Word& w) {
    int k = static_cast<int>(w.size());
    if (k < 1) throw std::invalid_argument("reduced_coproduct_quotient: empty word");
    // psi(y) = y (x) 1 + 1 (x) y on generators, extended multiplicatively;
    // expand the product in T(V) (x) T(V), then pass to the smash quotient
    // by dropping the terms with an empty side.
    std::map<std::pair<Word, Word>, long long> acc;
    acc[{Word{}, Word{}}] = 1;
    for (int letter : w) {
        std::map<std::pair<Word, Word>, long long> next;
        for (const auto& [pair, coeff] : acc) {
            auto l = pair.first;
            l.push_back(letter);
            next[{std::move(l), pair.second}] += coeff;
            auto r = pair.second;
            r.push_back(letter);
            next[{pair.first, std::move(r)}] += coeff;
        }
        acc = std::move(next);
    }
    SplitTensorElement out;
    for (const auto& [pair, coeff] : acc) {
        if (pair.first.empty() || pair.second.empty()) continue;  // smash quotient
        out.add(pair.first, pair.second, coeff);
    }
    return out;
}

LieRankResult lie_rank(int n) {
    if (n < 2 || n > 6) throw std::out_of_range("lie_rank: n out of bounds");
    // index the multilinear words (permutations of 1..n)
    std::map<Word, int> word_index;
    {
        Word p(n);
        std::iota(p.begin(), p.end(), 1);
        int idx = 0;
        do {
            word_index.emplace(p, idx++);
        } while (std::next_permutation(p.begin(), p.end()));
    }

    SparseIntMat span(static_cast<int>(word_index.size()), static_cast<int>(factorial(n)));
    Word sigma(n);
    std::iota(sigma.begin(), sigma.end(), 1);
    int col = 0;
    do {
        // expand [[x_{s(1)}, x_{s(2)}], ..., x_{s(n)}] iteratively
        TensorElement acc;
        acc.n_vars = n;
        acc.add({sigma[0]}, 1);
        for (int t = 1; t < n; ++t) {
            TensorElement next;
            next.n_vars = n;
            for (const auto& [w, c] : acc.terms) {
                Word l = w;
                l.push_back(sigma[t]);
                next.add(l, c);
                Word r{sigma[t]};
                r.insert(r.end(), w.begin(), w.end());
                next.add(r, -c);
            }
            acc = std::move(next);
        }
        for (const auto& [w, c] : acc.terms) span.add(word_index.at(w), col, c);
        ++col;
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    auto snf = smith_normal_form(span);
    LieRankResult res;
    res.rank = snf.rank();
    res.invariant_factors = snf.invariant_factors;
    res.direct_summand = snf.torsion().empty();
    return res;
}

}  // namespace permuto
