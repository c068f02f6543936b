#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "permuto/snf.hpp"

namespace permuto {

/// A word in numbered generators (1-based indices).
using Word = std::vector<int>;

/// Integer element of the tensor algebra on n_vars generators.
struct TensorElement {
    int n_vars = 0;
    std::map<Word, long long> terms;  // zero coefficients never stored

    void add(const Word& w, long long coeff);
    bool operator==(const TensorElement& o) const = default;
};

/// Integer element of T(V) smash T(V): both word components nonempty.
struct SplitTensorElement {
    std::map<std::pair<Word, Word>, long long> terms;

    void add(Word left, Word right, long long coeff);
    long long term_count() const { return static_cast<long long>(terms.size()); }
    bool operator==(const SplitTensorElement& o) const = default;
};

/// The shuffle map: sum over all order-preserving splittings of the
/// positions of w into two nonempty sets; one (i, j) component if given.
SplitTensorElement shuffle_map(const Word& w,
                               std::optional<std::pair<int, int>> component = std::nullopt);

/// The reduced coproduct with primitive generators, expanded
/// multiplicatively and projected to the top word-length quotient.
/// Must coincide with shuffle_map.
SplitTensorElement reduced_coproduct_quotient(const Word& w);

struct LieRankResult {
    long long rank = 0;
    bool direct_summand = false;  // all invariant factors of the span are 1
    std::vector<BigInt> invariant_factors;
};

/// Rank of the integer span of all n! left-normed brackets
/// [[x_{s(1)}, x_{s(2)}], ..., x_{s(n)}] inside the multilinear slice of
/// the degree-n tensors.
LieRankResult lie_rank(int n);  // 2 <= n <= 6

}  // namespace permuto
