#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "permuto/ordered_partition.hpp"

namespace permuto {

/// A based injection {0..k} -> {0..l} fixing 0, stored by the image
/// sequence of 1..k; the based point is implicit.
struct BasedInjection {
    int k = 0;
    int l = 0;
    std::vector<int> images;  // images[i-1] = phi(i), distinct, in {1..l}

    BasedInjection() = default;
    BasedInjection(int k_, int l_, std::vector<int> images_);

    int operator()(int i) const { return i == 0 ? 0 : images[i - 1]; }

    static BasedInjection identity(int k);
    /// D^i: {0..k} -> {0..k+1}, omitting the value i+1 (0 <= i <= k).
    static BasedInjection degeneracy(int k, int i);
    /// A permutation of {1..k} given by its image sequence.
    static BasedInjection permutation(std::vector<int> images);

    bool is_permutation() const { return k == l; }
    bool is_increasing() const;
    std::vector<int> inverse_permutation() const;  // requires k == l

    bool operator==(const BasedInjection& o) const = default;

    void check_valid() const;
};

/// phi = phi_inc . phi_sharp with phi_sharp a permutation of {1..k} and
/// phi_inc strictly increasing; the decomposition is unique.
struct InjectionDecomposition {
    BasedInjection sharp;
    BasedInjection inc;
};

InjectionDecomposition decompose_injection(const BasedInjection& phi);

/// Functional composition: (phi . psi)(i) = phi(psi(i)).
BasedInjection compose(const BasedInjection& phi, const BasedInjection& psi);

/// The preoperad structure map phi^*: L(l) -> L(k), computed by the
/// pair-form diagram chase.
OrderedPartition pullback(const BasedInjection& phi, const OrderedPartition& a);

/// Independent description of the same map: restrict the barred word of a
/// to the image of phi, keep order and bars, drop emptied blocks, relabel
/// each surviving value v as phi^{-1}(v).
OrderedPartition pullback_oracle(const BasedInjection& phi, const OrderedPartition& a);

/// sigma^*(a) = (sigma^{-1} . word, bars unchanged): relabel every value v
/// as sigma^{-1}(v).
OrderedPartition symmetric_action(const BasedInjection& sigma, const OrderedPartition& a);

/// Pullback along D^i (deletes value i+1, relabels larger values down).
OrderedPartition degeneracy_pullback(int i, const OrderedPartition& a);

/// The case selector for the insertion morphisms e_{i,j}^eps.
/// At j = k only eps in {0,+1} and at j = 0 only eps in {-1,0} name
/// distinct maps; the other values alias to eps = 0 and are normalized
/// away at construction.
struct EpsilonCase {
    int i = 0;
    int j = 0;
    int eps = 0;

    EpsilonCase(int i_, int j_, int eps_, int k);

    /// Distinct cases valid at level k (aliases removed).
    static std::vector<EpsilonCase> all_cases(int k);
};

/// e_{i,j}^eps: L(k) -> L(k+1).  Inserts the new value i+1 (larger values
/// shift up) at word position j+1; the block membership of the new value
/// follows the epsilon case table.
OrderedPartition insert(const EpsilonCase& c, const OrderedPartition& b);

/// A level-indexed family of self maps of L(n), given as explicit tables.
struct MorphismFamily {
    int max_n = 0;
    // level n -> (cell -> image cell), keyed by packed cell
    std::vector<std::map<std::uint64_t, OrderedPartition>> tables;

    const OrderedPartition& apply(const OrderedPartition& a) const;
    static MorphismFamily identity(int max_n);
    static MorphismFamily from_function(
        int max_n, const std::function<OrderedPartition(const OrderedPartition&)>& f);
};

struct MorphismReport {
    bool complete = true;        // every cell has a table entry
    bool order_preserving = true;
    bool natural = true;         // commutes with all degeneracies and adjacent transpositions
    bool idempotent = true;
    std::string counterexample;  // first violation found, if any
    std::vector<std::vector<OrderedPartition>> image;  // per level, when idempotent

    bool is_morphism() const { return complete && order_preserving && natural; }
};

/// Verifies a family against the generating morphisms of the category
/// (degeneracies and adjacent transpositions up to max_n) and reports
/// idempotency and the image sub-preoperad.
MorphismReport check_preoperad_morphism(const MorphismFamily& family);

}  // namespace permuto
