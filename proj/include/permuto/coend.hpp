#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permuto/ordered_partition.hpp"
#include "permuto/preoperad.hpp"

namespace permuto {

/// A finite based set {0, 1, ..., s} with 0 the basepoint.
struct BasedSet {
    int s = 0;
    explicit BasedSet(int s_) : s(s_) {
        if (s < 0) throw std::invalid_argument("BasedSet: s must be >= 0");
    }
    int size() const { return s; }
};

/// An equivalence class of the combinatorial coend L(S): a cell of L(k)
/// with a label in S per coordinate, stored in canonical form (no
/// basepoint labels, lexicographically least element of its orbit).
/// The class of any fully-basepoint-labelled pair is the basepoint class,
/// stored with k = 0 and an empty cell.
struct CoendClass {
    int k = 0;
    OrderedPartition cell;   // meaningful only when k >= 1
    std::vector<int> labels; // size k, values in {1..s} in canonical form

    bool is_basepoint() const { return k == 0; }
    int filtration() const { return k; }
    std::string str() const;

    bool operator==(const CoendClass& o) const {
        return k == o.k && labels == o.labels && (k == 0 || cell == o.cell);
    }
    bool operator<(const CoendClass& o) const;
};

/// The diagonal symmetric-group action on labelled cells:
/// sigma . (b, x) = (sigma^*(b), x o sigma).
std::pair<OrderedPartition, std::vector<int>> act_on_pair(
    const BasedInjection& sigma, const OrderedPartition& cell,
    const std::vector<int>& labels);

/// Strips the basepoint coordinates via the degeneracy relation, then
/// minimizes over the full symmetric-group orbit.
CoendClass canonicalize(const OrderedPartition& cell, const std::vector<int>& labels);

/// Representative-level map behind f_{i,j,eps}: insert the new coordinate
/// into the cell and a basepoint label at slot i+1, then canonicalize.
CoendClass f_map(const EpsilonCase& c, const CoendClass& cls);

/// All distinct classes with cell size <= k_max, grouped by filtration
/// degree (index 0 holds only the basepoint class), each group in
/// deterministic order.
std::vector<std::vector<CoendClass>> enumerate_coend(const BasedSet& S, int k_max);

struct ExactnessReport {
    bool injective = true;       // every f_{i,j,eps} injective on orbit classes
    bool surjective = true;      // q hits every coend class of filtration <= k+1
    bool coequalizer = true;     // zig-zag closure of f-images == fibers of q
    long long orbit_classes_k = 0;
    long long orbit_classes_k1 = 0;
    long long coend_classes = 0;
    std::string detail;          // first failure, if any

    bool all() const { return injective && surjective && coequalizer; }
};

/// Mechanical verification of the exact sequence
///   0 -> L(k) x_{Sigma_k} S^k  =(f_{i,j,eps})=>  L(k+1) x_{Sigma_{k+1}} S^{k+1}
///     -> L_{k+1}(S) -> 0.
ExactnessReport verify_exactness(const BasedSet& S, int k);

}  // namespace permuto
