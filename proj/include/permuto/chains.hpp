#pragma once

#include <string>
#include <vector>

#include "permuto/coend.hpp"
#include "permuto/ordered_partition.hpp"
#include "permuto/snf.hpp"

namespace permuto {

/// Integer cellular chain complex: a graded basis of named cells and one
/// boundary matrix per positive degree.
struct ChainComplex {
    std::vector<std::vector<std::string>> basis;  // basis[d] = degree-d cell names
    std::vector<SparseIntMat> boundary;           // boundary[d]: C_d -> C_{d-1}; boundary[0] empty

    int top_degree() const { return static_cast<int>(basis.size()) - 1; }
    long long cells_in(int d) const { return static_cast<long long>(basis[d].size()); }
    long long euler_characteristic() const;

    /// Throws std::runtime_error unless the shape is coherent and d.d = 0.
    void check_integrity() const;
};

struct HomologyResult {
    std::vector<long long> betti;
    std::vector<std::vector<BigInt>> torsion;  // invariant factors > 1 per degree
};

/// Cellular chain complex of F(n), the permutohedral model of the
/// configuration space: cells are the ordered partitions of {1..n} with
/// incidence signs from a consistent orientation of every cell.
ChainComplex build_F_complex(int n);  // n <= 6

/// Chain complex of the divided power D_k(S) = F(k)^+ smash_{Sigma_k} S^k:
/// basis classes are orbits of basepoint-free labelled cells; cells with a
/// basepoint label are collapsed.
ChainComplex build_D_complex(int k, const BasedSet& S);  // k <= 5, s <= 3

/// Exact integer homology via Smith normal form.
HomologyResult homology(const ChainComplex& c);

/// Simplicial homology of the order complex (chain nerve) of L(n);
/// independent oracle for build_F_complex + homology.
HomologyResult order_complex_homology(int n);  // n <= 4

/// The chain-level evaluation quotient: kill every degree below the top.
struct TopCollapse {
    int top_degree = 0;
    std::vector<std::string> image_basis;  // the surviving top chains
    bool section_identity = false;         // collapse . inclusion == id on top chains
};
TopCollapse top_collapse(const ChainComplex& c);

/// One j-component of the top-cell boundary versus the shuffle data.
struct ShuffleComponent {
    int j = 0;
    long long binomial_count = 0;    // C(k, j): number of (j, k-j) shuffles
    long long boundary_coeff = 0;    // top-class boundary coefficient on class j
    long long signed_shuffle_sum = 0;// sum of permutation signs over the shuffles
    bool mod2_match = false;         // boundary_coeff == C(k,j) mod 2
    bool signed_match = false;       // |boundary_coeff| == |signed_shuffle_sum|
    int relative_sign = 0;           // boundary vs shuffle orientation, when nonzero
};

struct ShuffleCheckReport {
    int k = 0;
    std::vector<ShuffleComponent> components;
    bool all_mod2() const;
    bool all_signed() const;
};

/// Boundary of the top orbit class of D_k({0,1}) against the shuffle-map
/// component data.
ShuffleCheckReport shuffle_boundary_check(int k);  // 2 <= k <= 5

/// Connecting maps of the skeletal filtration; their consecutive
/// composites must vanish.
struct LadderReport {
    std::vector<bool> composite_zero;  // index d: g_{d-1} . g_d == 0
    bool all_zero() const;
};
LadderReport ladder_composites(const ChainComplex& c);

}  // namespace permuto
