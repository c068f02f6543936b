#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <tuple>
#include <vector>

namespace permuto {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse integer matrix in coordinate form.  Duplicate (row, col) pairs
/// accumulate.
struct SparseIntMat {
    int rows = 0;
    int cols = 0;
    std::vector<std::tuple<int, int, long long>> entries;

    SparseIntMat() = default;
    SparseIntMat(int r, int c) : rows(r), cols(c) {}
    void add(int r, int c, long long v);
    bool is_zero() const;
};

/// C = A * B.
SparseIntMat sparse_mul(const SparseIntMat& A, const SparseIntMat& B);

struct SmithResult {
    std::vector<BigInt> invariant_factors;  // nonzero, each divides the next
    long long rank() const { return static_cast<long long>(invariant_factors.size()); }
    std::vector<BigInt> torsion() const;    // factors > 1
};

/// Exact Smith normal form over the integers.  Unit pivots are eliminated
/// on the sparse structure first; whatever remains is finished densely.
SmithResult smith_normal_form(const SparseIntMat& m);

long long rank_of(const SparseIntMat& m);

/// Dense matrices over arbitrary-precision integers.
struct DenseMat {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> a;

    DenseMat() = default;
    DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    BigInt& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const BigInt& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    static DenseMat identity(int n);
    bool operator==(const DenseMat& o) const = default;
};

DenseMat mat_mul(const DenseMat& A, const DenseMat& B);

/// Columns spanning ker(A) over the integers (always a saturated lattice).
DenseMat kernel_basis(const DenseMat& A);

/// Canonical column-style Hermite normal form of the column lattice; zero
/// columns dropped.  Lattices are equal iff their forms are equal.
DenseMat column_hnf(const DenseMat& A);

/// Does x lie in the lattice spanned by A's columns?
bool lattice_contains(const DenseMat& A, const std::vector<BigInt>& x);

bool lattice_equal(const DenseMat& A, const DenseMat& B);

std::vector<BigInt> smith_dense(DenseMat A);  // invariant factors, nonzero only

}  // namespace permuto
