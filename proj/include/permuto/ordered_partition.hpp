#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace permuto {

/// An ordered partition of {1..n}: a sequence of nonempty blocks, each a
/// sequence of distinct values, whose concatenation is a permutation of
/// {1..n}.  These are the cells of the permutohedral poset L(n); the cell
/// 235|741|6 in L(7) has blocks {2,3,5},{7,4,1},{6} in that internal order.
struct OrderedPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    OrderedPartition() = default;
    OrderedPartition(int n_, std::vector<std::vector<int>> blocks_);

    /// Cell dimension: n minus the number of blocks.
    int degree() const { return n - static_cast<int>(blocks.size()); }

    /// Concatenation of the blocks; entry at position p (0-based) is the
    /// value at word position p+1.
    std::vector<int> word() const;

    /// Block index (1-based) of each word position, nondecreasing.
    std::vector<int> surjection() const;

    /// Block index (1-based) of each value v in {1..n} (index v-1).
    std::vector<int> block_of_value() const;

    /// Word position (1-based) of each value v in {1..n} (index v-1).
    std::vector<int> position_of_value() const;

    bool operator==(const OrderedPartition& o) const {
        return n == o.n && blocks == o.blocks;
    }
    bool operator<(const OrderedPartition& o) const {
        return blocks < o.blocks;
    }

    /// "235|741|6" form.
    std::string str() const;
    static OrderedPartition parse(const std::string& s);

    void check_valid() const;  // throws std::invalid_argument on violation
};

/// Presentation of a cell by the pair (word permutation, nondecreasing
/// block surjection), both as 1-based image sequences.
struct PairForm {
    std::vector<int> perm;  // position -> value
    std::vector<int> surj;  // position -> block index, nondecreasing onto {1..t}

    static PairForm of(const OrderedPartition& a);
    OrderedPartition to_partition() const;
};

/// Compact key for cells with n <= 12: word packed 4 bits per value plus
/// the bar mask in the high bits.
std::uint64_t pack_cell(const OrderedPartition& a);

inline constexpr int kDefaultEnumBound = 8;

/// Bound used by enumerate_cells and friends; reads PERMUTO_MAX_N once.
int enumeration_bound();

/// All cells of L(n), optionally filtered to one dimension, in
/// lexicographic order on the block lists.
std::vector<OrderedPartition> enumerate_cells(int n, std::optional<int> dim = std::nullopt);

/// Streaming enumeration (word-major order, not globally sorted).
void for_each_cell(int n, const std::function<void(const OrderedPartition&)>& fn);

/// Number of cells of each dimension, by exhaustive enumeration of
/// (word, bar mask) pairs; index d of the result is the count in dimension d.
std::vector<long long> count_cells_by_dim(int n);

/// Direct order criterion: a precedes-or-equals b.  Requires a.n == b.n.
/// True iff the block map rho exists, is nondecreasing, and consecutive
/// entries of each block of a keep their relative order in the word of b.
bool leq(const OrderedPartition& a, const OrderedPartition& b);

/// Independent oracle for leq: breadth-first closure of the cover moves
/// (merge two adjacent blocks by a shuffle).  Exponential; bounded size.
bool leq_oracle(const OrderedPartition& a, const OrderedPartition& b, int bound = 6);

/// All single merge moves upward from a: one adjacent block pair replaced
/// by one of its shuffles.
std::vector<OrderedPartition> upward_covers(const OrderedPartition& a);

/// Hasse diagram of (L(n), <=): every pair (a, merged a).
std::vector<std::pair<OrderedPartition, OrderedPartition>> cover_relations(int n);

/// All shuffles of two sequences (order-preserving interleavings).
std::vector<std::vector<int>> shuffles(const std::vector<int>& s, const std::vector<int>& t);

/// DOT export of the Hasse diagram of L(n).
std::string hasse_dot(int n);

long long binomial(int n, int k);
long long factorial(int n);

}  // namespace permuto
