#include "permuto/snf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace permuto {

void SparseIntMat::add(int r, int c, long long v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::out_of_range("SparseIntMat::add: index out of range");
    if (v != 0) entries.emplace_back(r, c, v);
}

bool SparseIntMat::is_zero() const {
    std::map<std::pair<int, int>, long long> acc;
    for (const auto& [r, c, v] : entries) acc[{r, c}] += v;
    for (const auto& [rc, v] : acc)
        if (v != 0) return false;
    return true;
}

SparseIntMat sparse_mul(const SparseIntMat& A, const SparseIntMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("sparse_mul: dimension mismatch");
    std::vector<std::vector<std::pair<int, long long>>> b_rows(B.rows);
    for (const auto& [r, c, v] : B.entries) b_rows[r].emplace_back(c, v);
    std::map<std::pair<int, int>, long long> acc;
    for (const auto& [r, c, v] : A.entries)
        for (const auto& [c2, v2] : b_rows[c]) acc[{r, c2}] += v * v2;
    SparseIntMat out(A.rows, B.cols);
    for (const auto& [rc, v] : acc)
        if (v != 0) out.entries.emplace_back(rc.first, rc.second, v);
    return out;
}

namespace {

// Sparse elimination state with cpp_int values.
struct Elim {
    std::vector<std::map<int, BigInt>> row;  // row -> (col -> value)
    std::vector<std::set<int>> col_rows;     // col -> rows with a nonzero
    std::vector<char> row_live, col_live;

    explicit Elim(const SparseIntMat& m) {
        row.resize(m.rows);
        col_rows.resize(m.cols);
        row_live.assign(m.rows, 1);
        col_live.assign(m.cols, 1);
        std::map<std::pair<int, int>, long long> acc;
        for (const auto& [r, c, v] : m.entries) acc[{r, c}] += v;
        for (const auto& [rc, v] : acc) {
            if (v == 0) continue;
            row[rc.first][rc.second] = v;
            col_rows[rc.second].insert(rc.first);
        }
    }

    void set(int r, int c, BigInt v) {
        auto it = row[r].find(c);
        if (v == 0) {
            if (it != row[r].end()) {
                row[r].erase(it);
                col_rows[c].erase(r);
            }
        } else {
            if (it == row[r].end()) {
                row[r].emplace(c, std::move(v));
                col_rows[c].insert(r);
            } else {
                it->second = std::move(v);
            }
        }
    }

    // row[r] -= q * row[pr]
    void row_axpy(int r, int pr, const BigInt& q) {
        if (q == 0) return;
        for (const auto& [c, v] : row[pr]) {
            BigInt nv = (row[r].count(c) ? row[r][c] : BigInt(0)) - q * v;
            set(r, c, std::move(nv));
        }
    }

    void kill(int pr, int pc) {
        for (const auto& [c, v] : row[pr]) col_rows[c].erase(pr);
        row[pr].clear();
        row_live[pr] = 0;
        col_live[pc] = 0;
    }
};

std::vector<BigInt> smith_dense_impl(DenseMat A) {
    std::vector<BigInt> factors;
    int r0 = 0, c0 = 0;
    while (r0 < A.rows && c0 < A.cols) {
        // locate the entry of least absolute value in the remaining block
        int pr = -1, pc = -1;
        BigInt best;
        for (int r = r0; r < A.rows; ++r)
            for (int c = c0; c < A.cols; ++c) {
                const BigInt& v = A.at(r, c);
                if (v == 0) continue;
                BigInt av = abs(v);
                if (pr < 0 || av < best) {
                    best = av;
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break;
        for (int c = c0; c < A.cols; ++c) std::swap(A.at(r0, c), A.at(pr, c));
        for (int r = r0; r < A.rows; ++r) std::swap(A.at(r, c0), A.at(r, pc));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = r0 + 1; r < A.rows; ++r) {
                if (A.at(r, c0) == 0) continue;
                BigInt q = A.at(r, c0) / A.at(r0, c0);
                for (int c = c0; c < A.cols; ++c) A.at(r, c) -= q * A.at(r0, c);
                if (A.at(r, c0) != 0) {  // remainder: swap up and restart
                    for (int c = c0; c < A.cols; ++c) std::swap(A.at(r0, c), A.at(r, c));
                    clean = false;
                }
            }
            for (int c = c0 + 1; c < A.cols; ++c) {
                if (A.at(r0, c) == 0) continue;
                BigInt q = A.at(r0, c) / A.at(r0, c0);
                for (int r = r0; r < A.rows; ++r) A.at(r, c) -= q * A.at(r, c0);
                if (A.at(r0, c) != 0) {
                    for (int r = r0; r < A.rows; ++r) std::swap(A.at(r, c0), A.at(r, c));
                    clean = false;
                }
            }
        }
        factors.push_back(abs(A.at(r0, c0)));
        ++r0;
        ++c0;
    }
    // repair the divisibility chain
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < factors.size(); ++i) {
            if (factors[i + 1] % factors[i] != 0) {
                BigInt g = gcd(factors[i], factors[i + 1]);
                BigInt l = factors[i] / g * factors[i + 1];
                factors[i] = g;
                factors[i + 1] = l;
                changed = true;
            }
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

}  // namespace

std::vector<BigInt> smith_dense(DenseMat A) { return smith_dense_impl(std::move(A)); }

SmithResult smith_normal_form(const SparseIntMat& m) {
    Elim e(m);
    long long unit_pivots = 0;

    // Unit-pivot sweep, visiting columns in order of current size via a
    // lazy min-heap; columns without a unit entry are parked and revisited
    // after the next successful pivot.
    using HeapItem = std::pair<size_t, int>;  // (column size, column)
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    for (int c = 0; c < m.cols; ++c)
        if (!e.col_rows[c].empty()) heap.emplace(e.col_rows[c].size(), c);
    std::vector<int> parked;
    bool pivoted_since_rebuild = true;

    for (;;) {
        if (heap.empty()) {
            if (parked.empty() || !pivoted_since_rebuild) break;
            for (int c : parked)
                if (e.col_live[c] && !e.col_rows[c].empty())
                    heap.emplace(e.col_rows[c].size(), c);
            parked.clear();
            pivoted_since_rebuild = false;
            if (heap.empty()) break;
        }
        auto [sz, pc] = heap.top();
        heap.pop();
        if (!e.col_live[pc] || e.col_rows[pc].empty()) continue;
        if (e.col_rows[pc].size() != sz) {  // stale entry
            heap.emplace(e.col_rows[pc].size(), pc);
            continue;
        }
        int pr = -1;
        size_t best_row = 0;
        for (int r : e.col_rows[pc]) {
            const BigInt& v = e.row[r].at(pc);
            if (v != 1 && v != -1) continue;
            if (pr < 0 || e.row[r].size() < best_row) {
                pr = r;
                best_row = e.row[r].size();
            }
        }
        if (pr < 0) {
            parked.push_back(pc);
            continue;
        }
        BigInt piv = e.row[pr].at(pc);
        auto rows_in_col = std::vector<int>(e.col_rows[pc].begin(), e.col_rows[pc].end());
        for (int r : rows_in_col) {
            if (r == pr) continue;
            BigInt q = e.row[r].at(pc) * piv;  // piv^{-1} == piv for units
            e.row_axpy(r, pr, q);
        }
        // columns touched by the pivot row get fresh heap entries
        for (const auto& [c, v] : e.row[pr])
            if (c != pc && e.col_live[c] && !e.col_rows[c].empty())
                heap.emplace(e.col_rows[c].size(), c);
        e.kill(pr, pc);
        ++unit_pivots;
        pivoted_since_rebuild = true;
        if (!parked.empty()) {
            for (int c : parked)
                if (e.col_live[c] && !e.col_rows[c].empty())
                    heap.emplace(e.col_rows[c].size(), c);
            parked.clear();
        }
    }

    // Compact the remaining live block and finish densely.
    std::vector<int> live_rows, live_cols;
    std::unordered_map<int, int> col_id;
    for (int r = 0; r < m.rows; ++r)
        if (e.row_live[r] && !e.row[r].empty()) live_rows.push_back(r);
    for (int c = 0; c < m.cols; ++c)
        if (e.col_live[c] && !e.col_rows[c].empty()) {
            col_id[c] = static_cast<int>(live_cols.size());
            live_cols.push_back(c);
        }
    SmithResult result;
    result.invariant_factors.assign(static_cast<size_t>(unit_pivots), BigInt(1));
    if (!live_rows.empty()) {
        DenseMat core(static_cast<int>(live_rows.size()), static_cast<int>(live_cols.size()));
        for (size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : e.row[live_rows[i]])
                core.at(static_cast<int>(i), col_id.at(c)) = v;
        for (auto& f : smith_dense_impl(std::move(core)))
            result.invariant_factors.push_back(std::move(f));
    }
    // ones first, then the rest in divisibility order
    std::sort(result.invariant_factors.begin(), result.invariant_factors.end());
    return result;
}

long long rank_of(const SparseIntMat& m) { return smith_normal_form(m).rank(); }

std::vector<BigInt> SmithResult::torsion() const {
    std::vector<BigInt> out;
    for (const auto& f : invariant_factors)
        if (f > 1) out.push_back(f);
    return out;
}

DenseMat DenseMat::identity(int n) {
    DenseMat I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

DenseMat mat_mul(const DenseMat& A, const DenseMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
    DenseMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const BigInt& v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                if (B.at(k, j) != 0) C.at(i, j) += v * B.at(k, j);
        }
    return C;
}

namespace {

// Integer column echelon: A is transformed in place by unimodular column
// operations, mirrored onto U.  Returns the pivot (row, col) list.
std::vector<std::pair<int, int>> column_echelon(DenseMat& A, DenseMat& U) {
    std::vector<std::pair<int, int>> pivots;
    int next_col = 0;
    for (int r = 0; r < A.rows && next_col < A.cols; ++r) {
        // gcd-eliminate across columns next_col..end on row r
        for (;;) {
            int p = -1;
            BigInt best;
            for (int c = next_col; c < A.cols; ++c) {
                if (A.at(r, c) == 0) continue;
                BigInt av = abs(A.at(r, c));
                if (p < 0 || av < best) {
                    best = av;
                    p = c;
                }
            }
            if (p < 0) break;
            bool reduced = true;
            for (int c = next_col; c < A.cols; ++c) {
                if (c == p || A.at(r, c) == 0) continue;
                BigInt q = A.at(r, c) / A.at(r, p);
                for (int i = 0; i < A.rows; ++i) A.at(i, c) -= q * A.at(i, p);
                for (int i = 0; i < U.rows; ++i) U.at(i, c) -= q * U.at(i, p);
                if (A.at(r, c) != 0) reduced = false;
            }
            if (reduced) {
                for (int i = 0; i < A.rows; ++i) std::swap(A.at(i, next_col), A.at(i, p));
                for (int i = 0; i < U.rows; ++i) std::swap(U.at(i, next_col), U.at(i, p));
                pivots.emplace_back(r, next_col);
                ++next_col;
                break;
            }
        }
    }
    return pivots;
}

}  // namespace

DenseMat kernel_basis(const DenseMat& A_in) {
    DenseMat A = A_in;
    DenseMat U = DenseMat::identity(A.cols);
    auto pivots = column_echelon(A, U);
    int r = static_cast<int>(pivots.size());
    DenseMat K(A.cols, A.cols - r);
    for (int c = r; c < A.cols; ++c)
        for (int i = 0; i < A.cols; ++i) K.at(i, c - r) = U.at(i, c);
    return K;
}

DenseMat column_hnf(const DenseMat& A_in) {
    DenseMat A = A_in;
    DenseMat U = DenseMat::identity(A.cols);
    auto pivots = column_echelon(A, U);
    // normalize: positive pivots, entries to the right of each pivot reduced
    for (size_t k = 0; k < pivots.size(); ++k) {
        auto [r, c] = pivots[k];
        if (A.at(r, c) < 0)
            for (int i = 0; i < A.rows; ++i) A.at(i, c) = -A.at(i, c);
    }
    for (size_t k = 0; k < pivots.size(); ++k) {
        auto [r, c] = pivots[k];
        for (int c2 = 0; c2 < c; ++c2) {
            // reduce earlier columns at this pivot row (entries below prior pivots)
            BigInt q;
            if (A.at(r, c2) >= 0)
                q = A.at(r, c2) / A.at(r, c);
            else
                q = -((-A.at(r, c2) + A.at(r, c) - 1) / A.at(r, c));
            if (q != 0)
                for (int i = 0; i < A.rows; ++i) A.at(i, c2) -= q * A.at(i, c);
        }
    }
    DenseMat H(A.rows, static_cast<int>(pivots.size()));
    for (size_t k = 0; k < pivots.size(); ++k)
        for (int i = 0; i < A.rows; ++i) H.at(i, static_cast<int>(k)) = A.at(i, pivots[k].second);
    return H;
}

bool lattice_contains(const DenseMat& A, const std::vector<BigInt>& x) {
    if (static_cast<int>(x.size()) != A.rows)
        throw std::invalid_argument("lattice_contains: dimension mismatch");
    DenseMat H = column_hnf(A);
    std::vector<BigInt> v = x;
    // forward substitution along the echelon pivots
    int col = 0;
    for (int r = 0; r < A.rows && col < H.cols; ++r) {
        if (H.at(r, col) == 0) continue;
        BigInt q = v[r] / H.at(r, col);
        if (v[r] % H.at(r, col) != 0) return false;
        for (int i = 0; i < A.rows; ++i) v[i] -= q * H.at(i, col);
        ++col;
    }
    for (const auto& e : v)
        if (e != 0) return false;
    return true;
}

bool lattice_equal(const DenseMat& A, const DenseMat& B) {
    if (A.rows != B.rows) return false;
    return column_hnf(A) == column_hnf(B);
}

}  // namespace permuto
