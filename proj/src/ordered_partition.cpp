#include "permuto/ordered_partition.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace permuto {

OrderedPartition::OrderedPartition(int n_, std::vector<std::vector<int>> blocks_)
    : n(n_), blocks(std::move(blocks_)) {
    check_valid();
}

void OrderedPartition::check_valid() const {
    if (n < 1) throw std::invalid_argument("OrderedPartition: n must be >= 1");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    int total = 0;
    for (const auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("OrderedPartition: empty block");
        for (int v : b) {
            if (v < 1 || v > n) throw std::invalid_argument("OrderedPartition: value out of range");
            if (seen[v]) throw std::invalid_argument("OrderedPartition: repeated value");
            seen[v] = 1;
            ++total;
        }
    }
    if (total != n) throw std::invalid_argument("OrderedPartition: blocks do not cover {1..n}");
}

std::vector<int> OrderedPartition::word() const {
    std::vector<int> w;
    w.reserve(n);
    for (const auto& b : blocks) w.insert(w.end(), b.begin(), b.end());
    return w;
}

std::vector<int> OrderedPartition::surjection() const {
    std::vector<int> s;
    s.reserve(n);
    for (size_t i = 0; i < blocks.size(); ++i)
        s.insert(s.end(), blocks[i].size(), static_cast<int>(i) + 1);
    return s;
}

std::vector<int> OrderedPartition::block_of_value() const {
    std::vector<int> r(n, 0);
    for (size_t i = 0; i < blocks.size(); ++i)
        for (int v : blocks[i]) r[v - 1] = static_cast<int>(i) + 1;
    return r;
}

std::vector<int> OrderedPartition::position_of_value() const {
    std::vector<int> r(n, 0);
    int p = 0;
    for (const auto& b : blocks)
        for (int v : b) r[v - 1] = ++p;
    return r;
}

std::string OrderedPartition::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) os << '|';
        for (size_t j = 0; j < blocks[i].size(); ++j) {
            if (j) os << ',';
            os << blocks[i][j];
        }
    }
    return os.str();
}

OrderedPartition OrderedPartition::parse(const std::string& s) {
    std::vector<std::vector<int>> blocks(1);
    int cur = 0;
    bool have = false;
    auto flush = [&] {
        if (!have) throw std::invalid_argument("OrderedPartition::parse: empty entry");
        blocks.back().push_back(cur);
        cur = 0;
        have = false;
    };
    for (char c : s) {
        if (c >= '0' && c <= '9') {
            cur = cur * 10 + (c - '0');
            have = true;
        } else if (c == ',') {
            flush();
        } else if (c == '|') {
            flush();
            blocks.emplace_back();
        } else if (c != ' ') {
            throw std::invalid_argument("OrderedPartition::parse: bad character");
        }
    }
    flush();
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    return OrderedPartition(n, std::move(blocks));
}

PairForm PairForm::of(const OrderedPartition& a) {
    return PairForm{a.word(), a.surjection()};
}

OrderedPartition PairForm::to_partition() const {
    if (perm.size() != surj.size()) throw std::invalid_argument("PairForm: length mismatch");
    int n = static_cast<int>(perm.size());
    std::vector<std::vector<int>> blocks;
    for (int p = 0; p < n; ++p) {
        if (p == 0 || surj[p] != surj[p - 1]) blocks.emplace_back();
        if (p > 0 && (surj[p] != surj[p - 1] + 1 && surj[p] != surj[p - 1]))
            throw std::invalid_argument("PairForm: surjection not nondecreasing onto {1..t}");
        blocks.back().push_back(perm[p]);
    }
    if (!surj.empty() && surj.front() != 1)
        throw std::invalid_argument("PairForm: surjection must start at 1");
    return OrderedPartition(n, std::move(blocks));
}

std::uint64_t pack_cell(const OrderedPartition& a) {
    std::uint64_t key = 0;
    int p = 0;
    std::uint64_t mask = 0;
    int pos = 0;
    for (size_t i = 0; i < a.blocks.size(); ++i) {
        for (int v : a.blocks[i]) {
            key |= static_cast<std::uint64_t>(v) << (4 * p);
            ++p;
        }
        pos += static_cast<int>(a.blocks[i].size());
        if (i + 1 < a.blocks.size()) mask |= std::uint64_t{1} << (pos - 1);
    }
    return key | (mask << 48);
}

int enumeration_bound() {
    static const int bound = [] {
        if (const char* e = std::getenv("PERMUTO_MAX_N")) {
            int v = std::atoi(e);
            if (v >= 1 && v <= 12) return v;
        }
        return kDefaultEnumBound;
    }();
    return bound;
}

static OrderedPartition from_word_mask(const std::vector<int>& w, unsigned mask) {
    int n = static_cast<int>(w.size());
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

void for_each_cell(int n, const std::function<void(const OrderedPartition&)>& fn) {
    if (n < 1 || n > enumeration_bound())
        throw std::out_of_range("for_each_cell: n out of range");
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 1);
    do {
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) fn(from_word_mask(w, mask));
    } while (std::next_permutation(w.begin(), w.end()));
}

std::vector<OrderedPartition> enumerate_cells(int n, std::optional<int> dim) {
    if (n < 1 || n > enumeration_bound())
        throw std::out_of_range("enumerate_cells: n out of range");
    if (dim && (*dim < 0 || *dim > n - 1))
        throw std::out_of_range("enumerate_cells: dim out of range");
    std::vector<OrderedPartition> out;
    for_each_cell(n, [&](const OrderedPartition& a) {
        if (!dim || a.degree() == *dim) out.push_back(a);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long long> count_cells_by_dim(int n) {
    if (n < 1 || n > enumeration_bound())
        throw std::out_of_range("count_cells_by_dim: n out of range");
    // Exhaustive: every (word, bar mask) pair is one cell.
    std::vector<long long> per_mask(static_cast<size_t>(n), 0);
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask)
        ++per_mask[n - 1 - __builtin_popcount(mask)];
    std::vector<long long> out(static_cast<size_t>(n), 0);
    long long words = factorial(n);
    for (int d = 0; d < n; ++d) out[d] = per_mask[d] * words;
    return out;
}

bool leq(const OrderedPartition& a, const OrderedPartition& b) {
    if (a.n != b.n) throw std::invalid_argument("leq: size mismatch");
    const auto block_b = b.block_of_value();
    const auto pos_b = b.position_of_value();
    // Condition 1: each block of a sits inside one block of b, and the
    // induced block map is nondecreasing.
    int prev = 0;
    for (const auto& blk : a.blocks) {
        int target = block_b[blk.front() - 1];
        for (int v : blk)
            if (block_b[v - 1] != target) return false;
        if (target < prev) return false;
        prev = target;
    }
    // Condition 2: within each block of a, consecutive values keep their
    // relative order in the word of b.
    for (const auto& blk : a.blocks)
        for (size_t j = 0; j + 1 < blk.size(); ++j)
            if (pos_b[blk[j] - 1] >= pos_b[blk[j + 1] - 1]) return false;
    return true;
}

std::vector<std::vector<int>> shuffles(const std::vector<int>& s, const std::vector<int>& t) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    cur.reserve(s.size() + t.size());
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
        if (i == s.size() && j == t.size()) {
            out.push_back(cur);
            return;
        }
        if (i < s.size()) {
            cur.push_back(s[i]);
            rec(i + 1, j);
            cur.pop_back();
        }
        if (j < t.size()) {
            cur.push_back(t[j]);
            rec(i, j + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

std::vector<OrderedPartition> upward_covers(const OrderedPartition& a) {
    std::vector<OrderedPartition> out;
    for (size_t i = 0; i + 1 < a.blocks.size(); ++i) {
        for (auto& h : shuffles(a.blocks[i], a.blocks[i + 1])) {
            OrderedPartition b;
            b.n = a.n;
            b.blocks.reserve(a.blocks.size() - 1);
            for (size_t j = 0; j < i; ++j) b.blocks.push_back(a.blocks[j]);
            b.blocks.push_back(std::move(h));
            for (size_t j = i + 2; j < a.blocks.size(); ++j) b.blocks.push_back(a.blocks[j]);
            out.push_back(std::move(b));
        }
    }
    return out;
}

bool leq_oracle(const OrderedPartition& a, const OrderedPartition& b, int bound) {
    if (a.n != b.n) throw std::invalid_argument("leq_oracle: size mismatch");
    if (a.n > bound) throw std::out_of_range("leq_oracle: size bound exceeded");
    if (a == b) return true;
    if (a.degree() >= b.degree()) return false;
    std::deque<OrderedPartition> queue{a};
    std::unordered_set<std::uint64_t> seen{pack_cell(a)};
    while (!queue.empty()) {
        OrderedPartition cur = std::move(queue.front());
        queue.pop_front();
        for (auto& up : upward_covers(cur)) {
            if (up == b) return true;
            if (up.degree() >= b.degree()) continue;
            auto key = pack_cell(up);
            if (seen.insert(key).second) queue.push_back(std::move(up));
        }
    }
    return false;
}

std::vector<std::pair<OrderedPartition, OrderedPartition>> cover_relations(int n) {
    std::vector<std::pair<OrderedPartition, OrderedPartition>> out;
    for (const auto& a : enumerate_cells(n))
        for (auto& b : upward_covers(a)) out.emplace_back(a, std::move(b));
    return out;
}

std::string hasse_dot(int n) {
    std::ostringstream os;
    os << "digraph hasse {\n  rankdir=BT;\n";
    for (const auto& a : enumerate_cells(n))
        os << "  \"" << a.str() << "\";\n";
    for (const auto& [a, b] : cover_relations(n))
        os << "  \"" << a.str() << "\" -> \"" << b.str() << "\";\n";
    os << "}\n";
    return os.str();
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (int i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
    }
    return r;
}

long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace permuto
