#include "permuto/coend.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace permuto {

namespace {

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 1);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::uint64_t pack_labels(const std::vector<int>& labels) {
    std::uint64_t key = 0;
    for (size_t i = 0; i < labels.size(); ++i)
        key |= static_cast<std::uint64_t>(labels[i]) << (4 * i);
    return key;
}

}  // namespace

std::string CoendClass::str() const {
    if (is_basepoint()) return "*";
    std::ostringstream os;
    os << cell.str() << " @ (";
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) os << ',';
        os << labels[i];
    }
    os << ')';
    return os.str();
}

bool CoendClass::operator<(const CoendClass& o) const {
    if (k != o.k) return k < o.k;
    if (k == 0) return false;
    if (!(cell == o.cell)) return cell < o.cell;
    return labels < o.labels;
}

std::pair<OrderedPartition, std::vector<int>> act_on_pair(
    const BasedInjection& sigma, const OrderedPartition& cell,
    const std::vector<int>& labels) {
    if (!sigma.is_permutation() || sigma.k != cell.n ||
        labels.size() != static_cast<size_t>(cell.n))
        throw std::invalid_argument("act_on_pair: size mismatch");
    std::vector<int> y(labels.size());
    for (int i = 1; i <= sigma.k; ++i) y[i - 1] = labels[sigma(i) - 1];
    return {symmetric_action(sigma, cell), std::move(y)};
}

CoendClass canonicalize(const OrderedPartition& cell, const std::vector<int>& labels) {
    if (labels.size() != static_cast<size_t>(cell.n))
        throw std::invalid_argument("canonicalize: label count != cell size");
    for (int x : labels)
        if (x < 0) throw std::invalid_argument("canonicalize: negative label");

    OrderedPartition c = cell;
    std::vector<int> xs = labels;
    // Strip basepoint coordinates: (a, ..., x_i = *, ...) ~ (D^{i*}a, ...).
    for (;;) {
        auto it = std::find(xs.begin(), xs.end(), 0);
        if (it == xs.end()) break;
        if (xs.size() == 1) {
            CoendClass base;
            base.k = 0;
            return base;
        }
        int pos = static_cast<int>(it - xs.begin());  // 0-based slot i
        c = degeneracy_pullback(pos, c);
        xs.erase(it);
    }
    // Lexicographically least element of the Sigma_k-orbit.
    CoendClass best;
    best.k = c.n;
    best.cell = c;
    best.labels = xs;
    for (const auto& p : all_permutations(c.n)) {
        auto [tc, ty] = act_on_pair(BasedInjection::permutation(p), c, xs);
        CoendClass cand;
        cand.k = c.n;
        cand.cell = std::move(tc);
        cand.labels = std::move(ty);
        if (cand < best) best = std::move(cand);
    }
    return best;
}

CoendClass f_map(const EpsilonCase& c, const CoendClass& cls) {
    if (cls.is_basepoint()) return cls;
    auto up = insert(c, cls.cell);
    std::vector<int> labels = cls.labels;
    labels.insert(labels.begin() + c.i, 0);
    return canonicalize(up, labels);
}

std::vector<std::vector<CoendClass>> enumerate_coend(const BasedSet& S, int k_max) {
    if (k_max < 0 || k_max > 6) throw std::out_of_range("enumerate_coend: k_max out of bounds");
    if (S.s > 5) throw std::out_of_range("enumerate_coend: set size out of bounds");
    std::vector<std::vector<CoendClass>> out(static_cast<size_t>(k_max) + 1);
    CoendClass base;
    base.k = 0;
    out[0].push_back(base);
    for (int k = 1; k <= k_max && S.s > 0; ++k) {
        std::vector<CoendClass> classes;
        auto cells = enumerate_cells(k);
        auto perms = all_permutations(k);
        long long label_count = 1;
        for (int i = 0; i < k; ++i) label_count *= S.s;
        std::vector<int> labels(k, 1);
        for (long long code = 0; code < label_count; ++code) {
            long long c2 = code;
            for (int i = 0; i < k; ++i) {
                labels[i] = static_cast<int>(c2 % S.s) + 1;
                c2 /= S.s;
            }
            for (const auto& cell : cells) {
                bool minimal = true;
                for (const auto& p : perms) {
                    auto [tc, ty] = act_on_pair(BasedInjection::permutation(p), cell, labels);
                    if (std::make_pair(tc.blocks, ty) < std::make_pair(cell.blocks, labels)) {
                        minimal = false;
                        break;
                    }
                }
                if (minimal) {
                    CoendClass cls;
                    cls.k = k;
                    cls.cell = cell;
                    cls.labels = labels;
                    classes.push_back(std::move(cls));
                }
            }
        }
        std::sort(classes.begin(), classes.end());
        out[k] = std::move(classes);
    }
    return out;
}

ExactnessReport verify_exactness(const BasedSet& S, int k) {
    if (k < 1 || k > 4) throw std::out_of_range("verify_exactness: k out of bounds");
    if (S.s > 3) throw std::out_of_range("verify_exactness: set size out of bounds");
    ExactnessReport rep;

    const int s1 = S.s + 1;  // labels live in {0..s}

    // One filtration level: cells, the permutation action table, and the
    // orbit classes of labelled cells keyed by their least representative.
    struct Level {
        int m = 0;
        long long labels_total = 1;
        std::vector<OrderedPartition> cells;
        std::vector<std::uint64_t> cell_key;
        std::unordered_map<std::uint64_t, int> cell_index;
        std::vector<std::vector<int>> perms;
        std::vector<std::vector<int>> act;  // [perm][cell] -> cell index
        std::unordered_map<std::uint64_t, int> class_of_rep;
        std::vector<std::pair<int, long long>> reps;  // class -> (cell, label code)

        std::uint64_t pair_key(int ci, std::uint64_t packed_labels) const {
            return (static_cast<std::uint64_t>(ci) << 40) ^ packed_labels;
        }
    };

    auto build_level = [&](int m) {
        Level L;
        L.m = m;
        L.cells = enumerate_cells(m);
        L.perms = all_permutations(m);
        for (size_t i = 0; i < L.cells.size(); ++i) {
            L.cell_key.push_back(pack_cell(L.cells[i]));
            L.cell_index[L.cell_key.back()] = static_cast<int>(i);
        }
        L.act.assign(L.perms.size(), std::vector<int>(L.cells.size()));
        for (size_t p = 0; p < L.perms.size(); ++p) {
            auto sigma = BasedInjection::permutation(L.perms[p]);
            for (size_t c = 0; c < L.cells.size(); ++c)
                L.act[p][c] = L.cell_index.at(pack_cell(symmetric_action(sigma, L.cells[c])));
        }
        for (int i = 0; i < m; ++i) L.labels_total *= s1;
        return L;
    };

    auto decode_labels = [&](int m, long long code) {
        std::vector<int> labels(m);
        for (int i = 0; i < m; ++i) {
            labels[i] = static_cast<int>(code % s1);
            code /= s1;
        }
        return labels;
    };
    auto encode_labels = [&](const std::vector<int>& labels) {
        long long code = 0;
        for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i)
            code = code * s1 + labels[i];
        return code;
    };

    // The least (cell order, label order) element of the orbit of (ci, labels).
    auto orbit_rep = [&](const Level& L, int ci, const std::vector<int>& labels)
        -> std::pair<int, long long> {
        int best_ci = ci;
        std::uint64_t best_packed = pack_labels(labels);
        std::vector<int> tmp(L.m);
        for (size_t p = 0; p < L.perms.size(); ++p) {
            int tc = L.act[p][ci];
            if (L.cell_key[tc] > L.cell_key[best_ci]) continue;
            const auto& perm = L.perms[p];
            for (int i = 0; i < L.m; ++i) tmp[i] = labels[perm[i] - 1];
            std::uint64_t packed = pack_labels(tmp);
            if (std::make_pair(L.cell_key[tc], packed) <
                std::make_pair(L.cell_key[best_ci], best_packed)) {
                best_ci = tc;
                best_packed = packed;
            }
        }
        long long code = 0;
        for (int i = L.m - 1; i >= 0; --i)
            code = code * s1 + static_cast<int>((best_packed >> (4 * i)) & 0xf);
        return {best_ci, code};
    };

    auto enumerate_orbits = [&](Level& L) {
        for (int ci = 0; ci < static_cast<int>(L.cells.size()); ++ci)
            for (long long code = 0; code < L.labels_total; ++code) {
                auto labels = decode_labels(L.m, code);
                auto [rci, rcode] = orbit_rep(L, ci, labels);
                if (rci == ci && rcode == code) {
                    L.class_of_rep.emplace(L.pair_key(ci, pack_labels(labels)),
                                           static_cast<int>(L.reps.size()));
                    L.reps.emplace_back(ci, code);
                }
            }
    };

    Level lo = build_level(k);
    Level hi = build_level(k + 1);
    enumerate_orbits(lo);
    enumerate_orbits(hi);
    rep.orbit_classes_k = static_cast<long long>(lo.reps.size());
    rep.orbit_classes_k1 = static_cast<long long>(hi.reps.size());

    auto hi_class_of = [&](int ci, const std::vector<int>& labels) {
        auto [rci, rcode] = orbit_rep(hi, ci, labels);
        return hi.class_of_rep.at(hi.pair_key(rci, pack_labels(decode_labels(k + 1, rcode))));
    };

    std::vector<int> parent(hi.reps.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    auto cases = EpsilonCase::all_cases(k);
    // Per-case images: used for both injectivity and the zig-zag closure.
    for (const auto& c : cases) {
        std::unordered_map<int, int> image;
        for (size_t w = 0; w < lo.reps.size(); ++w) {
            auto [ci, code] = lo.reps[w];
            auto labels = decode_labels(k, code);
            auto up = insert(c, lo.cells[ci]);
            std::vector<int> up_labels = labels;
            up_labels.insert(up_labels.begin() + c.i, 0);
            int cls = hi_class_of(hi.cell_index.at(pack_cell(up)), up_labels);
            auto [it, fresh] = image.emplace(cls, static_cast<int>(w));
            if (!fresh && rep.injective) {
                rep.injective = false;
                std::ostringstream os;
                os << "f_{" << c.i << ',' << c.j << ',' << c.eps
                   << "} identifies orbit classes " << it->second << " and " << w;
                rep.detail = os.str();
            }
        }
    }
    for (size_t w = 0; w < lo.reps.size(); ++w) {
        auto [ci, code] = lo.reps[w];
        auto labels = decode_labels(k, code);
        int first = -1;
        for (const auto& c : cases) {
            auto up = insert(c, lo.cells[ci]);
            std::vector<int> up_labels = labels;
            up_labels.insert(up_labels.begin() + c.i, 0);
            int cls = hi_class_of(hi.cell_index.at(pack_cell(up)), up_labels);
            if (first < 0)
                first = cls;
            else
                parent[find(cls)] = find(first);
        }
    }
    (void)encode_labels;

    // q maps an orbit class to its coend class (strip + orbit minimum).
    std::vector<std::string> q_key(hi.reps.size());
    for (size_t u = 0; u < hi.reps.size(); ++u) {
        auto [ci, code] = hi.reps[u];
        q_key[u] = canonicalize(hi.cells[ci], decode_labels(k + 1, code)).str();
    }
    // Coequalizer: the zig-zag components coincide with the q-fibers.
    std::map<int, std::string> root_key;
    std::map<std::string, int> coend_to_root;
    for (size_t u = 0; u < hi.reps.size(); ++u) {
        int r = find(static_cast<int>(u));
        auto it = root_key.find(r);
        if (it == root_key.end())
            root_key.emplace(r, q_key[u]);
        else if (it->second != q_key[u]) {
            rep.coequalizer = false;
            if (rep.detail.empty())
                rep.detail = "zig-zag component maps to two coend classes: " + it->second +
                             " vs " + q_key[u];
        }
        auto jt = coend_to_root.find(q_key[u]);
        if (jt == coend_to_root.end())
            coend_to_root.emplace(q_key[u], r);
        else if (jt->second != r) {
            rep.coequalizer = false;
            if (rep.detail.empty())
                rep.detail = "coend class split across zig-zag components: " + q_key[u];
        }
    }

    // Surjectivity of q onto the (k+1)-st skeleton of L(S).
    for (const auto& group : enumerate_coend(S, k + 1))
        for (const auto& cls : group) {
            ++rep.coend_classes;
            if (!coend_to_root.count(cls.str())) {
                rep.surjective = false;
                if (rep.detail.empty())
                    rep.detail = "coend class not in the image of q: " + cls.str();
            }
        }
    return rep;
}

}  // namespace permuto
