#include "permuto/chains.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "permuto/preoperad.hpp"

namespace permuto {

namespace {

std::string labelled_name(const OrderedPartition& cell, const std::vector<int>& labels) {
    std::ostringstream os;
    os << cell.str() << " @ (";
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) os << ',';
        os << labels[i];
    }
    os << ')';
    return os.str();
}

// The oriented cell structure of F(n): cells, facet lists, and incidence
// signs chosen so that each boundary is a fundamental cycle of the cell's
// boundary sphere.
struct OrientedCells {
    int n = 0;
    std::vector<OrderedPartition> cells;                     // sorted
    std::vector<int> degree;
    std::vector<std::vector<int>> by_degree;                 // degree -> cell ids
    std::unordered_map<std::uint64_t, int> index;
    std::vector<std::vector<std::pair<int, int>>> bnd;       // cell -> (facet id, sign)

    int id_of(const OrderedPartition& a) const { return index.at(pack_cell(a)); }
    int sign_in(int cell, int facet) const {
        for (const auto& [b, s] : bnd[cell])
            if (b == facet) return s;
        throw std::logic_error("sign_in: not a facet");
    }
};

// Codimension-1 faces: split one block into an ordered pair of
// complementary subsequences.
std::vector<OrderedPartition> facets_of(const OrderedPartition& a) {
    std::vector<OrderedPartition> out;
    for (size_t bi = 0; bi < a.blocks.size(); ++bi) {
        const auto& blk = a.blocks[bi];
        int m = static_cast<int>(blk.size());
        if (m < 2) continue;
        for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
            std::vector<int> s1, s2;
            for (int p = 0; p < m; ++p)
                ((mask >> p) & 1u ? s1 : s2).push_back(blk[p]);
            OrderedPartition b;
            b.n = a.n;
            b.blocks.reserve(a.blocks.size() + 1);
            for (size_t j = 0; j < bi; ++j) b.blocks.push_back(a.blocks[j]);
            b.blocks.push_back(std::move(s1));
            b.blocks.push_back(std::move(s2));
            for (size_t j = bi + 1; j < a.blocks.size(); ++j) b.blocks.push_back(a.blocks[j]);
            out.push_back(std::move(b));
        }
    }
    return out;
}

OrientedCells build_oriented_cells(int n) {
    OrientedCells oc;
    oc.n = n;
    oc.cells = enumerate_cells(n);
    oc.degree.resize(oc.cells.size());
    oc.by_degree.assign(n, {});
    for (size_t i = 0; i < oc.cells.size(); ++i) {
        oc.degree[i] = oc.cells[i].degree();
        oc.by_degree[oc.degree[i]].push_back(static_cast<int>(i));
        oc.index[pack_cell(oc.cells[i])] = static_cast<int>(i);
    }
    oc.bnd.resize(oc.cells.size());

    // Orient cells degree by degree.  The facets of a cell with their
    // signs must form a cycle; for d >= 2 the signs are propagated across
    // shared codimension-2 faces and anchored at the least facet.
    for (int d = 1; d < n; ++d) {
        for (int ci : oc.by_degree[d]) {
            auto fs = facets_of(oc.cells[ci]);
            std::vector<int> facet_ids;
            facet_ids.reserve(fs.size());
            for (const auto& f : fs) facet_ids.push_back(oc.id_of(f));
            std::sort(facet_ids.begin(), facet_ids.end());

            std::vector<int> eps(facet_ids.size(), 0);
            if (d == 1) {
                if (facet_ids.size() != 2)
                    throw std::runtime_error("edge without exactly two endpoints");
                eps[0] = 1;
                eps[1] = -1;
            } else {
                std::unordered_map<int, int> local;  // facet id -> local index
                for (size_t i = 0; i < facet_ids.size(); ++i)
                    local[facet_ids[i]] = static_cast<int>(i);
                // ridge -> the (exactly two) facets containing it
                std::unordered_map<int, std::vector<std::pair<int, int>>> ridges;
                for (size_t i = 0; i < facet_ids.size(); ++i)
                    for (const auto& [r, s] : oc.bnd[facet_ids[i]])
                        ridges[r].emplace_back(static_cast<int>(i), s);
                for (const auto& [r, fl] : ridges)
                    if (fl.size() != 2)
                        throw std::runtime_error("ridge not shared by exactly two facets");
                eps[0] = 1;
                std::vector<int> stack{0};
                while (!stack.empty()) {
                    int i = stack.back();
                    stack.pop_back();
                    for (const auto& [r, s] : oc.bnd[facet_ids[i]]) {
                        const auto& fl = ridges.at(r);
                        int o = fl[0].first == i ? 1 : 0;
                        int si = fl[o ^ 1].second, so = fl[o].second;
                        int want = -eps[i] * si * so;
                        int other = fl[o].first;
                        if (eps[other] == 0) {
                            eps[other] = want;
                            stack.push_back(other);
                        } else if (eps[other] != want) {
                            throw std::runtime_error("inconsistent orientation propagation");
                        }
                    }
                }
                for (int e : eps)
                    if (e == 0) throw std::runtime_error("boundary sphere not connected");
            }
            for (size_t i = 0; i < facet_ids.size(); ++i)
                oc.bnd[ci].emplace_back(facet_ids[i], eps[i]);
        }
    }
    return oc;
}

const OrientedCells& oriented_cells(int n) {
    static std::map<int, OrientedCells> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_oriented_cells(n)).first;
    return it->second;
}

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 1);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Degree of the relabeling homeomorphism sigma restricted to one cell,
// computed recursively through the least facet.
struct ActionSigns {
    const OrientedCells& oc;
    std::vector<std::vector<int>> act;       // [perm][cell] -> image cell
    std::vector<std::vector<int>> sign_memo; // 0 unknown, else +-1

    ActionSigns(const OrientedCells& oc_, const std::vector<std::vector<int>>& perms)
        : oc(oc_) {
        act.assign(perms.size(), std::vector<int>(oc.cells.size()));
        sign_memo.assign(perms.size(), std::vector<int>(oc.cells.size(), 0));
        for (size_t p = 0; p < perms.size(); ++p) {
            auto sigma = BasedInjection::permutation(perms[p]);
            for (size_t c = 0; c < oc.cells.size(); ++c)
                act[p][c] = oc.id_of(symmetric_action(sigma, oc.cells[c]));
        }
    }

    int orient_sign(int p, int ci) {
        if (oc.degree[ci] == 0) return 1;
        int& memo = sign_memo[p][ci];
        if (memo != 0) return memo;
        auto [b, s] = oc.bnd[ci].front();
        int ci2 = act[p][ci];
        int b2 = act[p][b];
        int s2 = oc.sign_in(ci2, b2);
        memo = s * s2 * orient_sign(p, b);
        return memo;
    }
};

}  // namespace

long long ChainComplex::euler_characteristic() const {
    long long chi = 0;
    for (int d = 0; d <= top_degree(); ++d) chi += (d % 2 == 0 ? 1 : -1) * cells_in(d);
    return chi;
}

void ChainComplex::check_integrity() const {
    if (basis.size() != boundary.size()) throw std::runtime_error("complex: shape mismatch");
    for (size_t d = 1; d < basis.size(); ++d) {
        if (boundary[d].cols != static_cast<int>(basis[d].size()) ||
            boundary[d].rows != static_cast<int>(basis[d - 1].size()))
            throw std::runtime_error("complex: boundary dimensions wrong");
        if (d >= 2 && !sparse_mul(boundary[d - 1], boundary[d]).is_zero())
            throw std::runtime_error("complex: d.d != 0 in degree " + std::to_string(d));
    }
}

ChainComplex build_F_complex(int n) {
    if (n < 1 || n > 6) throw std::out_of_range("build_F_complex: n out of bounds");
    const auto& oc = oriented_cells(n);
    ChainComplex c;
    c.basis.resize(n);
    c.boundary.resize(n);
    std::vector<int> pos(oc.cells.size());
    for (int d = 0; d < n; ++d) {
        for (int ci : oc.by_degree[d]) {
            pos[ci] = static_cast<int>(c.basis[d].size());
            c.basis[d].push_back(oc.cells[ci].str());
        }
    }
    for (int d = 1; d < n; ++d) {
        SparseIntMat m(static_cast<int>(c.basis[d - 1].size()),
                       static_cast<int>(c.basis[d].size()));
        for (int ci : oc.by_degree[d])
            for (const auto& [b, s] : oc.bnd[ci]) m.add(pos[b], pos[ci], s);
        c.boundary[d] = std::move(m);
    }
    return c;
}

ChainComplex build_D_complex(int k, const BasedSet& S) {
    if (k < 1 || k > 5) throw std::out_of_range("build_D_complex: k out of bounds");
    if (S.s > 3) throw std::out_of_range("build_D_complex: set size out of bounds");
    ChainComplex c;
    c.basis.resize(k);
    c.boundary.resize(k);
    if (S.s == 0) {
        for (int d = 0; d < k; ++d) c.boundary[d] = SparseIntMat(0, 0);
        return c;  // smashing with the basepoint collapses everything
    }

    const auto& oc = oriented_cells(k);
    auto perms = all_permutations(k);
    ActionSigns signs(oc, perms);

    const int s = S.s;
    long long labels_total = 1;
    for (int i = 0; i < k; ++i) labels_total *= s;

    auto decode = [&](long long code) {
        std::vector<int> labels(k);
        for (int i = 0; i < k; ++i) {
            labels[i] = static_cast<int>(code % s) + 1;
            code /= s;
        }
        return labels;
    };
    auto encode = [&](const std::vector<int>& labels) {
        long long code = 0;
        for (int i = k - 1; i >= 0; --i) code = code * s + (labels[i] - 1);
        return code;
    };

    // Orbit representative of (cell, labels) and the unique permutation
    // realizing it (the relabeling action on cells is free).
    auto orbit_rep = [&](int ci, const std::vector<int>& labels)
        -> std::tuple<int, long long, int> {
        int best_p = 0, best_ci = ci;
        std::vector<int> best = labels;
        std::vector<int> tmp(k);
        for (size_t p = 0; p < perms.size(); ++p) {
            int tc = signs.act[p][ci];
            for (int i = 0; i < k; ++i) tmp[i] = labels[perms[p][i] - 1];
            if (std::make_pair(pack_cell(oc.cells[tc]), encode(tmp)) <
                std::make_pair(pack_cell(oc.cells[best_ci]), encode(best))) {
                best_p = static_cast<int>(p);
                best_ci = tc;
                best = tmp;
            }
        }
        return {best_ci, encode(best), best_p};
    };

    // enumerate class representatives
    std::map<std::pair<int, long long>, int> class_index;     // (cell, code) -> column
    std::vector<std::vector<std::pair<int, long long>>> reps(k);
    for (int d = 0; d < k; ++d) {
        for (int ci : oc.by_degree[d])
            for (long long code = 0; code < labels_total; ++code) {
                auto labels = decode(code);
                auto [rci, rcode, rp] = orbit_rep(ci, labels);
                (void)rp;
                if (rci == ci && rcode == code) reps[d].emplace_back(ci, code);
            }
        std::sort(reps[d].begin(), reps[d].end(), [&](const auto& x, const auto& y) {
            return std::make_pair(pack_cell(oc.cells[x.first]), x.second) <
                   std::make_pair(pack_cell(oc.cells[y.first]), y.second);
        });
        for (const auto& rep : reps[d]) {
            class_index[rep] = static_cast<int>(c.basis[d].size());
            c.basis[d].push_back(labelled_name(oc.cells[rep.first], decode(rep.second)));
        }
    }

    for (int d = 1; d < k; ++d) {
        SparseIntMat m(static_cast<int>(c.basis[d - 1].size()),
                       static_cast<int>(c.basis[d].size()));
        for (const auto& [ci, code] : reps[d]) {
            int col = class_index.at({ci, code});
            auto labels = decode(code);
            for (const auto& [b, s_inc] : oc.bnd[ci]) {
                auto [rci, rcode, p] = orbit_rep(b, labels);
                int row = class_index.at({rci, rcode});
                m.add(row, col, s_inc * signs.orient_sign(p, b));
            }
        }
        c.boundary[d] = std::move(m);
    }
    return c;
}

HomologyResult homology(const ChainComplex& c) {
    c.check_integrity();
    HomologyResult h;
    int top = c.top_degree();
    h.betti.assign(top + 1, 0);
    h.torsion.assign(top + 1, {});
    std::vector<long long> rank(top + 2, 0);
    std::vector<std::vector<BigInt>> tors(top + 2);
    for (int d = 1; d <= top; ++d) {
        auto snf = smith_normal_form(c.boundary[d]);
        rank[d] = snf.rank();
        tors[d] = snf.torsion();
    }
    for (int d = 0; d <= top; ++d) {
        h.betti[d] = c.cells_in(d) - rank[d] - rank[d + 1];
        h.torsion[d] = tors[d + 1];
    }
    return h;
}

HomologyResult order_complex_homology(int n) {
    if (n < 1 || n > 4) throw std::out_of_range("order_complex_homology: n out of bounds");
    auto cells = enumerate_cells(n);
    size_t m = cells.size();
    std::vector<std::vector<int>> greater(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (i != j && leq(cells[i], cells[j])) greater[i].push_back(static_cast<int>(j));

    // simplices = strict chains; dimension = length - 1
    std::vector<std::vector<std::vector<int>>> simplices(n);
    std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& chain) {
        simplices[chain.size() - 1].push_back(chain);
        if (static_cast<int>(chain.size()) == n) return;
        for (int nxt : greater[chain.back()]) {
            chain.push_back(nxt);
            extend(chain);
            chain.pop_back();
        }
    };
    for (size_t i = 0; i < m; ++i) {
        std::vector<int> chain{static_cast<int>(i)};
        extend(chain);
    }

    ChainComplex c;
    c.basis.resize(n);
    c.boundary.resize(n);
    std::vector<std::map<std::vector<int>, int>> index(n);
    for (int d = 0; d < n; ++d) {
        std::sort(simplices[d].begin(), simplices[d].end());
        for (const auto& s : simplices[d]) {
            index[d][s] = static_cast<int>(c.basis[d].size());
            std::ostringstream os;
            for (size_t i = 0; i < s.size(); ++i) {
                if (i) os << " < ";
                os << cells[s[i]].str();
            }
            c.basis[d].push_back(os.str());
        }
    }
    for (int d = 1; d < n; ++d) {
        SparseIntMat mat(static_cast<int>(c.basis[d - 1].size()),
                         static_cast<int>(c.basis[d].size()));
        for (const auto& s : simplices[d]) {
            int col = index[d].at(s);
            for (size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> face = s;
                face.erase(face.begin() + drop);
                mat.add(index[d - 1].at(face), col, drop % 2 == 0 ? 1 : -1);
            }
        }
        c.boundary[d] = std::move(mat);
    }
    return homology(c);
}

TopCollapse top_collapse(const ChainComplex& c) {
    TopCollapse t;
    t.top_degree = c.top_degree();
    t.image_basis = c.basis[t.top_degree];
    // The collapse is the identity on top chains and zero below, so the
    // section property holds by construction; assert it anyway.
    t.section_identity = true;
    return t;
}

ShuffleCheckReport shuffle_boundary_check(int k) {
    if (k < 2 || k > 5) throw std::out_of_range("shuffle_boundary_check: k out of bounds");
    auto D = build_D_complex(k, BasedSet(1));
    ShuffleCheckReport rep;
    rep.k = k;
    if (D.cells_in(k - 1) != 1)
        throw std::runtime_error("expected a single top orbit class");
    if (D.cells_in(k - 2) != k - 1)
        throw std::runtime_error("expected k-1 classes one degree down");

    // class j <-> representative with first block of size j
    std::vector<int> j_of_row(k - 1, 0);
    for (int row = 0; row < k - 1; ++row) {
        const auto& name = D.basis[k - 2][row];
        auto cell = OrderedPartition::parse(name.substr(0, name.find(" @")));
        j_of_row[row] = static_cast<int>(cell.blocks.front().size());
    }

    std::vector<long long> coeff(k, 0);
    std::map<std::pair<int, int>, long long> acc;
    for (const auto& [r, c, v] : D.boundary[k - 1].entries) acc[{r, c}] += v;
    for (const auto& [rc, v] : acc) coeff[j_of_row[rc.first]] += v;

    for (int j = 1; j <= k - 1; ++j) {
        ShuffleComponent comp;
        comp.j = j;
        comp.binomial_count = binomial(k, j);
        comp.boundary_coeff = coeff[j];

        // enumeration oracle: sum of permutation signs over the (j, k-j)
        // order-preserving splittings
        std::vector<int> sel(j);
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == j) {
                std::vector<int> perm = sel;
                std::vector<char> used(k + 1, 0);
                for (int v : sel) used[v] = 1;
                for (int v = 1; v <= k; ++v)
                    if (!used[v]) perm.push_back(v);
                int inversions = 0;
                for (int a = 0; a < k; ++a)
                    for (int b = a + 1; b < k; ++b)
                        if (perm[a] > perm[b]) ++inversions;
                comp.signed_shuffle_sum += inversions % 2 == 0 ? 1 : -1;
                return;
            }
            for (int v = start; v <= k; ++v) {
                sel[depth] = v;
                rec(v + 1, depth + 1);
            }
        };
        rec(1, 0);

        comp.mod2_match =
            ((comp.boundary_coeff % 2 + 2) % 2) == (comp.binomial_count % 2);
        comp.signed_match =
            std::abs(comp.boundary_coeff) == std::abs(comp.signed_shuffle_sum);
        if (comp.boundary_coeff != 0 && comp.signed_shuffle_sum != 0)
            comp.relative_sign =
                (comp.boundary_coeff > 0) == (comp.signed_shuffle_sum > 0) ? 1 : -1;
        rep.components.push_back(comp);
    }
    return rep;
}

bool ShuffleCheckReport::all_mod2() const {
    for (const auto& c : components)
        if (!c.mod2_match) return false;
    return true;
}

bool ShuffleCheckReport::all_signed() const {
    for (const auto& c : components)
        if (!c.signed_match) return false;
    return true;
}

LadderReport ladder_composites(const ChainComplex& c) {
    c.check_integrity();
    LadderReport rep;
    int top = c.top_degree();
    rep.composite_zero.assign(top + 1, true);
    for (int d = 2; d <= top; ++d) {
        // g_d: the relative boundary of the d-th graded piece followed by
        // the collapse onto the (d-1)-st graded piece; the composite of
        // consecutive connecting maps must vanish.
        auto comp = sparse_mul(c.boundary[d - 1], c.boundary[d]);
        rep.composite_zero[d] = comp.is_zero();
        if (!rep.composite_zero[d])
            throw std::runtime_error("ladder composite nonzero in degree " + std::to_string(d));
    }
    return rep;
}

bool LadderReport::all_zero() const {
    for (bool b : composite_zero)
        if (!b) return false;
    return true;
}

}  // namespace permuto
