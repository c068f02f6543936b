#include "permuto/preoperad.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace permuto {

BasedInjection::BasedInjection(int k_, int l_, std::vector<int> images_)
    : k(k_), l(l_), images(std::move(images_)) {
    check_valid();
}

void BasedInjection::check_valid() const {
    if (k < 0 || l < k) throw std::invalid_argument("BasedInjection: need 0 <= k <= l");
    if (static_cast<int>(images.size()) != k)
        throw std::invalid_argument("BasedInjection: image count != k");
    std::vector<char> seen(static_cast<size_t>(l) + 1, 0);
    for (int v : images) {
        if (v < 1 || v > l) throw std::invalid_argument("BasedInjection: image out of range");
        if (seen[v]) throw std::invalid_argument("BasedInjection: images not distinct");
        seen[v] = 1;
    }
}

BasedInjection BasedInjection::identity(int k) {
    std::vector<int> im(k);
    std::iota(im.begin(), im.end(), 1);
    return BasedInjection(k, k, std::move(im));
}

BasedInjection BasedInjection::degeneracy(int k, int i) {
    if (i < 0 || i > k) throw std::out_of_range("degeneracy: need 0 <= i <= k");
    std::vector<int> im(k);
    for (int j = 1; j <= k; ++j) im[j - 1] = j <= i ? j : j + 1;
    return BasedInjection(k, k + 1, std::move(im));
}

BasedInjection BasedInjection::permutation(std::vector<int> images) {
    int k = static_cast<int>(images.size());
    return BasedInjection(k, k, std::move(images));
}

bool BasedInjection::is_increasing() const {
    return std::is_sorted(images.begin(), images.end());
}

std::vector<int> BasedInjection::inverse_permutation() const {
    if (k != l) throw std::invalid_argument("inverse_permutation: not a permutation");
    std::vector<int> inv(k);
    for (int i = 1; i <= k; ++i) inv[images[i - 1] - 1] = i;
    return inv;
}

InjectionDecomposition decompose_injection(const BasedInjection& phi) {
    // phi_sharp(i) = rank of phi(i) among the images; phi_inc enumerates
    // the image set in increasing order.
    std::vector<int> sorted = phi.images;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> sharp(phi.k);
    for (int i = 0; i < phi.k; ++i) {
        sharp[i] = static_cast<int>(
                       std::lower_bound(sorted.begin(), sorted.end(), phi.images[i]) -
                       sorted.begin()) +
                   1;
    }
    return InjectionDecomposition{BasedInjection(phi.k, phi.k, std::move(sharp)),
                                  BasedInjection(phi.k, phi.l, std::move(sorted))};
}

BasedInjection compose(const BasedInjection& phi, const BasedInjection& psi) {
    if (psi.l != phi.k) throw std::invalid_argument("compose: domain/codomain mismatch");
    std::vector<int> im(psi.k);
    for (int i = 1; i <= psi.k; ++i) im[i - 1] = phi(psi(i));
    return BasedInjection(psi.k, phi.l, std::move(im));
}

OrderedPartition pullback(const BasedInjection& phi, const OrderedPartition& a) {
    if (phi.l != a.n) throw std::invalid_argument("pullback: codomain size != a.n");
    if (phi.k == 0) throw std::invalid_argument("pullback: empty domain has no cell");
    const auto pos = a.position_of_value();   // word^{-1}
    const auto surj = a.surjection();         // position -> block
    // psi = word^{-1} . phi : new value -> old position
    std::vector<int> psi(phi.k);
    for (int i = 1; i <= phi.k; ++i) psi[i - 1] = pos[phi(i) - 1];
    auto dec = decompose_injection(BasedInjection(phi.k, a.n, psi));
    // New word: value i sits at position psi_sharp(i).
    std::vector<int> word(phi.k);
    for (int i = 1; i <= phi.k; ++i) word[dec.sharp(i) - 1] = i;
    // New surjection: compress the old block indices seen along psi_inc.
    std::vector<int> raw(phi.k);
    for (int p = 1; p <= phi.k; ++p) raw[p - 1] = surj[dec.inc(p) - 1];
    std::vector<int> out(phi.k);
    int next = 0;
    for (int p = 0; p < phi.k; ++p) {
        if (p == 0 || raw[p] != raw[p - 1]) ++next;
        out[p] = next;
    }
    return PairForm{std::move(word), std::move(out)}.to_partition();
}

OrderedPartition pullback_oracle(const BasedInjection& phi, const OrderedPartition& a) {
    if (phi.l != a.n) throw std::invalid_argument("pullback_oracle: codomain size != a.n");
    std::vector<int> preimage(static_cast<size_t>(a.n) + 1, 0);
    for (int i = 1; i <= phi.k; ++i) preimage[phi(i)] = i;
    std::vector<std::vector<int>> blocks;
    for (const auto& blk : a.blocks) {
        std::vector<int> kept;
        for (int v : blk)
            if (preimage[v]) kept.push_back(preimage[v]);
        if (!kept.empty()) blocks.push_back(std::move(kept));
    }
    return OrderedPartition(phi.k, std::move(blocks));
}

OrderedPartition symmetric_action(const BasedInjection& sigma, const OrderedPartition& a) {
    if (!sigma.is_permutation() || sigma.k != a.n)
        throw std::invalid_argument("symmetric_action: size mismatch");
    const auto inv = sigma.inverse_permutation();
    OrderedPartition out = a;
    for (auto& blk : out.blocks)
        for (auto& v : blk) v = inv[v - 1];
    return out;
}

OrderedPartition degeneracy_pullback(int i, const OrderedPartition& a) {
    if (i < 0 || i > a.n - 1) throw std::out_of_range("degeneracy_pullback: i out of range");
    return pullback(BasedInjection::degeneracy(a.n - 1, i), a);
}

EpsilonCase::EpsilonCase(int i_, int j_, int eps_, int k) : i(i_), j(j_), eps(eps_) {
    if (k < 1) throw std::invalid_argument("EpsilonCase: level must be >= 1");
    if (i < 0 || i > k || j < 0 || j > k) throw std::invalid_argument("EpsilonCase: index out of range");
    if (eps < -1 || eps > 1) throw std::invalid_argument("EpsilonCase: eps out of range");
    // Aliases at the boundary: e_{i,k}^{-1} = e_{i,k}^{0}, e_{i,0}^{+1} = e_{i,0}^{0}.
    if (j == k && eps == -1) eps = 0;
    if (j == 0 && eps == 1) eps = 0;
}

std::vector<EpsilonCase> EpsilonCase::all_cases(int k) {
    std::vector<EpsilonCase> out;
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            for (int eps = -1; eps <= 1; ++eps) {
                if (j == k && eps == -1) continue;
                if (j == 0 && eps == 1) continue;
                out.emplace_back(i, j, eps, k);
            }
    return out;
}

OrderedPartition insert(const EpsilonCase& c, const OrderedPartition& b) {
    const int k = b.n;
    if (c.i < 0 || c.i > k || c.j < 0 || c.j > k)
        throw std::invalid_argument("insert: case invalid for this level");
    const int value = c.i + 1;

    // Relabel: old values >= i+1 move up by one.
    std::vector<std::vector<int>> blocks = b.blocks;
    for (auto& blk : blocks)
        for (auto& v : blk)
            if (v >= value) ++v;

    // Locate word position j+1.  For 0 < j < k the behaviour depends on
    // whether positions j and j+1 of b share a block.
    const auto surj = b.surjection();
    if (c.j == 0) {
        if (c.eps == -1) {
            blocks.front().insert(blocks.front().begin(), value);  // (3.b)
        } else {
            blocks.insert(blocks.begin(), {value});  // (3.a)
        }
    } else if (c.j == k) {
        if (c.eps == 1) {
            blocks.back().push_back(value);  // (2.b)
        } else {
            blocks.push_back({value});  // (2.a)
        }
    } else {
        int t = surj[c.j - 1];       // block of position j (1-based)
        int t2 = surj[c.j];          // block of position j+1
        if (t == t2) {
            // (1.*.i): inside a block; all eps agree.
            int offset = 0;
            for (int p = 0; p < c.j; ++p)
                if (surj[p] == t) ++offset;
            auto& blk = blocks[t - 1];
            blk.insert(blk.begin() + offset, value);
        } else if (c.eps == 0) {
            blocks.insert(blocks.begin() + t, {value});  // (1.a.ii)
        } else if (c.eps == 1) {
            blocks[t - 1].push_back(value);  // (1.b.ii)
        } else {
            blocks[t2 - 1].insert(blocks[t2 - 1].begin(), value);  // (1.c.ii)
        }
    }
    return OrderedPartition(k + 1, std::move(blocks));
}

const OrderedPartition& MorphismFamily::apply(const OrderedPartition& a) const {
    if (a.n < 1 || a.n > max_n) throw std::invalid_argument("MorphismFamily: level out of range");
    const auto& table = tables[a.n - 1];
    auto it = table.find(pack_cell(a));
    if (it == table.end()) throw std::invalid_argument("MorphismFamily: incomplete table");
    return it->second;
}

MorphismFamily MorphismFamily::identity(int max_n) {
    return from_function(max_n, [](const OrderedPartition& a) { return a; });
}

MorphismFamily MorphismFamily::from_function(
    int max_n, const std::function<OrderedPartition(const OrderedPartition&)>& f) {
    MorphismFamily fam;
    fam.max_n = max_n;
    fam.tables.resize(max_n);
    for (int n = 1; n <= max_n; ++n)
        for (const auto& a : enumerate_cells(n)) fam.tables[n - 1].emplace(pack_cell(a), f(a));
    return fam;
}

MorphismReport check_preoperad_morphism(const MorphismFamily& family) {
    MorphismReport rep;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (rep.counterexample.empty()) rep.counterexample = msg;
    };

    for (int n = 1; n <= family.max_n && rep.complete; ++n) {
        auto cells = enumerate_cells(n);
        const auto& table = family.tables[n - 1];
        for (const auto& a : cells) {
            auto it = table.find(pack_cell(a));
            if (it == table.end() || it->second.n != n) {
                fail(rep.complete, "missing or wrong-size image at level " + std::to_string(n));
                break;
            }
        }
    }
    if (!rep.complete) {
        rep.order_preserving = rep.natural = rep.idempotent = false;
        return rep;
    }

    for (int n = 1; n <= family.max_n; ++n) {
        auto cells = enumerate_cells(n);
        // Order preservation.
        for (const auto& a : cells) {
            for (const auto& b : cells) {
                if (!leq(a, b)) continue;
                if (!leq(family.apply(a), family.apply(b))) {
                    fail(rep.order_preserving,
                         "order violated: " + a.str() + " <= " + b.str());
                    break;
                }
            }
            if (!rep.order_preserving) break;
        }
        // Naturality against adjacent transpositions.
        for (int t = 1; t + 1 <= n && rep.natural; ++t) {
            std::vector<int> im(n);
            std::iota(im.begin(), im.end(), 1);
            std::swap(im[t - 1], im[t]);
            auto sigma = BasedInjection::permutation(im);
            for (const auto& a : cells) {
                if (!(family.apply(symmetric_action(sigma, a)) ==
                      symmetric_action(sigma, family.apply(a)))) {
                    fail(rep.natural, "equivariance violated on (" + std::to_string(t) + " " +
                                          std::to_string(t + 1) + ") at " + a.str());
                    break;
                }
            }
        }
        // Naturality against degeneracies D^i: L(n) -> L(n-1).
        if (n >= 2) {
            for (int i = 0; i <= n - 1 && rep.natural; ++i) {
                for (const auto& a : cells) {
                    if (!(family.apply(degeneracy_pullback(i, a)) ==
                          degeneracy_pullback(i, family.apply(a)))) {
                        fail(rep.natural,
                             "degeneracy naturality violated at D^" + std::to_string(i) +
                                 " on " + a.str());
                        break;
                    }
                }
            }
        }
        // Idempotency.
        for (const auto& a : cells) {
            const auto& fa = family.apply(a);
            if (!(family.apply(fa) == fa)) {
                fail(rep.idempotent, "not idempotent at " + a.str());
                break;
            }
        }
    }

    if (rep.is_morphism() && rep.idempotent) {
        rep.image.resize(family.max_n);
        for (int n = 1; n <= family.max_n; ++n) {
            std::vector<OrderedPartition> img;
            for (const auto& a : enumerate_cells(n)) {
                const auto& fa = family.apply(a);
                if (fa == a) img.push_back(a);
            }
            rep.image[n - 1] = std::move(img);
        }
    }
    return rep;
}

}  // namespace permuto
