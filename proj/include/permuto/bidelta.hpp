#pragma once

#include <optional>
#include <string>
#include <vector>

#include "permuto/magnus.hpp"
#include "permuto/snf.hpp"

namespace permuto {

/// Reduced word in the (level+1)-fold self free product of a cyclic group:
/// letters are (component index in {1..level+1}, nonzero exponent), with
/// adjacent letters in distinct components.
struct FreeProductWord {
    int level = 0;
    std::vector<std::pair<int, long long>> letters;

    bool is_identity() const { return letters.empty(); }
    std::string str() const;
    bool operator==(const FreeProductWord& o) const = default;
};

/// The bi-Delta-group Phi_0 G for cyclic G (Z when modulus == 0, else
/// Z/modulus): level n carries the (n+1)-fold self free product, faces
/// kill one component and shift, cofaces skip one index.
struct Phi0Instance {
    long long modulus = 0;

    explicit Phi0Instance(long long modulus_ = 0);

    FreeProductWord identity(int level) const;
    FreeProductWord generator(int level, int component, long long power = 1) const;
    FreeProductWord multiply(const FreeProductWord& a, const FreeProductWord& b) const;
    FreeProductWord inverse(const FreeProductWord& a) const;
    FreeProductWord commutator(const FreeProductWord& a, const FreeProductWord& b) const;

    FreeProductWord face(int i, const FreeProductWord& x) const;    // d_i: level n -> n-1
    FreeProductWord coface(int i, const FreeProductWord& x) const;  // d^i: level n-1 -> n

    bool is_moore_cycle(const FreeProductWord& x) const;    // all faces trivial
    bool is_cohen_element(const FreeProductWord& x) const;  // all faces agree

    /// Magnus image in the free nilpotent quotient of class c (G = Z only).
    TruncatedMagnusWord magnus_eval(const FreeProductWord& x, int c) const;
};

/// The abelianization of Phi_0 Z (or of Phi_0 Z/m): level n is Z^{n+1}
/// (vectors reduced mod m when modulus != 0), faces drop a coordinate,
/// cofaces insert a zero.
struct AbelianInstance {
    long long modulus = 0;
    using Vec = std::vector<long long>;

    explicit AbelianInstance(long long modulus_ = 0);

    Vec zero(int level) const { return Vec(static_cast<size_t>(level) + 1, 0); }
    Vec basis(int level, int j) const;  // e_j, 1 <= j <= level+1
    Vec reduce(Vec v) const;

    Vec face(int i, const Vec& x) const;
    Vec coface(int i, const Vec& x) const;

    bool is_moore_cycle(const Vec& x) const;
    bool is_cohen_element(const Vec& x) const;

    /// Column bases of the Cohen lattice h_n and the Moore lattice Z_n
    /// (modulus 0 only).
    DenseMat cohen_basis(int level) const;
    DenseMat moore_basis(int level) const;
};

/// Strictly increasing multi-indices of the given length in {0..n}, in
/// lexicographic order read from the right.
std::vector<std::vector<int>> increasing_multiindices(int n, int len);

/// James-Hopf operator H_{k,n}: the (ordered) product of the iterated
/// cofaces of x over all increasing multi-indices.  H_{k,k} = id and
/// H_{k,n} is the trivial map for k > n.
FreeProductWord james_hopf(int k, int n, const FreeProductWord& x, const Phi0Instance& inst);
AbelianInstance::Vec james_hopf(int k, int n, const AbelianInstance::Vec& x,
                                const AbelianInstance& inst);

struct IdentityCheck {
    std::string name;
    bool passed = true;
    std::string counterexample;
};

struct JHReport {
    std::vector<IdentityCheck> checks;
    bool all_passed() const;
    std::string summary() const;
};

/// The appendix identity suite on an abelian instance: the bi-Delta
/// relation table, both James-Hopf product identities, the sigma/p
/// recursions, both claims about the Moore-cycle embeddings, the falling
/// factorial relation, and the kernel/surjectivity description of p_n.
JHReport verify_jh_identities(const AbelianInstance& inst, int max_level, unsigned long long seed,
                              int fuzz_count = 500);

struct IdempotentReport {
    bool retraction_valid = false;  // pi . i == id on the supplied section
    bool key_lemma = false;         // p_{m,n} . H_{m,n} . i_m == i_m
    bool idempotent = false;        // e . e == e on h_n
    std::string detail;
};

/// e_m^(n) = H_{m,n} . i_m . pi_m . p_{m,n} on h_n, for a user-supplied
/// retraction pi_m (a matrix from h_m coordinates to Z_m coordinates).
IdempotentReport idempotent_check(int m, int n, const AbelianInstance& inst,
                                  const DenseMat& section, unsigned long long seed,
                                  int fuzz_count = 100);

/// The coordinate-projection retraction for the abelianized Phi_0 Z.
DenseMat default_section(const AbelianInstance& inst, int m);

/// Normal bi-Delta-extension computed inside the abelianization: one
/// lattice per level, closed under faces, cofaces, and (trivially) normal
/// closure.
struct AbelianExtension {
    long long modulus = 0;
    std::vector<DenseMat> level_lattice;  // level n -> columns spanning the subgroup

    bool contains(int level, const std::vector<BigInt>& v) const;
    long long rank(int level) const { return level_lattice[level].cols; }
};

AbelianExtension normal_extension_abelian(
    const std::vector<std::pair<int, AbelianInstance::Vec>>& gens, int max_level,
    long long modulus = 0);

/// Normal bi-Delta-extension inside the free nilpotent quotient of class
/// c: staged generating sets per level, closed under faces, cofaces, and
/// normal closure; membership is exact for these levelwise-normal
/// subgroups via graded Magnus sifting.
class NilpotentExtension {
  public:
    NilpotentExtension(int max_level, int truncation_class);

    void add_generator(int level, const FreeProductWord& w);
    void close();  // run the face/coface/normal-closure saturation

    bool contains(int level, const FreeProductWord& w) const;
    const std::vector<std::vector<FreeProductWord>>& generators() const { return gens_; }
    int truncation_class() const { return class_; }

  private:
    struct Echelon {
        // sifting basis: words together with their Magnus images
        std::vector<std::pair<FreeProductWord, TruncatedMagnusWord>> elems;
    };

    bool sift(int level, const FreeProductWord& w, bool insert);
    void normal_close_level(int level);

    int max_level_;
    int class_;
    Phi0Instance inst_;
    std::vector<std::vector<FreeProductWord>> gens_;
    std::vector<Echelon> echelon_;
};

NilpotentExtension normal_extension_nilpotent(
    const std::vector<std::pair<int, FreeProductWord>>& gens, int max_level, int c);

enum class HomKind { Identity, Abelianization, ModReduction };

struct CompositeReport {
    bool hypothesis_ok = true;   // every supplied generator maps to the identity
    bool extension_trivial = true;
    std::vector<std::string> failures;
    std::vector<long long> audited_per_level;
};

/// Lemma-style audit: if the given generators map to the identity under
/// the level-wise homomorphism, every element of their normal
/// bi-Delta-extension (in the abelian quotient) does too.
CompositeReport trivial_composite_check(
    const std::vector<std::pair<int, FreeProductWord>>& gens, const Phi0Instance& inst,
    HomKind hom, long long hom_modulus, int max_level);

}  // namespace permuto
