#pragma once

#include <map>
#include <string>
#include <vector>

#include "permuto/tensoralg.hpp"

namespace permuto {

/// Truncated integer polynomial in noncommuting variables X_1..X_r:
/// the Magnus image of a free-group element in the class-c quotient.
/// Group elements map multiplicatively; terms of degree > c are dropped.
struct TruncatedMagnusWord {
    int truncation = 0;                 // class c
    std::map<Word, long long> coeffs;   // monomial (variable index word) -> coefficient

    static TruncatedMagnusWord one(int c);
    bool is_one() const;
    std::string str() const;
    bool operator==(const TruncatedMagnusWord& o) const = default;
};

TruncatedMagnusWord magnus_mul(const TruncatedMagnusWord& a, const TruncatedMagnusWord& b);

/// (1 + X_j)^e, truncated; e may be negative.
TruncatedMagnusWord magnus_generator_power(int var, long long e, int c);

/// Degree-d homogeneous part as a coefficient vector over the monomials
/// of length d in vars variables (row-major mixed radix).
std::vector<BigInt> magnus_degree_part(const TruncatedMagnusWord& p, int degree, int vars);

/// Least degree with a nonzero coefficient; c+1 when p == 1.
int magnus_leading_degree(const TruncatedMagnusWord& p);

}  // namespace permuto
