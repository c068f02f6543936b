#include "permuto/magnus.hpp"

#include <sstream>
#include <stdexcept>

namespace permuto {

TruncatedMagnusWord TruncatedMagnusWord::one(int c) {
    TruncatedMagnusWord p;
    p.truncation = c;
    p.coeffs[Word{}] = 1;
    return p;
}

bool TruncatedMagnusWord::is_one() const {
    for (const auto& [w, v] : coeffs) {
        if (w.empty() && v != 1) return false;
        if (!w.empty() && v != 0) return false;
    }
    return coeffs.count(Word{}) && coeffs.at(Word{}) == 1;
}

std::string TruncatedMagnusWord::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, v] : coeffs) {
        if (v == 0) continue;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << '-';
        first = false;
        long long av = v > 0 ? v : -v;
        if (av != 1 || w.empty()) os << av;
        for (int x : w) os << "X" << x;
    }
    if (first) os << '0';
    return os.str();
}

TruncatedMagnusWord magnus_mul(const TruncatedMagnusWord& a, const TruncatedMagnusWord& b) {
    if (a.truncation != b.truncation)
        throw std::invalid_argument("magnus_mul: truncation mismatch");
    TruncatedMagnusWord out;
    out.truncation = a.truncation;
    for (const auto& [wa, va] : a.coeffs) {
        if (va == 0) continue;
        for (const auto& [wb, vb] : b.coeffs) {
            if (vb == 0) continue;
            if (static_cast<int>(wa.size() + wb.size()) > a.truncation) continue;
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            auto& c = out.coeffs[w];
            c += va * vb;
            if (c == 0) out.coeffs.erase(w);
        }
    }
    return out;
}

TruncatedMagnusWord magnus_generator_power(int var, long long e, int c) {
    if (var < 1) throw std::invalid_argument("magnus_generator_power: bad variable");
    TruncatedMagnusWord out;
    out.truncation = c;
    // (1 + X)^e = sum_d C(e, d) X^d with the generalized binomial, valid
    // for negative e as well.
    Word w;
    out.coeffs[w] = 1;
    for (int d = 1; d <= c; ++d) {
        w.push_back(var);
        // C(e, d) = e (e-1) ... (e-d+1) / d!
        long long num = 1;
        for (int t = 0; t < d; ++t) {
            if (num > (1LL << 55) || num < -(1LL << 55))
                throw std::overflow_error("magnus_generator_power: exponent too large");
            num *= (e - t);
        }
        long long den = 1;
        for (int t = 2; t <= d; ++t) den *= t;
        long long bin = num / den;
        if (bin != 0) out.coeffs[w] = bin;
    }
    return out;
}

std::vector<BigInt> magnus_degree_part(const TruncatedMagnusWord& p, int degree, int vars) {
    if (degree < 0 || degree > p.truncation)
        throw std::out_of_range("magnus_degree_part: degree out of range");
    size_t dim = 1;
    for (int i = 0; i < degree; ++i) dim *= static_cast<size_t>(vars);
    std::vector<BigInt> out(dim, BigInt(0));
    for (const auto& [w, v] : p.coeffs) {
        if (static_cast<int>(w.size()) != degree || v == 0) continue;
        size_t idx = 0;
        for (int x : w) {
            if (x < 1 || x > vars)
                throw std::out_of_range("magnus_degree_part: variable out of range");
            idx = idx * static_cast<size_t>(vars) + static_cast<size_t>(x - 1);
        }
        out[idx] = v;
    }
    return out;
}

int magnus_leading_degree(const TruncatedMagnusWord& p) {
    int lead = p.truncation + 1;
    for (const auto& [w, v] : p.coeffs) {
        if (v == 0) continue;
        if (w.empty()) continue;  // the constant term is always 1 for group images
        lead = std::min(lead, static_cast<int>(w.size()));
    }
    return lead;
}

}  // namespace permuto
