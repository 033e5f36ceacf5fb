#pragma once

// Independent reference implementations used as test oracles.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "zkfault/gf.hpp"
#include "zkfault/monomial.hpp"

namespace oracle {

using Dense = std::vector<std::vector<long>>;

inline Dense to_dense(const zkfault::FqMatrix& m) {
    Dense d(m.rows(), std::vector<long>(m.cols()));
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) d[r][c] = m.at(r, c);
    return d;
}

inline Dense mul(const Dense& a, const Dense& b, long q) {
    const size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    Dense out(n, std::vector<long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            long acc = 0;
            for (size_t l = 0; l < k; ++l) acc += a[i][l] * b[l][j];
            out[i][j] = acc % q;
        }
    return out;
}

inline Dense transpose(const Dense& a) {
    if (a.empty()) return {};
    Dense out(a[0].size(), std::vector<long>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
    return out;
}

inline Dense identity(size_t n) {
    Dense d(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) d[i][i] = 1;
    return d;
}

// Monomial expansion written directly from the definition: entry (perm[j], j) = coeffs[j].
inline Dense expand(size_t n, const std::vector<uint32_t>& perm, const std::vector<uint8_t>& coeffs) {
    Dense d(n, std::vector<long>(perm.size(), 0));
    for (size_t j = 0; j < perm.size(); ++j) d[perm[j]][j] = coeffs[j];
    return d;
}

inline Dense expand(const zkfault::MonomialMatrix& a) { return expand(a.n(), a.perm, a.coeffs); }
inline Dense expand(const zkfault::PartialMonomialMatrix& a) { return expand(a.n, a.perm_inj, a.coeffs); }

// Determinant by cofactor-free elimination with modular inverse via Fermat.
inline long powmod(long b, long e, long q) {
    long r = 1;
    b %= q;
    while (e) {
        if (e & 1) r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return r;
}

inline long det(Dense a, long q) {
    const size_t n = a.size();
    long d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] % q == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = (q - d) % q;
        }
        d = d * a[c][c] % q;
        long inv = powmod(a[c][c], q - 2, q);
        for (size_t r = c + 1; r < n; ++r) {
            long fct = a[r][c] * inv % q;
            for (size_t j = c; j < n; ++j) a[r][j] = ((a[r][j] - fct * a[c][j]) % q + q) % q;
        }
    }
    return d;
}

// (M^-1)^T of a dense monomial matrix: same support, inverted entries.
inline Dense monomial_inverse_transpose(const Dense& m, long q) {
    Dense out = m;
    for (auto& row : out)
        for (auto& v : row)
            if (v) v = powmod(v, q - 2, q);
    return out;
}

inline zkfault::FqMatrix to_fq(const Dense& d) {
    zkfault::FqMatrix m(d.size(), d.empty() ? 0 : d[0].size());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) m.at(r, c) = static_cast<uint8_t>(d[r][c]);
    return m;
}

inline zkfault::FqMatrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, uint32_t q) {
    zkfault::FqMatrix m(rows, cols);
    std::uniform_int_distribution<uint32_t> u(0, q - 1);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.at(r, c) = static_cast<uint8_t>(u(rng));
    return m;
}

inline zkfault::MonomialMatrix random_monomial(std::mt19937_64& rng, size_t n, uint32_t q) {
    zkfault::MonomialMatrix m = zkfault::MonomialMatrix::identity(n);
    std::shuffle(m.perm.begin(), m.perm.end(), rng);
    std::uniform_int_distribution<uint32_t> u(1, q - 1);
    for (auto& c : m.coeffs) c = static_cast<uint8_t>(u(rng));
    return m;
}

}  // namespace oracle
