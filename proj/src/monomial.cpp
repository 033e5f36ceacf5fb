#include "zkfault/monomial.hpp"

#include "zkfault/error.hpp"

namespace zkfault {

namespace {

bool valid_support(size_t n, const std::vector<uint32_t>& perm, const std::vector<uint8_t>& coeffs,
                   const Field& f) {
    if (perm.size() != coeffs.size()) return false;
    std::vector<bool> seen(n, false);
    for (size_t j = 0; j < perm.size(); ++j) {
        if (perm[j] >= n || seen[perm[j]]) return false;
        if (coeffs[j] == 0 || coeffs[j] >= f.q()) return false;
        seen[perm[j]] = true;
    }
    return true;
}

FqMatrix expand(size_t n, const std::vector<uint32_t>& perm, const std::vector<uint8_t>& coeffs) {
    FqMatrix m(n, perm.size());
    for (size_t j = 0; j < perm.size(); ++j) m.at(perm[j], j) = coeffs[j];
    return m;
}

}  // namespace

MonomialMatrix MonomialMatrix::identity(size_t n) {
    MonomialMatrix m{std::vector<uint32_t>(n), std::vector<uint8_t>(n, 1)};
    for (size_t j = 0; j < n; ++j) m.perm[j] = static_cast<uint32_t>(j);
    return m;
}

bool MonomialMatrix::valid(const Field& f) const { return valid_support(n(), perm, coeffs, f); }

FqMatrix MonomialMatrix::dense() const { return expand(n(), perm, coeffs); }

bool PartialMonomialMatrix::valid(const Field& f) const {
    return k() < n && valid_support(n, perm_inj, coeffs, f);
}

FqMatrix PartialMonomialMatrix::dense() const { return expand(n, perm_inj, coeffs); }

std::vector<size_t> PartialMonomialMatrix::zero_rows() const {
    std::vector<bool> used(n, false);
    for (uint32_t r : perm_inj)
        if (r < n) used[r] = true;
    std::vector<size_t> out;
    for (size_t r = 0; r < n; ++r)
        if (!used[r]) out.push_back(r);
    return out;
}

MonomialMatrix mono_mul(const MonomialMatrix& a, const MonomialMatrix& b, const Field& f) {
    if (a.n() != b.n()) throw DimensionMismatch("mono_mul dimension");
    MonomialMatrix out{std::vector<uint32_t>(b.n()), std::vector<uint8_t>(b.n())};
    for (size_t j = 0; j < b.n(); ++j) {
        out.perm[j] = a.perm[b.perm[j]];
        out.coeffs[j] = f.mul(b.coeffs[j], a.coeffs[b.perm[j]]);
    }
    return out;
}

PartialMonomialMatrix mono_mul(const MonomialMatrix& a, const PartialMonomialMatrix& b, const Field& f) {
    if (a.n() != b.n) throw DimensionMismatch("mono_mul dimension");
    PartialMonomialMatrix out{b.n, std::vector<uint32_t>(b.k()), std::vector<uint8_t>(b.k())};
    for (size_t j = 0; j < b.k(); ++j) {
        if (b.perm_inj[j] >= a.n()) throw DimensionMismatch("partial monomial row out of range");
        out.perm_inj[j] = a.perm[b.perm_inj[j]];
        out.coeffs[j] = f.mul(b.coeffs[j], a.coeffs[b.perm_inj[j]]);
    }
    return out;
}

MonomialMatrix mono_transpose(const MonomialMatrix& a) {
    MonomialMatrix out{std::vector<uint32_t>(a.n()), std::vector<uint8_t>(a.n())};
    for (size_t j = 0; j < a.n(); ++j) {
        out.perm[a.perm[j]] = static_cast<uint32_t>(j);
        out.coeffs[a.perm[j]] = a.coeffs[j];
    }
    return out;
}

MonomialMatrix mono_inverse(const MonomialMatrix& a, const Field& f) {
    MonomialMatrix out{std::vector<uint32_t>(a.n()), std::vector<uint8_t>(a.n())};
    for (size_t j = 0; j < a.n(); ++j) {
        out.perm[a.perm[j]] = static_cast<uint32_t>(j);
        out.coeffs[a.perm[j]] = f.inv(a.coeffs[j]);
    }
    return out;
}

FqMatrix apply_right(const FqMatrix& g, const MonomialMatrix& a, const Field& f) {
    if (g.cols() != a.n()) throw DimensionMismatch("apply_right dimension");
    FqMatrix out(g.rows(), a.n());
    for (size_t r = 0; r < g.rows(); ++r) {
        const uint8_t* src = g.row(r);
        uint8_t* dst = out.row(r);
        for (size_t j = 0; j < a.n(); ++j) dst[j] = f.mul(src[a.perm[j]], a.coeffs[j]);
    }
    return out;
}

FqMatrix apply_right(const FqMatrix& g, const PartialMonomialMatrix& a, const Field& f) {
    if (g.cols() != a.n) throw DimensionMismatch("apply_right dimension");
    FqMatrix out(g.rows(), a.k());
    for (size_t j = 0; j < a.k(); ++j)
        if (a.perm_inj[j] >= a.n) throw DimensionMismatch("partial monomial row out of range");
    for (size_t r = 0; r < g.rows(); ++r) {
        const uint8_t* src = g.row(r);
        uint8_t* dst = out.row(r);
        for (size_t j = 0; j < a.k(); ++j) dst[j] = f.mul(src[a.perm_inj[j]], a.coeffs[j]);
    }
    return out;
}

PartialMonomialMatrix select_columns(const MonomialMatrix& a, const std::vector<size_t>& j_set) {
    if (j_set.size() >= a.n()) throw BadIndexSet("column set must be a proper subset");
    std::vector<bool> seen(a.n(), false);
    PartialMonomialMatrix out{a.n(), {}, {}};
    for (size_t j : j_set) {
        if (j >= a.n() || seen[j]) throw BadIndexSet("column index out of range or repeated");
        seen[j] = true;
        out.perm_inj.push_back(a.perm[j]);
        out.coeffs.push_back(a.coeffs[j]);
    }
    return out;
}

}  // namespace zkfault
