#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zkfault/gf.hpp"

namespace zkfault {

// Column-centric: column j has its nonzero entry coeffs[j] in row perm[j].
struct MonomialMatrix {
    std::vector<uint32_t> perm;
    std::vector<uint8_t> coeffs;

    size_t n() const { return perm.size(); }
    static MonomialMatrix identity(size_t n);
    bool valid(const Field& f) const;
    FqMatrix dense() const;
    bool operator==(const MonomialMatrix& o) const = default;
};

// n x k column selection of a monomial matrix; column j has coeffs[j] in row perm_inj[j].
struct PartialMonomialMatrix {
    size_t n = 0;
    std::vector<uint32_t> perm_inj;
    std::vector<uint8_t> coeffs;

    size_t k() const { return perm_inj.size(); }
    bool valid(const Field& f) const;
    FqMatrix dense() const;
    // Rows of the ambient space that carry no nonzero entry, ascending.
    std::vector<size_t> zero_rows() const;
    bool operator==(const PartialMonomialMatrix& o) const = default;
};

MonomialMatrix mono_mul(const MonomialMatrix& a, const MonomialMatrix& b, const Field& f);
PartialMonomialMatrix mono_mul(const MonomialMatrix& a, const PartialMonomialMatrix& b, const Field& f);
MonomialMatrix mono_transpose(const MonomialMatrix& a);
MonomialMatrix mono_inverse(const MonomialMatrix& a, const Field& f);
FqMatrix apply_right(const FqMatrix& g, const MonomialMatrix& a, const Field& f);
FqMatrix apply_right(const FqMatrix& g, const PartialMonomialMatrix& a, const Field& f);
PartialMonomialMatrix select_columns(const MonomialMatrix& a, const std::vector<size_t>& j_set);

}  // namespace zkfault
