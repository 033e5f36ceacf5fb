#include "zkfault/gf.hpp"

#include <algorithm>
#include <string>

#include "zkfault/error.hpp"
#include "zkfault/kernels.hpp"

namespace zkfault {

bool is_prime(uint32_t q) {
    if (q < 2) return false;
    for (uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

uint32_t fq_inv(uint32_t a, uint32_t q) {
    a %= q;
    if (a == 0) throw ZeroInverse("inverse of zero");
    // a^(q-2) mod q
    uint64_t result = 1, base = a;
    for (uint32_t e = q - 2; e; e >>= 1) {
        if (e & 1) result = result * base % q;
        base = base * base % q;
    }
    return static_cast<uint32_t>(result);
}

Field::Field(uint32_t q) : q_(q), inv_(q, 0) {
    if (q >= 256 || !is_prime(q)) throw BadParams("field order must be a prime below 256: " + std::to_string(q));
    for (uint32_t a = 1; a < q; ++a) inv_[a] = static_cast<uint8_t>(fq_inv(a, q));
}

uint8_t Field::inv(uint32_t a) const {
    if (a % q_ == 0) throw ZeroInverse("inverse of zero");
    return inv_[a % q_];
}

FqMatrix::FqMatrix(size_t rows, size_t cols, std::vector<uint8_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("matrix data length");
}

FqMatrix FqMatrix::identity(size_t k) {
    FqMatrix m(k, k);
    for (size_t i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<uint8_t> FqMatrix::column(size_t c) const {
    std::vector<uint8_t> v(rows_);
    for (size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void FqMatrix::set_column(size_t c, const std::vector<uint8_t>& v) {
    if (v.size() != rows_) throw DimensionMismatch("column length");
    for (size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

RrefMatrix rref_with_pivots(const FqMatrix& m, const Field& f) {
    RrefMatrix out{m, {}};
    FqMatrix& a = out.matrix;
    const size_t rows = a.rows(), cols = a.cols();
    const uint32_t q = f.q();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a.at(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap_ranges(a.row(p), a.row(p) + cols, a.row(r));
        uint8_t* pr = a.row(r);
        if (pr[c] != 1) kernels::scale(pr + c, cols - c, f.inv(pr[c]), q);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            uint8_t* ri = a.row(i);
            if (ri[c] != 0) kernels::axpy(ri + c, pr + c, cols - c, q - ri[c], q);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    return out;
}

std::vector<uint8_t> lex_min_vector(std::vector<uint8_t> v, const Field& f) {
    auto it = std::find_if(v.begin(), v.end(), [](uint8_t x) { return x != 0; });
    if (it == v.end() || *it == 1) return v;
    const uint8_t s = f.inv(*it);
    for (auto& x : v) x = f.mul(x, s);
    return v;
}

FqMatrix lex_min_col(const FqMatrix& m, const Field& f) {
    FqMatrix out = m;
    for (size_t c = 0; c < m.cols(); ++c) out.set_column(c, lex_min_vector(m.column(c), f));
    return out;
}

FqMatrix lex_sort(const FqMatrix& m) {
    std::vector<std::vector<uint8_t>> cols(m.cols());
    for (size_t c = 0; c < m.cols(); ++c) cols[c] = m.column(c);
    std::sort(cols.begin(), cols.end());
    FqMatrix out(m.rows(), m.cols());
    for (size_t c = 0; c < m.cols(); ++c) out.set_column(c, cols[c]);
    return out;
}

FqMatrix matmul(const FqMatrix& a, const FqMatrix& b, const Field& f) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul inner dimension");
    FqMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t l = 0; l < a.cols(); ++l)
            if (uint8_t x = a.at(i, l)) kernels::axpy(out.row(i), b.row(l), b.cols(), x, f.q());
    return out;
}

std::vector<uint8_t> matvec(const FqMatrix& a, const std::vector<uint8_t>& v, const Field& f) {
    if (a.cols() != v.size()) throw DimensionMismatch("matvec dimension");
    std::vector<uint8_t> out(a.rows());
    for (size_t i = 0; i < a.rows(); ++i) {
        uint64_t acc = 0;
        for (size_t j = 0; j < a.cols(); ++j) acc += uint32_t(a.at(i, j)) * v[j];
        out[i] = static_cast<uint8_t>(acc % f.q());
    }
    return out;
}

FqMatrix transpose(const FqMatrix& m) {
    FqMatrix out(m.cols(), m.rows());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) out.at(c, r) = m.at(r, c);
    return out;
}

FqMatrix select_cols(const FqMatrix& m, const std::vector<size_t>& cols) {
    FqMatrix out(m.rows(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= m.cols()) throw BadIndexSet("column index out of range");
        for (size_t r = 0; r < m.rows(); ++r) out.at(r, j) = m.at(r, cols[j]);
    }
    return out;
}

FqMatrix inverse(const FqMatrix& m, const Field& f) {
    const size_t k = m.rows();
    if (m.cols() != k) throw DimensionMismatch("inverse of non-square matrix");
    FqMatrix aug(k, 2 * k);
    for (size_t r = 0; r < k; ++r) {
        std::copy(m.row(r), m.row(r) + k, aug.row(r));
        aug.at(r, k + r) = 1;
    }
    RrefMatrix red = rref_with_pivots(aug, f);
    if (red.rank() < k || red.pivot_cols[k - 1] != k - 1) throw SingularMatrix("matrix is singular");
    FqMatrix out(k, k);
    for (size_t r = 0; r < k; ++r) std::copy(red.matrix.row(r) + k, red.matrix.row(r) + 2 * k, out.row(r));
    return out;
}

size_t rank(const FqMatrix& m, const Field& f) { return rref_with_pivots(m, f).rank(); }

}  // namespace zkfault
