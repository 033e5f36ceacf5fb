#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace zkfault {

// Prime field F_q with q < 256; elements are canonical residues in [0, q).
class Field {
public:
    explicit Field(uint32_t q);

    uint32_t q() const { return q_; }
    uint8_t add(uint32_t a, uint32_t b) const { return static_cast<uint8_t>((a + b) % q_); }
    uint8_t sub(uint32_t a, uint32_t b) const { return static_cast<uint8_t>((a + q_ - b) % q_); }
    uint8_t neg(uint32_t a) const { return static_cast<uint8_t>((q_ - a) % q_); }
    uint8_t mul(uint32_t a, uint32_t b) const { return static_cast<uint8_t>((a * b) % q_); }
    uint8_t inv(uint32_t a) const;  // throws ZeroInverse

    bool operator==(const Field& o) const { return q_ == o.q_; }

private:
    uint32_t q_;
    std::vector<uint8_t> inv_;
};

bool is_prime(uint32_t q);
uint32_t fq_inv(uint32_t a, uint32_t q);

class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    FqMatrix(size_t rows, size_t cols, std::vector<uint8_t> data);

    static FqMatrix identity(size_t k);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint8_t& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    uint8_t at(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    uint8_t* row(size_t r) { return data_.data() + r * cols_; }
    const uint8_t* row(size_t r) const { return data_.data() + r * cols_; }
    const std::vector<uint8_t>& data() const { return data_; }

    std::vector<uint8_t> column(size_t c) const;
    void set_column(size_t c, const std::vector<uint8_t>& v);

    bool operator==(const FqMatrix& o) const = default;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<uint8_t> data_;
};

struct RrefMatrix {
    FqMatrix matrix;
    std::vector<size_t> pivot_cols;

    size_t rank() const { return pivot_cols.size(); }
    bool operator==(const RrefMatrix& o) const = default;
};

RrefMatrix rref_with_pivots(const FqMatrix& m, const Field& f);
FqMatrix lex_min_col(const FqMatrix& m, const Field& f);
FqMatrix lex_sort(const FqMatrix& m);

std::vector<uint8_t> lex_min_vector(std::vector<uint8_t> v, const Field& f);

FqMatrix matmul(const FqMatrix& a, const FqMatrix& b, const Field& f);
std::vector<uint8_t> matvec(const FqMatrix& a, const std::vector<uint8_t>& v, const Field& f);
FqMatrix transpose(const FqMatrix& m);
FqMatrix select_cols(const FqMatrix& m, const std::vector<size_t>& cols);
// Throws SingularMatrix.
FqMatrix inverse(const FqMatrix& m, const Field& f);
size_t rank(const FqMatrix& m, const Field& f);

}  // namespace zkfault
