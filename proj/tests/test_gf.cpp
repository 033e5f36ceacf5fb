#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "zkfault/error.hpp"
#include "zkfault/gf.hpp"
#include "zkfault/kernels.hpp"

using namespace zkfault;

TEST_CASE("fq_inv examples") {
    CHECK(fq_inv(1, 127) == 1);
    CHECK(fq_inv(2, 127) == 64);
    CHECK(fq_inv(126, 127) == 126);
    CHECK_THROWS_AS(fq_inv(0, 127), ZeroInverse);
    Field f(127);
    CHECK_THROWS_AS(f.inv(0), ZeroInverse);
}

TEST_CASE("inverse is exact for every nonzero element of F_127") {
    Field f(127);
    for (uint32_t a = 1; a < 127; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(11);
    for (uint32_t q : {5u, 7u, 127u, 251u}) {
        Field f(q);
        std::uniform_int_distribution<uint32_t> u(0, q - 1);
        for (int i = 0; i < 2000; ++i) {
            uint32_t a = u(rng), b = u(rng), c = u(rng);
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.sub(f.add(a, b), b) == a);
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        }
    }
}

TEST_CASE("field rejects composite or oversized orders") {
    CHECK_THROWS_AS(Field(8), BadParams);
    CHECK_THROWS_AS(Field(1), BadParams);
    CHECK_THROWS_AS(Field(257), BadParams);
}

TEST_CASE("rref examples") {
    Field f(127);
    auto id = FqMatrix::identity(4);
    auto r = rref_with_pivots(id, f);
    CHECK(r.matrix == id);
    CHECK(r.pivot_cols == std::vector<size_t>{0, 1, 2, 3});

    auto a = rref_with_pivots(FqMatrix(2, 2, {2, 4, 1, 2}), f);
    CHECK(a.matrix == FqMatrix(2, 2, {1, 2, 0, 0}));
    CHECK(a.pivot_cols == std::vector<size_t>{0});

    auto b = rref_with_pivots(FqMatrix(2, 3, {0, 1, 3, 1, 0, 5}), f);
    CHECK(b.matrix == FqMatrix(2, 3, {1, 0, 5, 0, 1, 3}));
    CHECK(b.pivot_cols == std::vector<size_t>{0, 1});
}

namespace {

bool is_rref(const RrefMatrix& r) {
    const FqMatrix& m = r.matrix;
    size_t prev = 0;
    bool first = true;
    for (size_t i = 0; i < m.rows(); ++i) {
        size_t lead = m.cols();
        for (size_t c = 0; c < m.cols(); ++c)
            if (m.at(i, c)) {
                lead = c;
                break;
            }
        if (i >= r.rank()) {
            if (lead != m.cols()) return false;
            continue;
        }
        if (lead != r.pivot_cols[i] || m.at(i, lead) != 1) return false;
        if (!first && lead <= prev) return false;
        for (size_t k = 0; k < m.rows(); ++k)
            if (k != i && m.at(k, lead) != 0) return false;
        prev = lead;
        first = false;
    }
    return true;
}

}  // namespace

TEST_CASE("rref properties: shape, idempotence, invariance under row mixing") {
    std::mt19937_64 rng(7);
    for (uint32_t q : {5u, 7u, 127u}) {
        Field f(q);
        for (int it = 0; it < 60; ++it) {
            size_t rows = 1 + rng() % 8, cols = 1 + rng() % 14;
            FqMatrix m = oracle::random_matrix(rng, rows, cols, q);
            if (it % 3 == 0 && rows > 1)  // force rank deficiency
                for (size_t c = 0; c < cols; ++c) m.at(rows - 1, c) = f.mul(m.at(0, c), 3);
            RrefMatrix r = rref_with_pivots(m, f);
            CHECK(is_rref(r));
            CHECK(rref_with_pivots(r.matrix, f) == r);
            FqMatrix s = oracle::random_matrix(rng, rows, rows, q);
            if (oracle::det(oracle::to_dense(s), q) == 0) continue;
            CHECK(rref_with_pivots(matmul(s, m, f), f) == r);
        }
    }
}

TEST_CASE("lex_min_col examples") {
    Field f(127);
    CHECK(lex_min_col(FqMatrix(3, 1, {0, 3, 5}), f) == FqMatrix(3, 1, {0, 1, 44}));
    CHECK(lex_min_col(FqMatrix(2, 1, {1, 9}), f) == FqMatrix(2, 1, {1, 9}));
    CHECK(lex_min_col(FqMatrix(2, 1, {0, 0}), f) == FqMatrix(2, 1, {0, 0}));
}

TEST_CASE("lex_sort examples") {
    // columns are read top to bottom: (1,2) and (0,5)
    CHECK(lex_sort(FqMatrix(2, 2, {1, 0, 2, 5})) == FqMatrix(2, 2, {0, 1, 5, 2}));
    FqMatrix sorted(2, 2, {0, 1, 5, 2});
    CHECK(lex_sort(sorted) == sorted);
    CHECK(lex_sort(FqMatrix(2, 2, {1, 1, 3, 2})) == FqMatrix(2, 2, {1, 1, 2, 3}));
}

TEST_CASE("lex properties") {
    std::mt19937_64 rng(5);
    Field f(7);
    for (int it = 0; it < 100; ++it) {
        FqMatrix m = oracle::random_matrix(rng, 4, 9, 7);
        FqMatrix s = lex_sort(m);
        CHECK(lex_sort(s) == s);
        for (size_t c = 1; c < s.cols(); ++c) CHECK(s.column(c - 1) <= s.column(c));
        auto a = m.data(), b = s.data();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
        FqMatrix n = lex_min_col(m, f);
        for (size_t c = 0; c < n.cols(); ++c) {
            auto col = n.column(c);
            auto it2 = std::find_if(col.begin(), col.end(), [](uint8_t x) { return x != 0; });
            if (it2 != col.end()) CHECK(*it2 == 1);
        }
    }
}

TEST_CASE("matmul, transpose and inverse agree with the dense oracle") {
    std::mt19937_64 rng(3);
    for (uint32_t q : {7u, 127u}) {
        Field f(q);
        for (int it = 0; it < 40; ++it) {
            FqMatrix a = oracle::random_matrix(rng, 5, 7, q), b = oracle::random_matrix(rng, 7, 3, q);
            CHECK(oracle::to_dense(matmul(a, b, f)) == oracle::mul(oracle::to_dense(a), oracle::to_dense(b), q));
            CHECK(oracle::to_dense(transpose(a)) == oracle::transpose(oracle::to_dense(a)));
            FqMatrix s = oracle::random_matrix(rng, 6, 6, q);
            if (oracle::det(oracle::to_dense(s), q) == 0) {
                CHECK_THROWS_AS(inverse(s, f), SingularMatrix);
                continue;
            }
            CHECK(matmul(s, inverse(s, f), f) == FqMatrix::identity(6));
        }
    }
}

TEST_CASE("SIMD kernels match the scalar reference") {
    if (!kernels::cpu_has_avx2()) {
        MESSAGE("AVX2 unavailable; skipping");
        return;
    }
    std::mt19937_64 rng(99);
    for (uint32_t q : {2u, 3u, 5u, 7u, 127u, 211u, 251u}) {
        for (size_t len : {0u, 1u, 15u, 16u, 17u, 31u, 32u, 100u, 252u}) {
            std::vector<uint8_t> src(len), dst(len);
            for (auto& x : src) x = static_cast<uint8_t>(rng() % q);
            for (auto& x : dst) x = static_cast<uint8_t>(rng() % q);
            for (uint32_t c = 0; c < q; ++c) {
                auto a = dst, b = dst;
                kernels::axpy_scalar(a.data(), src.data(), len, c, q);
                kernels::axpy_avx2(b.data(), src.data(), len, c, q);
                CHECK(a == b);
                a = dst;
                b = dst;
                kernels::scale_scalar(a.data(), len, c, q);
                kernels::scale_avx2(b.data(), len, c, q);
                CHECK(a == b);
            }
        }
    }
}

TEST_CASE("RREF is identical under scalar and AVX2 dispatch") {
    std::mt19937_64 rng(1234);
    Field f(127);
    const auto saved = kernels::active_isa();
    for (int it = 0; it < 10; ++it) {
        FqMatrix m = oracle::random_matrix(rng, 40, 80, 127);
        kernels::set_isa(kernels::Isa::scalar);
        auto a = rref_with_pivots(m, f);
        kernels::set_isa(kernels::Isa::avx2);
        auto b = rref_with_pivots(m, f);
        CHECK(a == b);
    }
    kernels::set_isa(saved);
}
