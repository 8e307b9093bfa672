#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace biext;

TEST(Integer, PromotesOnOverflow) {
    Integer a(std::numeric_limits<long long>::max());
    Integer b = a + Integer(1);
    EXPECT_FALSE(b.fits_int64());
    EXPECT_EQ(b.str(), "9223372036854775808");
    EXPECT_EQ((b - Integer(1)), a);
    EXPECT_TRUE((b - Integer(1)).fits_int64());
}

TEST(Integer, ProductOfLargeValues) {
    Integer a(3037000500LL);
    Integer p = a * a;
    EXPECT_EQ(p.str(), "9223372037000250000");
    EXPECT_EQ(gcd(p, Integer(1000)), Integer(1000));
}

TEST(Integer, FloorModIsNonNegative) {
    EXPECT_EQ(floor_mod(Integer(-7), Integer(4)), Integer(1));
    EXPECT_EQ(floor_mod(Integer(7), Integer(4)), Integer(3));
}

namespace {

void expect_valid_snf(const Matrix& m) {
    auto d = snf(m);
    EXPECT_EQ(d.U * m * d.V, d.S);
    EXPECT_EQ(abs(determinant(d.U)), Integer(1));
    EXPECT_EQ(abs(determinant(d.V)), Integer(1));
    for (std::size_t i = 0; i < d.S.rows(); ++i)
        for (std::size_t j = 0; j < d.S.cols(); ++j)
            if (i != j) EXPECT_TRUE(d.S(i, j).is_zero());
    for (std::size_t i = 0; i + 1 < d.diag.size(); ++i) {
        EXPECT_GE(d.diag[i].sign(), 0);
        if (!d.diag[i + 1].is_zero()) EXPECT_TRUE(divides(d.diag[i], d.diag[i + 1]));
        else if (d.diag[i].is_zero()) EXPECT_TRUE(d.diag[i + 1].is_zero());
    }
}

Matrix random_matrix(std::mt19937& rng) {
    std::uniform_int_distribution<int> dim(1, 6), entry(-30, 30);
    Matrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    return m;
}

} // namespace

TEST(Snf, RandomMatrices) {
    std::mt19937 rng(7);
    for (int t = 0; t < 300; ++t) expect_valid_snf(random_matrix(rng));
}

TEST(Snf, KnownDiagonal) {
    auto d = snf(Matrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    EXPECT_EQ(d.diag, (std::vector<Integer>{2, 6, 12}));
}

TEST(Snf, Deterministic) {
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        Matrix m = random_matrix(rng);
        auto a = snf(m), b = snf(m);
        EXPECT_EQ(a.U, b.U);
        EXPECT_EQ(a.V, b.V);
    }
}

TEST(Snf, ZeroAndEmpty) {
    auto d = snf(Matrix(3, 2));
    EXPECT_EQ(d.rank, 0u);
    EXPECT_EQ(d.U * Matrix(3, 2) * d.V, Matrix(3, 2));
    auto e = snf(Matrix(0, 4));
    EXPECT_EQ(e.rank, 0u);
}

TEST(Snf, LargeEntriesStayExact) {
    Matrix m{{1000000007LL, 998244353LL}, {1000000009LL, 1000000021LL}};
    Matrix big = m * m * m;
    expect_valid_snf(big);
    Integer det = determinant(big);
    auto d = snf(big);
    EXPECT_EQ(abs(d.diag[0] * d.diag[1]), abs(det));
}
