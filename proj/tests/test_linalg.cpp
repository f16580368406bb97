#include <gtest/gtest.h>

#include "support.hpp"

using namespace tbsym;
using tbsym::testing::leibniz_det;
using tbsym::testing::random_point;
using tbsym::testing::random_poly;
using tbsym::testing::span_contains;
using tbsym::testing::span_dim;

namespace {

MatrixQ Q(std::size_t rows, std::size_t cols, std::vector<long> values) {
    std::vector<Rational> e(values.begin(), values.end());
    return MatrixQ(rows, cols, std::move(e));
}

MatrixPoly M(const VarListPtr& vars, std::size_t rows, std::size_t cols, const std::vector<std::string>& entries) {
    std::vector<Polynomial> e;
    for (const auto& s : entries) e.push_back(parse_poly(s, vars));
    return MatrixPoly(vars, rows, cols, std::move(e));
}

}  // namespace

TEST(Rank, Examples) {
    EXPECT_EQ(rank(Q(2, 2, {1, 1, 0, 0})), 1u);
    // Origin Jacobian of mu(2,1); hand elimination gives rank 2.
    EXPECT_EQ(rank(Q(3, 3, {0, 1, 1, 1, 0, 0, 0, 0, 0})), 2u);
    EXPECT_EQ(rank(Q(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})), 3u);
    EXPECT_EQ(rank(MatrixQ(0, 4)), 0u);
}

TEST(RankProperties, InvariantUnderRowOpsAndTransposition) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        MatrixQ m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(static_cast<long>(rng() % 3) - 1);
        const std::size_t k = rank(m);
        ASSERT_LE(k, std::min(rows, cols));
        ASSERT_EQ(rank(m.transposed()), k);
        MatrixQ swapped = m;
        swapped.swap_rows(0, rows - 1);
        ASSERT_EQ(rank(swapped), k);
        MatrixQ scaled = m;
        for (std::size_t c = 0; c < cols; ++c) scaled(0, c) *= Rational(-7, 3);
        ASSERT_EQ(rank(scaled), k);
    }
}

TEST(DeterminantPoly, Examples) {
    const auto abcd = make_vars({"a", "b", "c", "d"});
    EXPECT_EQ(determinant(M(abcd, 2, 2, {"a", "b", "c", "d"})), parse_poly("a*d - b*c", abcd));

    // Jacobian of mu(2,1); the expected value is the Leibniz-formula oracle,
    // which agrees with the hand cofactor expansion -a0 + a1*b0 - b0^2.
    const auto v = make_vars({"a0", "a1", "b0"});
    const MatrixPoly jac = M(v, 3, 3, {"0", "1", "1", "1", "b0", "a1", "b0", "0", "a0"});
    const Polynomial oracle = leibniz_det(jac, Polynomial::constant(v, Rational(1)));
    EXPECT_EQ(oracle, parse_poly("-a0 + a1*b0 - b0^2", v));
    EXPECT_EQ(determinant(jac), oracle);

    const auto x = make_vars({"x"});
    EXPECT_EQ(determinant(M(x, 1, 1, {"x"})), parse_poly("x", x));
    EXPECT_THROW(determinant(M(x, 1, 2, {"x", "1"})), StructuralError);
}

TEST(DeterminantProperties, CommutesWithEvaluation) {
    std::mt19937_64 rng(23);
    const auto vars = make_vars({"x", "y", "z"});
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 2 + rng() % 2;
        MatrixPoly m(vars, n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = random_poly(rng, vars, 3, 2);
        const auto pt = random_point(rng, 3);
        const MatrixQ numeric = evaluate(m, pt);
        const Rational expected = leibniz_det(numeric, Rational(1));
        ASSERT_EQ(determinant(numeric), expected);
        ASSERT_EQ(evaluate(determinant(m), pt), expected);
    }
}

TEST(EnumerateMinors, Examples) {
    const auto v = make_vars({"x", "y", "z"});
    const auto two_by_three = M(v, 2, 3, {"x", "y", "z", "y", "z", "x^2"});
    EXPECT_LE(enumerate_minors(two_by_three, 2).size(), 3u);

    // Jacobian of mu(1,1): det = a0 - b0, canonical sign b0 - a0.
    const auto ab = make_vars({"a0", "b0"});
    const auto jac = M(ab, 2, 2, {"1", "1", "b0", "a0"});
    const auto minors = enumerate_minors(jac, 2);
    ASSERT_EQ(minors.size(), 1u);
    EXPECT_EQ(minors[0], canonical_sign(parse_poly("a0 - b0", ab)));

    EXPECT_TRUE(enumerate_minors(jac, 3).empty());
    EXPECT_THROW(enumerate_minors(jac, 0), StructuralError);
}

TEST(EnumerateMinors, DropsZerosAndSignDuplicates) {
    const auto v = make_vars({"x", "y"});
    // Rows 0 and 1 swapped give the same minor up to sign; row 2 is zero.
    const auto m = M(v, 3, 2, {"x", "y", "y", "x", "0", "0"});
    const auto minors = enumerate_minors(m, 2);
    ASSERT_EQ(minors.size(), 1u);
    EXPECT_EQ(minors[0], canonical_sign(parse_poly("x^2 - y^2", v)));
}

TEST(EnumerateMinors, IndependentOfThreadCount) {
    std::mt19937_64 rng(29);
    const auto vars = make_vars({"x", "y", "z"});
    for (int i = 0; i < 10; ++i) {
        MatrixPoly m(vars, 5, 4);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = random_poly(rng, vars, 2, 1);
        const auto serial = enumerate_minors(m, 3, 1);
        ASSERT_EQ(enumerate_minors(m, 3, 3), serial);
        ASSERT_TRUE(std::is_sorted(serial.begin(), serial.end(), canonical_less));
    }
}

TEST(Interreduce, Examples) {
    const auto ab = make_vars({"a0", "b0"});
    const std::vector<Polynomial> dep{parse_poly("a0 + b0", ab), parse_poly("2*a0 + 2*b0", ab), parse_poly("a0 - b0", ab)};
    const auto basis = qlinear_interreduce(dep);
    EXPECT_EQ(basis.size(), 2u);
    EXPECT_TRUE(span_contains(basis, dep));
    EXPECT_TRUE(span_contains(dep, basis));

    EXPECT_TRUE(qlinear_interreduce(std::vector<Polynomial>{Polynomial(ab)}).empty());
    const std::vector<Polynomial> single{parse_poly("a0*b0", ab)};
    EXPECT_EQ(qlinear_interreduce(single), single);
}

TEST(InterreduceProperties, SpanPreservedAndOrderIndependent) {
    std::mt19937_64 rng(31);
    const auto vars = make_vars({"x", "y"});
    for (int i = 0; i < 100; ++i) {
        std::vector<Polynomial> gens;
        const std::size_t n = 1 + rng() % 6;
        for (std::size_t j = 0; j < n; ++j) gens.push_back(random_poly(rng, vars, 3, 2));
        if (n > 2) gens.push_back(gens[0] * Rational(3) - gens[1]);
        const auto out = qlinear_interreduce(gens);
        ASSERT_LE(out.size(), gens.size());
        ASSERT_EQ(out.size(), span_dim(gens));
        ASSERT_TRUE(span_contains(out, gens));
        ASSERT_TRUE(span_contains(gens, out));
        std::vector<Polynomial> shuffled = gens;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        ASSERT_EQ(qlinear_interreduce(shuffled), out);
    }
}
