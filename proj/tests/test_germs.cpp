#include <gtest/gtest.h>

#include "support.hpp"

using namespace tbsym;

namespace {

// Euclid by repeated subtraction, independent of euclid_run's division.
std::vector<std::size_t> subtraction_symbol(std::uint64_t n, std::uint64_t r) {
    std::vector<std::size_t> out;
    std::uint64_t a = n, b = r;
    while (b > 0) {
        while (a >= b) {
            a -= b;
            out.push_back(b);
        }
        std::swap(a, b);
    }
    return out;
}

TBSymbol proven(std::vector<std::size_t> prefix, std::size_t tail) { return TBSymbol{std::move(prefix), true, tail}; }

}  // namespace

TEST(Mu, Mu11Generators) {
    const auto g = mu(1, 1);
    EXPECT_EQ(*g.vars_ptr(), (VarList{"a0", "b0"}));
    ASSERT_EQ(g.generators().size(), 2u);
    EXPECT_EQ(g.generators()[0], parse_poly("a0 + b0", g.vars_ptr()));
    EXPECT_EQ(g.generators()[1], parse_poly("a0*b0", g.vars_ptr()));
}

TEST(Mu, Mu21Generators) {
    // (x^2 + a1 x + a0)(x + b0)
    const auto g = mu(2, 1);
    const auto& v = g.vars_ptr();
    EXPECT_EQ(*v, (VarList{"a0", "a1", "b0"}));
    ASSERT_EQ(g.generators().size(), 3u);
    EXPECT_EQ(g.generators()[0], parse_poly("a1 + b0", v));
    EXPECT_EQ(g.generators()[1], parse_poly("a0 + a1*b0", v));
    EXPECT_EQ(g.generators()[2], parse_poly("a0*b0", v));
}

TEST(Mu, ShapeAndErrors) {
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t r = 1; r <= 3; ++r) {
            const auto g = mu(n, r);
            EXPECT_EQ(g.num_vars(), n + r);
            EXPECT_EQ(g.generators().size(), n + r);
        }
    EXPECT_THROW(mu(0, 1), StructuralError);
    EXPECT_THROW(mu(2, 0), StructuralError);
}

TEST(Mu, CoefficientsMatchPolynomialProduct) {
    // Expand (x^n + sum a_i x^i)(x^r + sum b_j x^j) in an extra variable x.
    for (const auto& [n, r] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 1}, {3, 2}}) {
        const auto g = mu(n, r);
        VarList names = *g.vars_ptr();
        names.push_back("x");
        const auto vx = make_vars(names);
        std::vector<std::size_t> map(g.num_vars());
        std::iota(map.begin(), map.end(), 0);
        const Polynomial x = Polynomial::variable(vx, g.num_vars());
        Polynomial f = pow(x, static_cast<std::uint32_t>(n)), h = pow(x, static_cast<std::uint32_t>(r));
        for (std::size_t i = 0; i < n; ++i) f += Polynomial::variable(vx, i) * pow(x, static_cast<std::uint32_t>(i));
        for (std::size_t j = 0; j < r; ++j)
            h += Polynomial::variable(vx, n + j) * pow(x, static_cast<std::uint32_t>(j));
        const Polynomial product = f * h;
        for (std::size_t k = 0; k < n + r; ++k) {
            // Coefficient of x^k: differentiate k times, set x = 0, divide by k!.
            Polynomial c = product;
            Rational fact(1);
            for (std::size_t t = 0; t < k; ++t) {
                c = partial_derivative(c, g.num_vars());
                fact *= Rational(static_cast<long>(t + 1));
            }
            c = substitute(c, g.num_vars(), Polynomial(vx)) * (Rational(1) / fact);
            const Polynomial expected = drop_variable(c, g.vars_ptr(), g.num_vars());
            EXPECT_EQ(g.generators()[n + r - 1 - k], expected) << "n=" << n << " r=" << r << " k=" << k;
        }
    }
}

TEST(ZeroGerm, Examples) {
    const auto z = zero_germ(2, 3);
    EXPECT_EQ(z.num_vars(), 2u);
    ASSERT_EQ(z.generators().size(), 3u);
    for (const auto& g : z.generators()) EXPECT_TRUE(g.is_zero());
    EXPECT_EQ(zero_germ(0, 1).num_vars(), 0u);
    EXPECT_THROW(zero_germ(2, 0), StructuralError);
}

TEST(Product, ShapeAndBlockDiagonalJacobian) {
    const auto p = cartesian_product(mu(1, 1), mu(2, 1));
    EXPECT_EQ(p.num_vars(), 5u);
    EXPECT_EQ(p.generators().size(), 5u);
    const MatrixPoly j = jacobian(p);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 2; c < 5; ++c) EXPECT_TRUE(j(r, c).is_zero());
    for (std::size_t r = 2; r < 5; ++r)
        for (std::size_t c = 0; c < 2; ++c) EXPECT_TRUE(j(r, c).is_zero());
    EXPECT_EQ(corank_at_origin(p), corank_at_origin(mu(1, 1)) + corank_at_origin(mu(2, 1)));
}

TEST(Product, NamesDoNotCollide) {
    const auto p = cartesian_product(mu(1, 1), mu(1, 1));
    EXPECT_EQ(*p.vars_ptr(), (VarList{"L_a0", "L_b0", "R_a0", "R_b0"}));
    const auto nested = cartesian_product(p, mu(1, 1));
    EXPECT_EQ(nested.num_vars(), 6u);
}

TEST(ProductProperties, CommutativeAndAssociativeUpToSymbol) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 15; ++i) {
        const auto a = random_germ(rng, 2, 2), b = random_germ(rng, 2, 2), c = random_germ(rng, 2, 1);
        const ChainOptions opts{.depth = 4};
        const auto ab = tb_symbol(cartesian_product(a, b), opts).symbol;
        const auto ba = tb_symbol(cartesian_product(b, a), opts).symbol;
        ASSERT_EQ(ab, ba);
        const auto left = tb_symbol(cartesian_product(cartesian_product(a, b), c), opts).symbol;
        const auto right = tb_symbol(cartesian_product(a, cartesian_product(b, c)), opts).symbol;
        ASSERT_EQ(left, right);
    }
}

TEST(Euclid, Examples) {
    const auto run = euclid_run(7, 5);
    EXPECT_EQ(run.quotients, (std::vector<std::uint64_t>{1, 2, 2}));
    EXPECT_EQ(run.remainders, (std::vector<std::uint64_t>{2, 1}));
    EXPECT_EQ(euclid_symbol(7, 5), proven({5, 2, 2, 1, 1}, 0));
    EXPECT_EQ(euclid_symbol(2, 1), proven({1, 1}, 0));
    EXPECT_EQ(euclid_symbol(4, 2), proven({2, 2}, 0));
    EXPECT_THROW(euclid_run(2, 3), DomainError);
    EXPECT_THROW(euclid_run(2, 0), DomainError);
}

TEST(EuclidProperties, AgreesWithSubtraction) {
    for (std::uint64_t n = 1; n <= 40; ++n)
        for (std::uint64_t r = 1; r <= n; ++r) {
            const auto s = euclid_symbol(n, r);
            ASSERT_EQ(s.prefix, subtraction_symbol(n, r)) << n << "," << r;
            ASSERT_TRUE(well_formed(s, n + r));
            const auto run = euclid_run(n, r);
            ASSERT_EQ(run.quotients.size(), run.remainders.size() + 1);
            // The last nonzero remainder is the gcd.
            ASSERT_EQ(run.remainders.empty() ? r : run.remainders.back(), std::gcd(n, r));
        }
}

TEST(SymbolAdd, Examples) {
    EXPECT_EQ(symbol_add(proven({1}, 0), proven({1}, 0)), proven({2}, 0));
    EXPECT_EQ(symbol_add(proven({1, 1}, 0), proven({1}, 1)), proven({2, 2}, 1));
    EXPECT_EQ(symbol_add(proven({}, 0), proven({1}, 0)), proven({1}, 0));

    const TBSymbol open{{2, 1}, false, 0};
    const auto partial = symbol_add(open, proven({1}, 0));
    EXPECT_FALSE(partial.tail_proven);
    EXPECT_EQ(partial.prefix, (std::vector<std::size_t>{3, 1}));
    EXPECT_THROW(symbol_add(open, proven({1}, 0), 3), DomainError);
}

TEST(SymbolPrefixEq, Examples) {
    EXPECT_TRUE(symbol_prefix_eq(proven({2}, 2), TBSymbol{{2, 2, 2}, false, 0}, 3));
    EXPECT_FALSE(symbol_prefix_eq(proven({2, 1}, 0), proven({2, 0}, 0), 2));
    EXPECT_THROW(symbol_prefix_eq(TBSymbol{{1}, false, 0}, proven({1}, 0), 2), DomainError);
    EXPECT_EQ(expand(proven({3, 1}, 1), 4), (std::vector<std::size_t>{3, 1, 1, 1}));
}

TEST(Realize, FactorLists) {
    const SymbolSpec a{{{2, 1}, {1, 2}}, 0};
    EXPECT_EQ(realization_factors(a), (std::vector<Factor>{{1, 1}, {3, 1}}));
    EXPECT_EQ(realization_factors(a)[1].name(), "mu(3,1)");

    const SymbolSpec b{{{3, 1}, {2, 2}}, 1};
    EXPECT_EQ(realization_factors(b), (std::vector<Factor>{{1, 1}, {3, 1}, {0, 1}}));
    EXPECT_EQ(realization_factors(b)[2].name(), "zero(1,1)");

    EXPECT_TRUE(realization_factors(SymbolSpec{}).empty());
    EXPECT_EQ(realize(SymbolSpec{}).num_vars(), 0u);
}

TEST(Realize, SymbolsMatchSpecs) {
    for (const auto& spec : {SymbolSpec{{{2, 1}, {1, 2}}, 0}, SymbolSpec{{{1, 3}}, 0}, SymbolSpec{{}, 2},
                             SymbolSpec{{{3, 1}, {2, 2}}, 1}}) {
        ChainOptions opts;
        opts.depth = prefix_length(spec) + 2;
        const auto run = tb_symbol(realize(spec), opts);
        EXPECT_TRUE(same_symbol(run.symbol, to_symbol(spec))) << format_symbol_spec(spec) << " got "
                                                              << format_symbol(run.symbol);
    }
}

TEST(Realize, InvalidSpecsAreRejected) {
    EXPECT_THROW(validate(SymbolSpec{{{1, 2}, {2, 1}}, 0}), DomainError);
    EXPECT_THROW(validate(SymbolSpec{{{2, 0}}, 0}), DomainError);
    EXPECT_THROW(validate(SymbolSpec{{{1, 1}}, 1}), DomainError);
}

TEST(Harness, EnumerateSpecsCoversSmallCases) {
    const auto specs = enumerate_specs(3, 4, {0, 1});
    EXPECT_GE(specs.size(), 40u);
    for (const auto& s : specs) {
        EXPECT_NO_THROW(validate(s));
        EXPECT_LE(prefix_length(s), 4u);
    }
}

TEST(Harness, RandomGermIsReproducible) {
    std::mt19937_64 a(42), b(42);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(random_germ(a), random_germ(b));
}
