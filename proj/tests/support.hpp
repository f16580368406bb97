#pragma once

// Test-only generators and oracles. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "tbsym/tbsym.hpp"

namespace tbsym::testing {

inline Rational random_rational(std::mt19937_64& rng, long bound = 5) {
    const long num = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    const long den = 1 + static_cast<long>(rng() % 4);
    return Rational(num, den);
}

inline Polynomial random_poly(std::mt19937_64& rng, const VarListPtr& vars, std::size_t max_terms = 4,
                              std::uint32_t max_exp = 2) {
    std::vector<Polynomial::Term> terms;
    const std::size_t count = rng() % (max_terms + 1);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Monomial::Exponent> e(vars->size());
        for (auto& x : e) x = static_cast<Monomial::Exponent>(rng() % (max_exp + 1));
        terms.emplace_back(Monomial(e), random_rational(rng));
    }
    return Polynomial::from_terms(vars, std::move(terms));
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(random_rational(rng, 7));
    return pt;
}

// Leibniz permutation-sum determinant.
template <class T, class Mat>
T leibniz_det(const Mat& m, T one) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    T sum = one - one;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        T prod = one;
        for (std::size_t i = 0; i < n; ++i) prod = prod * m(i, perm[i]);
        sum = inversions % 2 == 0 ? sum + prod : sum - prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

// Coefficient matrix of polys over the union of their monomials.
inline MatrixQ coefficient_matrix(const std::vector<Polynomial>& polys) {
    std::vector<Monomial> monos;
    for (const auto& p : polys)
        for (const auto& t : p.terms()) monos.push_back(t.first);
    std::sort(monos.begin(), monos.end());
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    MatrixQ m(polys.size(), monos.size());
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (const auto& [mono, c] : polys[i].terms())
            m(i, static_cast<std::size_t>(std::lower_bound(monos.begin(), monos.end(), mono) - monos.begin())) = c;
    return m;
}

inline std::size_t span_dim(const std::vector<Polynomial>& polys) { return rank(coefficient_matrix(polys)); }

// span(a) is contained in span(b).
inline bool span_contains(const std::vector<Polynomial>& b, const std::vector<Polynomial>& a) {
    std::vector<Polynomial> both = b;
    both.insert(both.end(), a.begin(), a.end());
    return span_dim(both) == span_dim(b);
}

// Generators rewritten under x_i -> sum_j A_ij y_j (same variable names).
inline IdealPresentation linear_change(const IdealPresentation& ideal, const MatrixQ& a) {
    const auto& vars = ideal.vars_ptr();
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < ideal.num_vars(); ++i) {
        Polynomial img(vars);
        for (std::size_t j = 0; j < ideal.num_vars(); ++j)
            img += Polynomial::variable(vars, j) * a(i, j);
        images.push_back(img);
    }
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) {
        Polynomial out(vars);
        for (const auto& [mono, c] : g.terms()) {
            Polynomial t = Polynomial::constant(vars, c);
            for (std::size_t i = 0; i < mono.size(); ++i)
                for (std::uint32_t k = 0; k < mono[i]; ++k) t = t * images[i];
            out += t;
        }
        gens.push_back(out);
    }
    return IdealPresentation(vars, std::move(gens));
}

inline MatrixQ random_invertible(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        MatrixQ a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(static_cast<long>(rng() % 7) - 3);
        if (!leibniz_det(a, Rational(1)).is_zero()) return a;
    }
}

}  // namespace tbsym::testing
