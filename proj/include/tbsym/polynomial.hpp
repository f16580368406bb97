#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tbsym/errors.hpp"
#include "tbsym/rational.hpp"

namespace tbsym {

using VarList = std::vector<std::string>;
using VarListPtr = std::shared_ptr<const VarList>;

inline VarListPtr make_vars(VarList names) { return std::make_shared<const VarList>(std::move(names)); }
inline VarListPtr make_vars(std::initializer_list<std::string> names) { return make_vars(VarList(names)); }

inline bool same_vars(const VarListPtr& a, const VarListPtr& b) { return a == b || *a == *b; }

// Exponent vector over an ambient variable list. Total degree is cached.
class Monomial {
public:
    using Exponent = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
        for (auto e : exps_) degree_ += e;
    }

    static Monomial variable(std::size_t num_vars, std::size_t index, Exponent power = 1) {
        Monomial m(num_vars);
        m.exps_[index] = power;
        m.degree_ = power;
        return m;
    }

    std::size_t size() const { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    std::uint64_t degree() const { return degree_; }
    bool is_one() const { return degree_ == 0; }
    std::span<const Exponent> exponents() const { return exps_; }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
        r.degree_ += o.degree_;
        return r;
    }

    Monomial with_exponent(std::size_t index, Exponent e) const {
        Monomial r(*this);
        r.degree_ = r.degree_ - r.exps_[index] + e;
        r.exps_[index] = e;
        return r;
    }

    Monomial without(std::size_t index) const {
        std::vector<Exponent> e;
        e.reserve(exps_.size() - 1);
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (i != index) e.push_back(exps_[i]);
        return Monomial(std::move(e));
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

    // Graded lexicographic order: total degree first, ties broken with later
    // variables more significant than earlier ones.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        for (std::size_t i = a.exps_.size(); i-- > 0;)
            if (a.exps_[i] != b.exps_[i]) return a.exps_[i] <=> b.exps_[i];
        return std::strong_ordering::equal;
    }

private:
    std::vector<Exponent> exps_;
    std::uint64_t degree_ = 0;
};

// Sparse polynomial with exact rational coefficients. Terms are kept sorted by
// descending graded lex order with no zero coefficients, so structural
// equality is mathematical equality.
class Polynomial {
public:
    using Term = std::pair<Monomial, Rational>;

    Polynomial() : vars_(empty_vars()) {}
    explicit Polynomial(VarListPtr vars) : vars_(std::move(vars)) {}

    static Polynomial constant(VarListPtr vars, const Rational& c) {
        Polynomial p(std::move(vars));
        if (!c.is_zero()) p.terms_.emplace_back(Monomial(p.num_vars()), c);
        return p;
    }

    static Polynomial variable(VarListPtr vars, std::size_t index) {
        if (index >= vars->size()) throw StructuralError("variable index out of range");
        Polynomial p(std::move(vars));
        p.terms_.emplace_back(Monomial::variable(p.num_vars(), index), Rational(1));
        return p;
    }

    // Sorts, merges equal monomials and drops zeros.
    static Polynomial from_terms(VarListPtr vars, std::vector<Term> terms) {
        Polynomial p(std::move(vars));
        for (const auto& t : terms)
            if (t.first.size() != p.num_vars()) throw StructuralError("monomial length does not match variable count");
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(std::move(t));
            if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
        }
        return p;
    }

    const VarList& vars() const { return *vars_; }
    const VarListPtr& vars_ptr() const { return vars_; }
    std::size_t num_vars() const { return vars_->size(); }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    const Term& leading() const { return terms_.front(); }
    std::uint64_t total_degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

    Rational coefficient(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& key) { return t.first > key; });
        return (it != terms_.end() && it->first == m) ? it->second : Rational(0);
    }

    Rational constant_term() const {
        return (!terms_.empty() && terms_.back().first.is_one()) ? terms_.back().second : Rational(0);
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    Polynomial& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
        } else {
            for (auto& t : terms_) t.second *= c;
        }
        return *this;
    }
    friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) { return merge(p, q, Rational(1)); }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return merge(p, q, Rational(-1)); }
    Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
    Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }

    // p + c * q in one merge pass.
    static Polynomial merge(const Polynomial& p, const Polynomial& q, const Rational& c) {
        require_same_vars(p, q);
        Polynomial r(p.vars_);
        r.terms_.reserve(p.terms_.size() + q.terms_.size());
        auto i = p.terms_.begin();
        auto j = q.terms_.begin();
        while (i != p.terms_.end() || j != q.terms_.end()) {
            if (j == q.terms_.end() || (i != p.terms_.end() && i->first > j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == p.terms_.end() || j->first > i->first) {
                r.terms_.emplace_back(j->first, c * j->second);
                ++j;
            } else {
                Rational s = i->second + c * j->second;
                if (!s.is_zero()) r.terms_.emplace_back(i->first, std::move(s));
                ++i;
                ++j;
            }
        }
        return r;
    }

    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        require_same_vars(p, q);
        std::vector<Term> products;
        products.reserve(p.terms_.size() * q.terms_.size());
        for (const auto& a : p.terms_)
            for (const auto& b : q.terms_) products.emplace_back(a.first * b.first, a.second * b.second);
        return from_terms(p.vars_, std::move(products));
    }
    Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

    friend bool operator==(const Polynomial& p, const Polynomial& q) {
        return same_vars(p.vars_, q.vars_) && p.terms_ == q.terms_;
    }

    static void require_same_vars(const Polynomial& p, const Polynomial& q) {
        if (!same_vars(p.vars_, q.vars_)) throw StructuralError("polynomials over different variable lists");
    }

private:
    static const VarListPtr& empty_vars() {
        static const VarListPtr empty = make_vars(VarList{});
        return empty;
    }

    VarListPtr vars_;
    std::vector<Term> terms_;
};

inline Polynomial pow(const Polynomial& p, std::uint32_t e) {
    Polynomial result = Polynomial::constant(p.vars_ptr(), Rational(1));
    Polynomial base = p;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e > 0) base *= base;
    }
    return result;
}

inline Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
    if (var >= p.num_vars()) throw StructuralError("derivative variable index out of range");
    std::vector<Polynomial::Term> terms;
    for (const auto& [m, c] : p.terms()) {
        const auto e = m[var];
        if (e == 0) continue;
        terms.emplace_back(m.with_exponent(var, e - 1), c * Rational(static_cast<long>(e)));
    }
    return Polynomial::from_terms(p.vars_ptr(), std::move(terms));
}

inline Rational constant_term(const Polynomial& p) { return p.constant_term(); }

inline Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
    if (point.size() != p.num_vars()) throw StructuralError("evaluation point has wrong length");
    Rational sum;
    for (const auto& [m, c] : p.terms()) {
        Rational v = c;
        for (std::size_t i = 0; i < point.size(); ++i) {
            for (std::uint32_t k = 0; k < m[i]; ++k) v *= point[i];
        }
        sum += v;
    }
    return sum;
}

// p or -p, whichever has a positive leading coefficient.
inline Polynomial canonical_sign(const Polynomial& p) {
    if (p.is_zero() || p.leading().second.sign() > 0) return p;
    return -p;
}

// Divides out the rational content so the coefficients are coprime integers
// and the leading coefficient is positive. A nonzero multiple of the input.
inline Polynomial primitive_part(const Polynomial& p) {
    if (p.is_zero()) return p;
    BigInt num_gcd = 0;
    BigInt den_lcm = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.raw().get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.raw().get_den_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    if (p.leading().second.sign() < 0) scale = -scale;
    return p * scale;
}

// Substitutes value for variable var. The result keeps p's variable list.
inline Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& value) {
    Polynomial::require_same_vars(p, value);
    std::vector<Polynomial> powers{Polynomial::constant(p.vars_ptr(), Rational(1))};
    std::vector<Polynomial::Term> untouched;
    Polynomial result(p.vars_ptr());
    for (const auto& [m, c] : p.terms()) {
        const auto e = m[var];
        if (e == 0) {
            untouched.emplace_back(m, c);
            continue;
        }
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        Polynomial rest = Polynomial::from_terms(p.vars_ptr(), {{m.with_exponent(var, 0), c}});
        result += rest * powers[e];
    }
    return result + Polynomial::from_terms(p.vars_ptr(), std::move(untouched));
}

// Re-expresses p over a larger variable list: variable i of p becomes
// variable index_map[i] of target.
inline Polynomial embed(const Polynomial& p, const VarListPtr& target, std::span<const std::size_t> index_map) {
    if (index_map.size() != p.num_vars()) throw StructuralError("embedding map has wrong length");
    std::vector<Polynomial::Term> terms;
    terms.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Exponent> e(target->size(), 0);
        for (std::size_t i = 0; i < index_map.size(); ++i) {
            if (index_map[i] >= target->size()) throw StructuralError("embedding index out of range");
            e[index_map[i]] += m[i];
        }
        terms.emplace_back(Monomial(std::move(e)), c);
    }
    return Polynomial::from_terms(target, std::move(terms));
}

// Drops variable var, which must not occur in p.
inline Polynomial drop_variable(const Polynomial& p, const VarListPtr& target, std::size_t var) {
    std::vector<Polynomial::Term> terms;
    terms.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
        if (m[var] != 0) throw StructuralError("dropping a variable that occurs in the polynomial");
        terms.emplace_back(m.without(var), c);
    }
    return Polynomial::from_terms(target, std::move(terms));
}

// Total order on polynomials over one variable list: term sequences compared
// position by position (monomial, then coefficient); a proper prefix sorts
// first.
inline std::strong_ordering compare(const Polynomial& p, const Polynomial& q) {
    const auto& a = p.terms();
    const auto& b = q.terms();
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (auto c = a[i].first <=> b[i].first; c != 0) return c;
        if (auto c = a[i].second <=> b[i].second; c != 0) return c;
    }
    return a.size() <=> b.size();
}

inline bool canonical_less(const Polynomial& p, const Polynomial& q) { return compare(p, q) < 0; }

}  // namespace tbsym
