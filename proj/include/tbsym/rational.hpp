#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "tbsym/errors.hpp"

namespace tbsym {

using BigInt = mpz_class;

// Exact rational number. Always stored in lowest terms with a positive
// denominator, so zero is uniquely 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const BigInt& value) : value_(value) {}
    Rational(const BigInt& numerator, const BigInt& denominator) {
        if (denominator == 0) throw DomainError("rational with zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }
    Rational(long numerator, long denominator) : Rational(BigInt(numerator), BigInt(denominator)) {}

    // Accepts "p" or "p/q" in base 10.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) return Rational(BigInt(std::string(text), 10));
            return Rational(BigInt(std::string(text.substr(0, slash)), 10),
                            BigInt(std::string(text.substr(slash + 1)), 10));
        } catch (const std::invalid_argument&) {
            throw DomainError("not a rational number: " + std::string(text));
        }
    }

    BigInt numerator() const { return value_.get_num(); }
    BigInt denominator() const { return value_.get_den(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }

    // Lowest terms and positive denominator.
    bool is_normalized() const {
        if (value_.get_den() <= 0) return false;
        BigInt g;
        mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
        return g == 1;
    }

    std::string to_string() const { return value_.get_str(); }

    const mpq_class& raw() const { return value_; }

    Rational operator-() const { return from_raw(-value_); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

private:
    static Rational from_raw(mpq_class v) {
        Rational r;
        r.value_ = std::move(v);
        return r;
    }

    mpq_class value_{0};
};

}  // namespace tbsym
