#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tbsym/boardman.hpp"
#include "tbsym/errors.hpp"
#include "tbsym/polynomial.hpp"

namespace tbsym {

// Polynomial multiplication map mu_{n,r}: coefficients (a_0..a_{n-1}) and
// (b_0..b_{r-1}) of monic f, g of degrees n, r go to the non-leading
// coefficients (c_{n+r-1}, ..., c_0) of f*g.
inline IdealPresentation mu(std::size_t n, std::size_t r) {
    if (n == 0 || r == 0) throw StructuralError("mu(n, r) needs n >= 1 and r >= 1");
    VarList names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
    for (std::size_t i = 0; i < r; ++i) names.push_back("b" + std::to_string(i));
    auto vars = make_vars(std::move(names));

    auto a = [&](std::size_t s) {
        return s == n ? Polynomial::constant(vars, Rational(1)) : Polynomial::variable(vars, s);
    };
    auto b = [&](std::size_t t) {
        return t == r ? Polynomial::constant(vars, Rational(1)) : Polynomial::variable(vars, n + t);
    };

    std::vector<Polynomial> gens;
    for (std::size_t j = n + r; j-- > 0;) {
        Polynomial c(vars);
        for (std::size_t s = (j > r ? j - r : 0); s <= std::min(j, n); ++s) c += a(s) * b(j - s);
        gens.push_back(std::move(c));
    }
    return IdealPresentation(vars, std::move(gens));
}

// The zero germ C^a -> C^b on variables x0..x{a-1}.
inline IdealPresentation zero_germ(std::size_t a, std::size_t b) {
    if (b == 0) throw StructuralError("zero germ needs a positive target dimension");
    VarList names;
    for (std::size_t i = 0; i < a; ++i) names.push_back("x" + std::to_string(i));
    auto vars = make_vars(std::move(names));
    return IdealPresentation(vars, std::vector<Polynomial>(b, Polynomial(vars)));
}

// (F_1, F_2) on the disjoint union of coordinates; left variables get the
// prefix "L_", right ones "R_".
inline IdealPresentation cartesian_product(const IdealPresentation& left, const IdealPresentation& right) {
    VarList names;
    for (const auto& v : left.vars()) names.push_back("L_" + v);
    for (const auto& v : right.vars()) names.push_back("R_" + v);
    auto vars = make_vars(std::move(names));

    std::vector<std::size_t> left_map(left.num_vars());
    std::vector<std::size_t> right_map(right.num_vars());
    for (std::size_t i = 0; i < left_map.size(); ++i) left_map[i] = i;
    for (std::size_t i = 0; i < right_map.size(); ++i) right_map[i] = left.num_vars() + i;

    std::vector<Polynomial> gens;
    for (const auto& g : left.generators()) gens.push_back(embed(g, vars, left_map));
    for (const auto& g : right.generators()) gens.push_back(embed(g, vars, right_map));
    return IdealPresentation(vars, std::move(gens));
}

struct EuclidRun {
    std::uint64_t n = 0;
    std::uint64_t r = 0;
    std::vector<std::uint64_t> quotients;   // q_1 .. q_{k+1}
    std::vector<std::uint64_t> remainders;  // r_1 .. r_k, all nonzero
};

// n = q_1 r + r_1, r = q_2 r_1 + r_2, ..., stopping at the first exact
// division.
inline EuclidRun euclid_run(std::uint64_t n, std::uint64_t r) {
    if (r == 0 || n < r) throw DomainError("Euclidean symbol needs n >= r >= 1");
    EuclidRun run{n, r, {}, {}};
    std::uint64_t a = n;
    std::uint64_t b = r;
    while (true) {
        run.quotients.push_back(a / b);
        const std::uint64_t rem = a % b;
        if (rem == 0) break;
        run.remainders.push_back(rem);
        a = b;
        b = rem;
    }
    return run;
}

// I(n, r) = (r repeated q_1 times, r_1 repeated q_2 times, ..., 0, 0, ...).
inline TBSymbol euclid_symbol(std::uint64_t n, std::uint64_t r) {
    const EuclidRun run = euclid_run(n, r);
    TBSymbol s;
    for (std::size_t i = 0; i < run.quotients.size(); ++i) {
        const std::uint64_t value = i == 0 ? r : run.remainders[i - 1];
        s.prefix.insert(s.prefix.end(), run.quotients[i], value);
    }
    s.tail_proven = true;
    s.tail_value = 0;
    return s;
}

// Entrywise sum. When depth is given, the result must determine that many
// entries. Unproven operands limit the result to the shortest unproven prefix.
inline TBSymbol symbol_add(const TBSymbol& s, const TBSymbol& t, std::optional<std::size_t> depth = std::nullopt) {
    TBSymbol out;
    out.tail_proven = s.tail_proven && t.tail_proven;
    std::size_t length = 0;
    if (out.tail_proven) {
        length = std::max(s.prefix.size(), t.prefix.size());
    } else {
        length = SIZE_MAX;
        if (!s.tail_proven) length = std::min(length, s.prefix.size());
        if (!t.tail_proven) length = std::min(length, t.prefix.size());
    }
    if (depth && !out.tail_proven && length < *depth)
        throw DomainError("sum is undetermined beyond entry " + std::to_string(length));
    for (std::size_t p = 0; p < length; ++p) out.prefix.push_back(s.at(p) + t.at(p));
    if (out.tail_proven) out.tail_value = s.tail_value + t.tail_value;
    return out;
}

inline bool symbol_prefix_eq(const TBSymbol& s, const TBSymbol& t, std::size_t depth) {
    if (!s.determines(depth) || !t.determines(depth))
        throw DomainError("symbol does not determine " + std::to_string(depth) + " entries");
    for (std::size_t p = 0; p < depth; ++p)
        if (s.at(p) != t.at(p)) return false;
    return true;
}

// The first `length` entries of a symbol, extended with its tail.
inline std::vector<std::size_t> expand(const TBSymbol& s, std::size_t length) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < length; ++p) out.push_back(s.at(p));
    return out;
}

// Non-increasing sequence written as run-length blocks (value, multiplicity)
// followed by a value repeated forever.
struct SymbolSpec {
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t tail = 0;

    friend bool operator==(const SymbolSpec&, const SymbolSpec&) = default;
};

inline void validate(const SymbolSpec& spec) {
    for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
        const auto [value, mult] = spec.blocks[j];
        if (mult == 0) throw DomainError("block multiplicity must be positive");
        if (j > 0 && value >= spec.blocks[j - 1].first) throw DomainError("block values must strictly decrease");
        if (value <= spec.tail) throw DomainError("block values must exceed the tail");
    }
}

inline std::size_t prefix_length(const SymbolSpec& spec) {
    std::size_t total = 0;
    for (const auto& b : spec.blocks) total += b.second;
    return total;
}

inline TBSymbol to_symbol(const SymbolSpec& spec) {
    validate(spec);
    TBSymbol s;
    for (const auto& [value, mult] : spec.blocks) s.prefix.insert(s.prefix.end(), mult, value);
    s.tail_proven = true;
    s.tail_value = spec.tail;
    return s;
}

// One factor of a realization: mu(n, r), or the zero germ on `r` variables
// when n is zero.
struct Factor {
    std::size_t n = 0;
    std::size_t r = 0;
    bool is_zero_germ() const { return n == 0; }
    std::string name() const {
        return is_zero_germ() ? "zero(" + std::to_string(r) + ",1)"
                              : "mu(" + std::to_string(n) + "," + std::to_string(r) + ")";
    }
    friend bool operator==(const Factor&, const Factor&) = default;
};

// Factors mu_{d_j q_j, d_j}, d_j = i_{j-1} - i_j, q_j = l_0 + ... + l_{j-1},
// followed by the zero germ on i_k variables when i_k > 0.
inline std::vector<Factor> realization_factors(const SymbolSpec& spec) {
    validate(spec);
    std::vector<Factor> factors;
    std::size_t q = 0;
    for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
        q += spec.blocks[j].second;
        const std::size_t next = j + 1 < spec.blocks.size() ? spec.blocks[j + 1].first : spec.tail;
        const std::size_t d = spec.blocks[j].first - next;
        factors.push_back({d * q, d});
    }
    if (spec.tail > 0) factors.push_back({0, spec.tail});
    return factors;
}

inline IdealPresentation build(const Factor& f) { return f.is_zero_germ() ? zero_germ(f.r, 1) : mu(f.n, f.r); }

// A germ whose Thom-Boardman symbol is the expansion of spec. The constant
// spec 0* gives the germ on no variables.
inline IdealPresentation realize(const SymbolSpec& spec) {
    const auto factors = realization_factors(spec);
    if (factors.empty()) return zero_germ(0, 1);
    IdealPresentation germ = build(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i) germ = cartesian_product(germ, build(factors[i]));
    return germ;
}

}  // namespace tbsym
