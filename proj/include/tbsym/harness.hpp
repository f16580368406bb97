#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tbsym/boardman.hpp"
#include "tbsym/germs.hpp"
#include "tbsym/io.hpp"

namespace tbsym {

enum class CellStatus { pass, fail, skipped };

inline const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::pass: return "PASS";
        case CellStatus::fail: return "FAIL";
        case CellStatus::skipped: return "SKIPPED";
    }
    return "?";
}

// One row of a verification table.
struct CellOutcome {
    std::string label;
    CellStatus status = CellStatus::fail;
    std::string expected;
    std::string actual;
    double seconds = 0.0;
    std::string replay;  // ideal files or spec string reproducing a failure
    std::vector<TBSymbol> computed;  // every symbol produced by the cell
    std::vector<std::size_t> computed_vars;
};

// Non-increasing, bounded by the variable count, tail no larger than the prefix.
inline bool well_formed(const TBSymbol& s, std::size_t num_vars) {
    for (std::size_t i = 0; i < s.prefix.size(); ++i) {
        if (s.prefix[i] > num_vars) return false;
        if (i > 0 && s.prefix[i] > s.prefix[i - 1]) return false;
    }
    if (s.tail_proven && !s.prefix.empty() && s.tail_value > s.prefix.back()) return false;
    return true;
}

// Both proven and equal as infinite sequences.
inline bool same_symbol(const TBSymbol& a, const TBSymbol& b) {
    if (!a.tail_proven || !b.tail_proven || a.tail_value != b.tail_value) return false;
    return symbol_prefix_eq(a, b, std::max(a.prefix.size(), b.prefix.size()));
}

namespace detail {

template <class Body>
CellOutcome run_cell(std::string label, std::optional<std::chrono::seconds> timeout, const ChainOptions& base,
                     Body&& body) {
    CellOutcome cell;
    cell.label = std::move(label);
    ChainOptions options = base;
    if (timeout) options.budget = Budget(*timeout);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(cell, options);
    } catch (const TimeoutError&) {
        cell.status = CellStatus::skipped;
        cell.actual = "timeout";
    }
    cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

inline TBSymbol record(CellOutcome& cell, const IdealPresentation& germ, const ChainOptions& options) {
    ChainResult run = tb_symbol(germ, options);
    cell.computed.push_back(run.symbol);
    cell.computed_vars.push_back(germ.num_vars());
    return run.symbol;
}

}  // namespace detail

// mu(n, r) against the Euclidean symbol I(n, r).
inline CellOutcome check_varley(std::size_t n, std::size_t r, const ChainOptions& options,
                                std::optional<std::chrono::seconds> timeout = std::nullopt) {
    return detail::run_cell("mu(" + std::to_string(n) + "," + std::to_string(r) + ")", timeout, options,
                            [&](CellOutcome& cell, const ChainOptions& opts) {
                                const TBSymbol expected = euclid_symbol(n, r);
                                cell.expected = format_symbol(expected);
                                const TBSymbol got = detail::record(cell, mu(n, r), opts);
                                cell.actual = format_symbol(got);
                                cell.status = same_symbol(expected, got) ? CellStatus::pass : CellStatus::fail;
                                if (cell.status == CellStatus::fail) cell.replay = print_ideal_file(mu(n, r));
                            });
}

// Symbol of F1 x F2 against the entrywise sum, to `depth` entries.
inline CellOutcome check_additivity(const std::string& label, const IdealPresentation& left,
                                    const IdealPresentation& right, std::size_t depth, const ChainOptions& options,
                                    std::optional<std::chrono::seconds> timeout = std::nullopt) {
    return detail::run_cell(label, timeout, options, [&](CellOutcome& cell, ChainOptions opts) {
        opts.depth = depth;
        const TBSymbol s1 = detail::record(cell, left, opts);
        const TBSymbol s2 = detail::record(cell, right, opts);
        const TBSymbol product = detail::record(cell, cartesian_product(left, right), opts);
        const TBSymbol sum = symbol_add(s1, s2, depth);
        cell.expected = format_symbol(sum);
        cell.actual = format_symbol(product);
        cell.status = symbol_prefix_eq(sum, product, depth) ? CellStatus::pass : CellStatus::fail;
        if (cell.status == CellStatus::fail)
            cell.replay = "# left\n" + print_ideal_file(left) + "# right\n" + print_ideal_file(right);
    });
}

// tb_symbol(realize(spec)) against the spec's expansion, proven tail required.
inline CellOutcome check_realize(const SymbolSpec& spec, const ChainOptions& options,
                                 std::optional<std::chrono::seconds> timeout = std::nullopt) {
    return detail::run_cell(format_symbol_spec(spec), timeout, options, [&](CellOutcome& cell, ChainOptions opts) {
        const TBSymbol expected = to_symbol(spec);
        cell.expected = format_symbol(expected);
        opts.depth = prefix_length(spec) + 2;
        const TBSymbol got = detail::record(cell, realize(spec), opts);
        cell.actual = format_symbol(got);
        cell.status = same_symbol(expected, got) ? CellStatus::pass : CellStatus::fail;
        if (cell.status == CellStatus::fail) cell.replay = format_symbol_spec(spec);
    });
}

inline IdealPresentation power_product(const IdealPresentation& factor, std::size_t copies) {
    IdealPresentation out = factor;
    for (std::size_t i = 1; i < copies; ++i) out = cartesian_product(out, factor);
    return out;
}

// mu(k*r, r) against the r-fold product of mu(k, 1).
inline CellOutcome check_building_blocks(std::size_t k, std::size_t r, const ChainOptions& options,
                                  std::optional<std::chrono::seconds> timeout = std::nullopt) {
    const std::string label = "k=" + std::to_string(k) + ",r=" + std::to_string(r);
    return detail::run_cell(label, timeout, options, [&](CellOutcome& cell, const ChainOptions& opts) {
        const TBSymbol direct = detail::record(cell, mu(k * r, r), opts);
        const TBSymbol product = detail::record(cell, power_product(mu(k, 1), r), opts);
        cell.expected = format_symbol(direct);
        cell.actual = format_symbol(product);
        cell.status = same_symbol(direct, product) ? CellStatus::pass : CellStatus::fail;
        if (cell.status == CellStatus::fail) cell.replay = label;
    });
}

// Random presentation: 1..max_vars variables, 1..max_gens generators of
// degree <= max_degree with coefficients in [-bound, bound] and no constant
// term. Half of the generators have no linear part so that coranks above one
// occur regularly. Uses only raw engine output, so the stream is identical
// across standard libraries.
inline IdealPresentation random_germ(std::mt19937_64& rng, std::size_t max_vars = 3, std::size_t max_gens = 3,
                                     std::uint32_t max_degree = 2, long bound = 2) {
    const std::size_t m = 1 + rng() % max_vars;
    const std::size_t g = 1 + rng() % max_gens;
    VarList names;
    for (std::size_t i = 0; i < m; ++i) names.push_back(std::string(1, static_cast<char>('x' + i % 3)) +
                                                        (i >= 3 ? std::to_string(i / 3) : ""));
    auto vars = make_vars(std::move(names));

    std::vector<Monomial> monomials;
    std::vector<Monomial::Exponent> e(m, 0);
    std::function<void(std::size_t, std::uint32_t)> gen = [&](std::size_t i, std::uint32_t left) {
        if (i == m) {
            Monomial mono(e);
            if (!mono.is_one()) monomials.push_back(mono);
            return;
        }
        for (std::uint32_t k = 0; k <= left; ++k) {
            e[i] = k;
            gen(i + 1, left - k);
        }
        e[i] = 0;
    };
    gen(0, max_degree);

    std::vector<Polynomial> gens;
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    for (std::size_t j = 0; j < g; ++j) {
        const bool linear = rng() % 2 == 0;
        std::vector<Polynomial::Term> terms;
        for (const auto& mono : monomials) {
            if (mono.degree() == 1 && !linear) continue;
            const long c = static_cast<long>(rng() % span) - bound;
            if (c != 0) terms.emplace_back(mono, Rational(c));
        }
        gens.push_back(Polynomial::from_terms(vars, std::move(terms)));
    }
    return IdealPresentation(vars, std::move(gens));
}

// Every valid spec with block values <= max_value, total prefix length
// <= max_len and tail in `tails`, in a fixed order.
inline std::vector<SymbolSpec> enumerate_specs(std::size_t max_value, std::size_t max_len,
                                               const std::vector<std::size_t>& tails = {0, 1}) {
    std::vector<SymbolSpec> out;
    for (std::size_t tail : tails) {
        SymbolSpec spec;
        spec.tail = tail;
        std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t below, std::size_t used) {
            out.push_back(spec);
            for (std::size_t v = below; v-- > tail + 1;) {
                for (std::size_t mult = 1; used + mult <= max_len; ++mult) {
                    spec.blocks.emplace_back(v, mult);
                    grow(v, used + mult);
                    spec.blocks.pop_back();
                }
            }
        };
        if (tail <= max_value) grow(max_value + 1, 0);
    }
    return out;
}

}  // namespace tbsym
