#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tbsym/budget.hpp"
#include "tbsym/errors.hpp"
#include "tbsym/matrix.hpp"
#include "tbsym/polynomial.hpp"

namespace tbsym {

// Coordinates x_1..x_m plus a finite generator list for an ideal of germs at
// the origin. Generators keep the order they were given in; the extension
// chain canonicalizes as it goes.
class IdealPresentation {
public:
    IdealPresentation() : vars_(make_vars(VarList{})) {}
    explicit IdealPresentation(VarListPtr vars, std::vector<Polynomial> generators = {})
        : vars_(std::move(vars)), generators_(std::move(generators)) {
        std::set<std::string> seen;
        for (const auto& v : *vars_)
            if (!seen.insert(v).second) throw StructuralError("duplicate variable name: " + v);
        for (const auto& g : generators_)
            if (!same_vars(g.vars_ptr(), vars_)) throw StructuralError("generator over a different variable list");
    }

    const VarListPtr& vars_ptr() const { return vars_; }
    const VarList& vars() const { return *vars_; }
    std::size_t num_vars() const { return vars_->size(); }
    const std::vector<Polynomial>& generators() const { return generators_; }

    friend bool operator==(const IdealPresentation& a, const IdealPresentation& b) {
        return *a.vars_ == *b.vars_ && a.generators_ == b.generators_;
    }

private:
    VarListPtr vars_;
    std::vector<Polynomial> generators_;
};

// One link J_p -> J_{p+1} of the extension chain.
struct ExtensionStep {
    std::size_t corank = 0;
    std::optional<std::size_t> minor_order;  // m - corank + 1, absent when no minors of that order exist
    std::size_t generators_before = 0;
    std::size_t generators_after = 0;
    std::size_t new_generators = 0;       // growth of the Q-span of the generators
    std::size_t raw_candidates = 0;       // minors (or Schur entries) produced before hygiene
    std::size_t variables_eliminated = 0; // coordinates split off before this step
    std::size_t working_vars = 0;         // variables of the presentation actually extended

    friend bool operator==(const ExtensionStep&, const ExtensionStep&) = default;
};

// Computed Thom-Boardman symbol: a non-increasing prefix and, when the chain
// was shown to be stationary, the value repeated forever after.
struct TBSymbol {
    std::vector<std::size_t> prefix;
    bool tail_proven = false;
    std::size_t tail_value = 0;

    // Number of leading entries the symbol determines (unbounded if proven).
    bool determines(std::size_t depth) const { return tail_proven || depth <= prefix.size(); }

    // Entry p (0-based). Beyond the prefix the proven tail is used.
    std::size_t at(std::size_t p) const {
        if (p < prefix.size()) return prefix[p];
        if (!tail_proven) throw DomainError("symbol entry " + std::to_string(p + 1) + " is not determined");
        return tail_value;
    }

    friend bool operator==(const TBSymbol&, const TBSymbol&) = default;
};

enum class ExtensionMethod {
    // Local Gaussian elimination on unit pivots of the Jacobian; the critical
    // order is always rank + 1, so the extension reduces to adjoining the
    // entries of the remaining block.
    pivot,
    // Literal enumeration of every minor of the critical order.
    minors,
};

struct ChainOptions {
    std::optional<std::size_t> depth;  // default: m + 2
    bool interreduce = true;
    bool eliminate = true;  // split off coordinates that occur linearly in a generator
    ExtensionMethod method = ExtensionMethod::pivot;
    std::size_t threads = 1;
    Budget budget{};
    bool keep_presentations = false;
};

inline MatrixPoly jacobian(const IdealPresentation& ideal) {
    const auto& gens = ideal.generators();
    MatrixPoly jac(ideal.vars_ptr(), gens.size(), ideal.num_vars());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < ideal.num_vars(); ++j) jac(i, j) = partial_derivative(gens[i], j);
    return jac;
}

inline bool is_unit_ideal_at_origin(const IdealPresentation& ideal) {
    return std::any_of(ideal.generators().begin(), ideal.generators().end(),
                       [](const Polynomial& g) { return !g.constant_term().is_zero(); });
}

// The Jacobian evaluated at the origin: the coefficients of the linear terms.
inline MatrixQ jacobian_at_origin(const IdealPresentation& ideal) {
    const auto& gens = ideal.generators();
    const std::size_t m = ideal.num_vars();
    MatrixQ out(gens.size(), m);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (const auto& [mono, coef] : gens[i].terms()) {
            if (mono.degree() != 1) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (mono[j] == 1) out(i, j) = coef;
        }
    return out;
}

inline std::size_t corank_at_origin(const IdealPresentation& ideal) {
    if (is_unit_ideal_at_origin(ideal)) return 0;
    return ideal.num_vars() - rank(jacobian_at_origin(ideal));
}

namespace detail {

inline std::vector<Polynomial> drop_zeros_signed(std::span<const Polynomial> polys) {
    std::vector<Polynomial> out;
    for (const auto& p : polys)
        if (!p.is_zero()) out.push_back(canonical_sign(p));
    return out;
}

// Generator list hygiene: Q-linear interreduction, or (when disabled) just
// zero removal, sign canonicalization and deduplication.
inline std::vector<Polynomial> tidy(std::span<const Polynomial> gens, bool interreduce, const Budget& budget) {
    if (interreduce) return qlinear_interreduce(gens, budget);
    auto out = drop_zeros_signed(gens);
    canonicalize_set(out);
    return out;
}

// Entries left after eliminating every unit pivot of jac. Row operations
// r <- p*r - a*pivot_row with p a unit are invertible over the local ring,
// so the ideal of (rank+1)-minors of jac equals the ideal of these entries.
inline std::pair<std::size_t, std::vector<Polynomial>> schur_entries(const MatrixPoly& jac, const Budget& budget) {
    std::vector<std::size_t> rows(jac.rows());
    std::vector<std::size_t> cols(jac.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
    MatrixPoly m = jac;
    std::size_t pivots = 0;

    while (true) {
        budget.check();
        // Prefer constant pivots, then the sparsest unit entry.
        std::optional<std::pair<std::size_t, std::size_t>> best;
        std::pair<bool, std::size_t> best_cost{false, 0};
        for (std::size_t ri = 0; ri < rows.size(); ++ri)
            for (std::size_t ci = 0; ci < cols.size(); ++ci) {
                const auto& e = m(rows[ri], cols[ci]);
                if (e.constant_term().is_zero()) continue;
                std::pair<bool, std::size_t> cost{!e.is_constant(), e.size()};
                if (!best || cost < best_cost) {
                    best = {ri, ci};
                    best_cost = cost;
                }
            }
        if (!best) break;

        const std::size_t pr = rows[best->first];
        const std::size_t pc = cols[best->second];
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best->first));
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best->second));
        const Polynomial pivot = m(pr, pc);
        const bool scalar = pivot.is_constant();
        const Rational inv = scalar ? Rational(1) / pivot.constant_term() : Rational(0);

        for (auto r : rows) {
            const Polynomial factor = m(r, pc);
            if (factor.is_zero()) continue;
            for (auto c : cols) {
                budget.check();
                if (scalar)
                    m(r, c) -= factor * m(pr, c) * inv;
                else
                    m(r, c) = pivot * m(r, c) - factor * m(pr, c);
            }
        }
        ++pivots;
    }

    std::vector<Polynomial> entries;
    for (auto r : rows)
        for (auto c : cols)
            if (!m(r, c).is_zero()) entries.push_back(primitive_part(m(r, c)));
    return {pivots, std::move(entries)};
}

}  // namespace detail

struct CriticalExtension {
    std::size_t corank = 0;
    IdealPresentation extended;
    ExtensionStep step;
};

// The critical extension Delta^i B = Delta_{m-i+1} B with i = corank.
inline CriticalExtension critical_extension(const IdealPresentation& ideal, const ChainOptions& options = {}) {
    const std::size_t m = ideal.num_vars();
    const std::size_t n = ideal.generators().size();
    CriticalExtension out;
    out.corank = corank_at_origin(ideal);
    out.extended = ideal;
    out.step.corank = out.corank;
    out.step.generators_before = n;
    out.step.generators_after = n;
    out.step.working_vars = m;

    const std::size_t order = m - out.corank + 1;
    if (out.corank == 0 || order > n || order > m) return out;
    out.step.minor_order = order;

    std::vector<Polynomial> candidates;
    if (options.method == ExtensionMethod::minors) {
        candidates = enumerate_minors(jacobian(ideal), order, options.threads, options.budget);
    } else {
        auto [pivots, entries] = detail::schur_entries(jacobian(ideal), options.budget);
        if (pivots != order - 1) throw std::logic_error("pivot count disagrees with the rank at the origin");
        for (const auto& e : entries)
            if (!e.constant_term().is_zero()) throw std::logic_error("critical extension produced a unit");
        candidates = std::move(entries);
    }
    out.step.raw_candidates = candidates.size();

    std::vector<Polynomial> all = ideal.generators();
    all.insert(all.end(), candidates.begin(), candidates.end());

    if (options.interreduce) {
        const std::size_t before_dim = qlinear_interreduce(ideal.generators(), options.budget).size();
        auto reduced = qlinear_interreduce(all, options.budget);
        out.step.new_generators = reduced.size() - before_dim;
        out.extended = IdealPresentation(ideal.vars_ptr(), std::move(reduced));
    } else {
        auto before = detail::tidy(ideal.generators(), false, options.budget);
        auto after = detail::tidy(all, false, options.budget);
        out.step.new_generators = after.size() - before.size();
        out.extended = IdealPresentation(ideal.vars_ptr(), std::move(after));
    }
    out.step.generators_after = out.extended.generators().size();
    return out;
}

// Repeatedly finds a generator c*x + h with h free of x and c a nonzero
// rational, and uses y = x + h/c as a new coordinate: the ideal becomes
// (y) + B' with B' free of y. Jacobian extensions satisfy
// Delta_k((y) + B') = (y) + Delta_{k-1} B', so coranks along the chain are
// those of B' on the remaining m - 1 variables. Returns B' and the number of
// variables removed. Must not be called on a unit ideal.
inline std::pair<IdealPresentation, std::size_t> reduce_coordinates(const IdealPresentation& ideal,
                                                                    bool interreduce = true,
                                                                    const Budget& budget = Budget::unlimited()) {
    if (is_unit_ideal_at_origin(ideal)) throw DomainError("coordinate reduction of a unit ideal");
    VarListPtr vars = ideal.vars_ptr();
    std::vector<Polynomial> gens = detail::drop_zeros_signed(ideal.generators());
    std::size_t eliminated = 0;

    while (true) {
        budget.check();
        struct Candidate {
            std::size_t gen, var, terms, uses;
        };
        std::optional<Candidate> best;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const auto& terms = gens[g].terms();
            for (std::size_t j = 0; j < vars->size(); ++j) {
                std::size_t linear = 0;
                bool elsewhere = false;
                for (const auto& [mono, coef] : terms) {
                    if (mono[j] == 0) continue;
                    if (mono.degree() == 1)
                        ++linear;
                    else
                        elsewhere = true;
                }
                if (linear != 1 || elsewhere) continue;
                std::size_t uses = 0;
                for (std::size_t o = 0; o < gens.size(); ++o)
                    if (o != g)
                        for (const auto& t : gens[o].terms())
                            if (t.first[j] != 0) {
                                ++uses;
                                break;
                            }
                Candidate c{g, j, terms.size(), uses};
                if (!best || std::tie(c.terms, c.uses) < std::tie(best->terms, best->uses)) best = c;
            }
        }
        if (!best) break;

        const Polynomial& g = gens[best->gen];
        const Monomial x = Monomial::variable(vars->size(), best->var);
        const Rational c = g.coefficient(x);
        const Polynomial value = (g - Polynomial::from_terms(vars, {{x, c}})) * (Rational(-1) / c);

        VarList names = *vars;
        names.erase(names.begin() + static_cast<std::ptrdiff_t>(best->var));
        VarListPtr reduced_vars = make_vars(std::move(names));
        std::vector<Polynomial> next;
        for (std::size_t o = 0; o < gens.size(); ++o) {
            if (o == best->gen) continue;
            Polynomial s = substitute(gens[o], best->var, value);
            if (!s.is_zero()) next.push_back(drop_variable(s, reduced_vars, best->var));
        }
        gens = detail::tidy(next, interreduce, budget);
        vars = reduced_vars;
        ++eliminated;
    }
    return {IdealPresentation(vars, std::move(gens)), eliminated};
}

struct ChainResult {
    TBSymbol symbol;
    std::vector<ExtensionStep> steps;
    std::vector<IdealPresentation> presentations;  // J, then each extension (when requested)
    std::size_t num_vars = 0;
    std::size_t depth = 0;
};

// Coranks along J, Delta^{i_1} J, Delta^{i_2} Delta^{i_1} J, ... for up to
// `depth` steps. The tail is proven when corank 0 is reached (no minors of
// higher order exist) or when a step adds nothing to the Q-span of the
// generators (the ideal is fixed, so every later corank repeats).
inline ChainResult tb_symbol(const IdealPresentation& ideal, const ChainOptions& options = {}) {
    ChainResult out;
    out.num_vars = ideal.num_vars();
    out.depth = options.depth.value_or(ideal.num_vars() + 2);
    if (out.depth == 0) throw StructuralError("depth must be at least 1");

    IdealPresentation current = ideal;
    if (options.keep_presentations) out.presentations.push_back(current);

    for (std::size_t p = 0; p < out.depth; ++p) {
        options.budget.check();
        std::size_t eliminated = 0;
        if (options.eliminate && !is_unit_ideal_at_origin(current)) {
            auto reduced = reduce_coordinates(current, options.interreduce, options.budget);
            current = std::move(reduced.first);
            eliminated = reduced.second;
        }
        CriticalExtension ext = critical_extension(current, options);
        ExtensionStep step = ext.step;
        step.variables_eliminated = eliminated;
        if (step.minor_order) step.minor_order = out.num_vars - step.corank + 1;

        auto& prefix = out.symbol.prefix;
        if (step.corank > out.num_vars || (!prefix.empty() && step.corank > prefix.back()))
            throw std::logic_error("extension chain violated monotonicity or bounds");
        prefix.push_back(step.corank);
        out.steps.push_back(step);

        if (step.corank == 0 || step.new_generators == 0) {
            out.symbol.tail_proven = true;
            out.symbol.tail_value = step.corank;
            break;
        }
        current = std::move(ext.extended);
        if (options.keep_presentations) out.presentations.push_back(current);
    }
    return out;
}

}  // namespace tbsym
