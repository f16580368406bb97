#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "tbsym/budget.hpp"
#include "tbsym/errors.hpp"
#include "tbsym/polynomial.hpp"
#include "tbsym/rational.hpp"

namespace tbsym {

// Dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T()) : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) throw StructuralError("matrix entry count does not match its shape");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    std::span<const T> entries() const { return entries_; }

    Matrix transposed() const {
        Matrix t(cols_, rows_, T(entries_.empty() ? T() : entries_.front()));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> entries_;
};

using MatrixQ = Matrix<Rational>;

// Polynomial matrix whose entries share one variable list. The list is kept
// even for empty matrices so determinants of 0x0 blocks are well typed.
class MatrixPoly : public Matrix<Polynomial> {
public:
    explicit MatrixPoly(VarListPtr vars) : vars_(std::move(vars)) {}
    MatrixPoly(VarListPtr vars, std::size_t rows, std::size_t cols)
        : Matrix<Polynomial>(rows, cols, Polynomial(vars)), vars_(std::move(vars)) {}
    MatrixPoly(VarListPtr vars, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
        : Matrix<Polynomial>(rows, cols, std::move(entries)), vars_(std::move(vars)) {
        for (const auto& e : this->entries())
            if (!same_vars(e.vars_ptr(), vars_)) throw StructuralError("matrix entries over different variable lists");
    }

    const VarListPtr& vars_ptr() const { return vars_; }

private:
    VarListPtr vars_;
};

inline MatrixQ evaluate(const MatrixPoly& m, std::span<const Rational> point) {
    MatrixQ out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = evaluate(m(r, c), point);
    return out;
}

inline MatrixQ constant_terms(const MatrixPoly& m) {
    MatrixQ out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).constant_term();
    return out;
}

// Exact rank by Gaussian elimination.
inline std::size_t rank(MatrixQ m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(pivot, rank);
        const Rational inv = Rational(1) / m(rank, col);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) continue;
            const Rational f = m(r, col) * inv;
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(rank, c);
        }
        ++rank;
    }
    return rank;
}

inline Rational determinant(MatrixQ m) {
    if (!m.is_square()) throw StructuralError("determinant of a non-square matrix");
    Rational det(1);
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            m.swap_rows(pivot, col);
            det = -det;
        }
        det *= m(col, col);
        const Rational inv = Rational(1) / m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            const Rational f = m(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

namespace detail {

// Laplace expansion along the first listed row, memoized on the
// (row subset, column subset) pair so overlapping minors share work.
class MinorCache {
public:
    MinorCache(const MatrixPoly& m, const Budget& budget) : m_(m), budget_(budget) {}

    Polynomial det(std::span<const std::uint32_t> rows, std::span<const std::uint32_t> cols) {
        if (rows.empty()) return Polynomial::constant(m_.vars_ptr(), Rational(1));
        if (rows.size() == 1) return m_(rows[0], cols[0]);
        Key key{std::vector<std::uint32_t>(rows.begin(), rows.end()),
                std::vector<std::uint32_t>(cols.begin(), cols.end())};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        budget_.check();

        Polynomial sum(m_.vars_ptr());
        std::vector<std::uint32_t> sub_cols;
        sub_cols.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Polynomial& entry = m_(rows[0], cols[j]);
            if (entry.is_zero()) continue;
            sub_cols.clear();
            for (std::size_t c = 0; c < cols.size(); ++c)
                if (c != j) sub_cols.push_back(cols[c]);
            Polynomial minor = det(rows.subspan(1), sub_cols);
            if (minor.is_zero()) continue;
            Polynomial term = entry * minor;
            if (j % 2 == 0)
                sum += term;
            else
                sum -= term;
        }
        memo_.emplace(std::move(key), sum);
        return sum;
    }

private:
    using Key = std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
    const MatrixPoly& m_;
    const Budget& budget_;
    std::map<Key, Polynomial> memo_;
};

// Visits every k-subset of {0..n-1} in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(std::span<const std::uint32_t>)>& visit) {
    if (k > n) return;
    std::vector<std::uint32_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<std::uint32_t>(i);
    while (true) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

inline Polynomial determinant(const MatrixPoly& m, const Budget& budget = Budget::unlimited()) {
    if (!m.is_square()) throw StructuralError("determinant of a non-square matrix");
    std::vector<std::uint32_t> all(m.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint32_t>(i);
    detail::MinorCache cache(m, budget);
    return cache.det(all, all);
}

// Sorts into canonical order and removes duplicates.
inline void canonicalize_set(std::vector<Polynomial>& polys) {
    std::sort(polys.begin(), polys.end(), canonical_less);
    polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
}

// All nonzero k x k minors, sign-canonicalized, deduplicated and sorted.
// Row subsets are split across `threads` workers; the result does not depend
// on the split.
inline std::vector<Polynomial> enumerate_minors(const MatrixPoly& m, std::size_t k, std::size_t threads = 1,
                                                const Budget& budget = Budget::unlimited()) {
    if (k == 0) throw StructuralError("minors of order 0 are undefined");
    if (k > m.rows() || k > m.cols()) return {};

    std::vector<std::vector<std::uint32_t>> row_sets;
    detail::for_each_subset(m.rows(), k, [&](std::span<const std::uint32_t> s) { row_sets.emplace_back(s.begin(), s.end()); });
    std::vector<std::vector<std::uint32_t>> col_sets;
    detail::for_each_subset(m.cols(), k, [&](std::span<const std::uint32_t> s) { col_sets.emplace_back(s.begin(), s.end()); });

    threads = std::max<std::size_t>(1, std::min(threads, row_sets.size()));
    std::vector<std::vector<Polynomial>> partial(threads);
    auto work = [&](std::size_t worker) {
        detail::MinorCache cache(m, budget);
        for (std::size_t i = worker; i < row_sets.size(); i += threads) {
            for (const auto& cols : col_sets) {
                Polynomial d = cache.det(row_sets[i], cols);
                if (!d.is_zero()) partial[worker].push_back(canonical_sign(d));
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                try {
                    work(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<Polynomial> out;
    for (auto& part : partial)
        for (auto& p : part) out.push_back(std::move(p));
    canonicalize_set(out);
    return out;
}

// Reduced row echelon basis of the Q-span of gens, each element scaled to a
// primitive integer polynomial with positive leading coefficient, in
// canonical order. The output depends only on the span, not on the input
// order, and generates the same ideal.
inline std::vector<Polynomial> qlinear_interreduce(std::span<const Polynomial> gens,
                                                   const Budget& budget = Budget::unlimited()) {
    std::map<Monomial, Polynomial> pivots;  // leading monomial -> monic row
    for (const auto& g : gens) {
        budget.check();
        Polynomial r = g;
        while (!r.is_zero()) {
            auto it = pivots.find(r.leading().first);
            if (it == pivots.end()) break;
            r = Polynomial::merge(r, it->second, -r.leading().second);
        }
        if (r.is_zero()) continue;
        r *= Rational(1) / r.leading().second;
        pivots.emplace(r.leading().first, std::move(r));
    }

    // Back substitution in ascending leading-monomial order; each row's tail
    // is cleared of pivot monomials using rows that are already reduced.
    for (auto& [lead, row] : pivots) {
        budget.check();
        std::vector<std::pair<Rational, const Polynomial*>> updates;
        for (std::size_t t = 1; t < row.terms().size(); ++t) {
            const auto& [mono, coef] = row.terms()[t];
            if (auto it = pivots.find(mono); it != pivots.end()) updates.emplace_back(coef, &it->second);
        }
        for (const auto& [coef, other] : updates) row = Polynomial::merge(row, *other, -coef);
    }

    std::vector<Polynomial> out;
    out.reserve(pivots.size());
    for (auto& [lead, row] : pivots) out.push_back(primitive_part(row));
    canonicalize_set(out);
    return out;
}

}  // namespace tbsym
