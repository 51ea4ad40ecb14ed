#pragma once

// Exact sparse elimination over F_p and Q.
//
// Pivoting is deterministic: rows are inserted in the given order and each
// row is reduced by its first nonzero column until it either vanishes or opens
// a new pivot at that column.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tatesplit/field.hpp"

namespace tatesplit {

template <class V>
using SparseRow = std::vector<std::pair<std::uint32_t, V>>;

/// row <- row - c * pivot, both sorted by column.
template <class F>
void axpy_row(SparseRow<typename F::value_type>& row, const typename F::value_type& c,
              const SparseRow<typename F::value_type>& pivot, const F& f) {
    SparseRow<typename F::value_type> out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, k = 0;
    while (i < row.size() || k < pivot.size()) {
        if (k == pivot.size() || (i < row.size() && row[i].first < pivot[k].first)) {
            out.push_back(std::move(row[i++]));
        } else if (i == row.size() || pivot[k].first < row[i].first) {
            out.emplace_back(pivot[k].first, f.neg(f.mul(c, pivot[k].second)));
            ++k;
        } else {
            auto v = f.sub(row[i].second, f.mul(c, pivot[k].second));
            if (!f.is_zero(v)) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++k;
        }
    }
    row = std::move(out);
}

/// Row echelon form built one row at a time; pivot rows have leading entry 1.
template <class F>
class IncrementalEchelon {
public:
    using V = typename F::value_type;

    IncrementalEchelon(std::size_t ncols, F f) : f_(std::move(f)), pivot_of_col_(ncols, -1) {}

    /// Reduces `row` against the pivots; returns true if it was independent.
    bool insert(SparseRow<V> row) {
        reduce(row);
        if (row.empty()) return false;
        const V lead_inv = f_.inv(row.front().second);
        for (auto& e : row) e.second = f_.mul(e.second, lead_inv);
        pivot_of_col_[row.front().first] = static_cast<long>(pivots_.size());
        pivots_.push_back(std::move(row));
        return true;
    }

    /// Reduces leading entries only; the result is zero iff row is in the span.
    void reduce(SparseRow<V>& row) const {
        while (!row.empty()) {
            const long pi = pivot_of_col_[row.front().first];
            if (pi < 0) return;
            const V c = row.front().second;
            axpy_row(row, c, pivots_[static_cast<std::size_t>(pi)], f_);
        }
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    F f_;
    std::vector<long> pivot_of_col_;
    std::vector<SparseRow<V>> pivots_;
};

/// Fraction-free echelon over Z: row <- lead(p) * row - lead(row) * p, then content removed.
class FractionFreeEchelon {
public:
    explicit FractionFreeEchelon(std::size_t ncols) : pivot_of_col_(ncols, -1) {}

    bool insert(SparseRow<mpz_class> row);
    std::size_t rank() const { return pivots_.size(); }

private:
    std::vector<long> pivot_of_col_;
    std::vector<SparseRow<mpz_class>> pivots_;
};

/// Scales a rational row to a primitive integer row.
SparseRow<mpz_class> to_integer_row(const SparseRow<mpq_class>& row);

inline std::size_t sparse_rank(std::vector<SparseRow<std::uint64_t>> rows, std::size_t ncols, const ModP& f) {
    IncrementalEchelon<ModP> ech(ncols, f);
    for (auto& r : rows) ech.insert(std::move(r));
    return ech.rank();
}

inline std::size_t sparse_rank(std::vector<SparseRow<mpq_class>> rows, std::size_t ncols, const Rat&) {
    FractionFreeEchelon ech(ncols);
    for (auto& r : rows) ech.insert(to_integer_row(r));
    return ech.rank();
}

/// Basis of {x : A x = 0} for a dense matrix A (rows x ncols) via reduced row echelon form.
/// Each basis vector has a 1 at its free column and zeros at the other free columns.
template <class F>
std::vector<std::vector<typename F::value_type>> kernel_basis(std::vector<std::vector<typename F::value_type>> a,
                                                               std::size_t ncols, const F& f) {
    using V = typename F::value_type;
    std::vector<long> pivot_row_of_col(ncols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && f.is_zero(a[piv][c])) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        const V inv = f.inv(a[r][c]);
        for (auto& v : a[r]) v = f.mul(v, inv);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || f.is_zero(a[i][c])) continue;
            const V factor = a[i][c];
            for (std::size_t k = 0; k < ncols; ++k) a[i][k] = f.sub(a[i][k], f.mul(factor, a[r][k]));
        }
        pivot_row_of_col[c] = static_cast<long>(r);
        ++r;
    }
    std::vector<std::vector<V>> basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (pivot_row_of_col[free] >= 0) continue;
        std::vector<V> v(ncols, f.zero());
        v[free] = f.one();
        for (std::size_t c = 0; c < ncols; ++c) {
            const long pr = pivot_row_of_col[c];
            if (pr >= 0) v[c] = f.neg(a[static_cast<std::size_t>(pr)][free]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
std::size_t dense_rank(const std::vector<std::vector<typename F::value_type>>& a, std::size_t ncols, const F& f) {
    return ncols - kernel_basis(a, ncols, f).size();
}

}  // namespace tatesplit
