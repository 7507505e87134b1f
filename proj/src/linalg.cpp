#include "superp1/linalg.hpp"

#include <algorithm>

#include "superp1/errors.hpp"

namespace superp1 {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw PreconditionError("matrix product dimension mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Rational& b = o.at(k, j);
                if (!b.is_zero()) r.at(i, j) += a * b;
            }
        }
    return r;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw PreconditionError("matrix apply dimension mismatch");
    std::vector<Rational> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
}

RrefResult rref(const RationalMatrix& m) {
    RrefResult res;
    res.reduced = m;
    RationalMatrix& a = res.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        // pick the best nonzero pivot at or below `row`
        std::size_t best = a.rows();
        std::size_t best_size = 0;
        for (std::size_t i = row; i < a.rows(); ++i) {
            if (a.at(i, col).is_zero()) continue;
            std::size_t sz = a.at(i, col).bit_size();
            if (best == a.rows() || sz < best_size) {
                best = i;
                best_size = sz;
            }
        }
        if (best == a.rows()) continue;
        if (best != row) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(row, j), a.at(best, j));
            res.ops.push_back({RowOp::Swap, row, best, Rational()});
        }
        if (!a.at(row, col).is_one()) {
            Rational inv = a.at(row, col).inverse();
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!a.at(row, j).is_zero()) a.at(row, j) *= inv;
            res.ops.push_back({RowOp::Scale, row, row, inv});
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col).is_zero()) continue;
            Rational factor = -a.at(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!a.at(row, j).is_zero()) a.at(i, j) += factor * a.at(row, j);
            res.ops.push_back({RowOp::AddMul, i, row, factor});
        }
        res.pivot_cols.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

RationalMatrix undo_ops(RationalMatrix m, const std::vector<RowOp>& ops) {
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        switch (it->kind) {
            case RowOp::Swap:
                for (std::size_t j = 0; j < m.cols(); ++j)
                    std::swap(m.at(it->i, j), m.at(it->j, j));
                break;
            case RowOp::Scale: {
                Rational inv = it->c.inverse();
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (!m.at(it->i, j).is_zero()) m.at(it->i, j) *= inv;
                break;
            }
            case RowOp::AddMul: {
                Rational factor = -it->c;
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (!m.at(it->j, j).is_zero()) m.at(it->i, j) += factor * m.at(it->j, j);
                break;
            }
        }
    }
    return m;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(m.cols());
        v[free_col] = Rational(1);
        for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
            v[r.pivot_cols[p]] = -r.reduced.at(p, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& m,
                                           const std::vector<Rational>& b) {
    if (b.size() != m.rows()) throw PreconditionError("solve dimension mismatch");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    for (std::size_t c : r.pivot_cols)
        if (c == m.cols()) return std::nullopt;  // a row [0 ... 0 | 1]
    std::vector<Rational> x(m.cols());
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
        x[r.pivot_cols[p]] = r.reduced.at(p, m.cols());
    return x;
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("inverse of non-square matrix");
    std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rational(1);
    }
    RrefResult r = rref(aug);
    if (r.rank != n || r.pivot_cols[n - 1] != n - 1)
        throw PreconditionError("inverse of singular matrix");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.reduced.at(i, n + j);
    return inv;
}

std::optional<std::vector<Rational>> quotient_coordinates(
    const std::vector<std::vector<Rational>>& vecs,
    const std::vector<std::vector<Rational>>& subspace,
    const std::vector<Rational>& target) {
    std::size_t dim = target.size();
    for (const auto& v : vecs)
        if (v.size() != dim) throw PreconditionError("quotient_coordinates dimension mismatch");
    for (const auto& v : subspace)
        if (v.size() != dim) throw PreconditionError("quotient_coordinates dimension mismatch");

    // Columns [subspace | vecs]; a particular solution with free variables at
    // zero spends the subspace columns first, so the reported coordinates are
    // the canonical representative modulo span(subspace).
    RationalMatrix m(dim, subspace.size() + vecs.size());
    for (std::size_t j = 0; j < subspace.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = subspace[j][i];
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, subspace.size() + j) = vecs[j][i];

    auto sol = solve(m, target);
    if (!sol) return std::nullopt;
    return std::vector<Rational>(sol->begin() + static_cast<long>(subspace.size()), sol->end());
}

}  // namespace superp1
