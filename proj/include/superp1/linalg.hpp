#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "superp1/rational.hpp"

namespace superp1 {

// Dense matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RationalMatrix& a, const RationalMatrix& b) {
        return !(a == b);
    }

    RationalMatrix operator*(const RationalMatrix& o) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

// Elementary row operation, recorded so a reduction can be replayed or undone.
struct RowOp {
    enum Kind { Swap, Scale, AddMul } kind;
    std::size_t i, j;  // Swap(i,j); Scale(i); AddMul: row i += c * row j
    Rational c;
};

struct RrefResult {
    RationalMatrix reduced;
    std::vector<RowOp> ops;  // applied in order, they carry the input to `reduced`
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

// Reduced row echelon form by exact Gaussian elimination.  Pivot rows are
// chosen by smallest combined numerator/denominator bit size.
RrefResult rref(const RationalMatrix& m);

// Undoes the recorded operations; rref(m) satisfies
// undo_ops(rref(m).reduced, rref(m).ops) == m bit for bit.
RationalMatrix undo_ops(RationalMatrix m, const std::vector<RowOp>& ops);

// Basis of the right kernel {v : m v = 0}.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

// A particular solution of m x = b with all free variables set to zero,
// or nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m,
                                           const std::vector<Rational>& b);

RationalMatrix inverse(const RationalMatrix& m);  // precondition: square, invertible

// Coordinates of `target` with respect to the images of `vecs` in the
// quotient by span(subspace); nullopt when target lies outside the combined
// span.  All columns must have equal length.
std::optional<std::vector<Rational>> quotient_coordinates(
    const std::vector<std::vector<Rational>>& vecs,
    const std::vector<std::vector<Rational>>& subspace,
    const std::vector<Rational>& target);

}  // namespace superp1
