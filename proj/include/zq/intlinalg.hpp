#pragma once

#include <optional>
#include <vector>

#include "zq/numbers.hpp"

namespace zq {

/// Dense exact matrices, sized for plumbing graphs (a few dozen rows at most).
/// Everything is fraction-free or over canonical rationals; no floating point.
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    IntMat operator*(const IntMat& o) const;
    IntMat transposed() const;
    std::vector<Int> apply(const std::vector<Int>& v) const;

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

using RatMat = std::vector<std::vector<Rat>>;

/// Determinant by fraction-free Bareiss elimination with row pivoting.
Int bareiss_det(IntMat m);

/// Leading principal minors d_1..d_n from the Bareiss recurrence without
/// pivoting. Returns nullopt if a zero pivot is hit before the last step
/// (in that case the matrix cannot be definite, which is the only use).
std::optional<std::vector<Int>> leading_principal_minors(IntMat m);

/// Adjugate via cofactor determinants (each an independent Bareiss run),
/// satisfying adj(M) * M = det(M) * I.
IntMat adjugate(const IntMat& m);

/// Exact inverse over the rationals (Gauss-Jordan). Throws on singular input.
RatMat rat_inverse(const IntMat& m);

/// Solve M x = v exactly over the rationals. Returns nullopt if singular.
std::optional<std::vector<Rat>> solve(const IntMat& m, const std::vector<Rat>& v);

struct LdltFactors {
    // G = L D L^T with L unit lower triangular; quadratic form value
    // x^T G x = sum_i d_i (x_i + sum_{j>i} L_{ji} x_j)^2.
    RatMat lower;
    std::vector<Rat> diag;
};

/// Exact LDL^T of a symmetric rational matrix; nullopt unless it is
/// positive definite (all pivots positive).
std::optional<LdltFactors> ldlt_positive_definite(const RatMat& g);

struct SmithDecomposition {
    // d = u * m * v with u, v unimodular and the diagonal divisibility
    // chain d_1 | d_2 | ... ; diagonal entries normalized nonnegative.
    IntMat u;
    IntMat d;
    IntMat v;
    std::vector<Int> divisors() const {
        std::vector<Int> out;
        int n = std::min(d.rows(), d.cols());
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.push_back(d(i, i));
        return out;
    }
};

/// Smith normal form over the integers, deterministic for fixed input
/// (pivot = least |entry| in the working submatrix, earliest position wins).
SmithDecomposition smith_normal_form(const IntMat& m);

}  // namespace zq
