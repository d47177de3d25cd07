#include "zq/intlinalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace zq {

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat: dimension mismatch");
    IntMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

IntMat IntMat::transposed() const {
    IntMat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::vector<Int> IntMat::apply(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("IntMat::apply: size mismatch");
    std::vector<Int> r(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return r;
}

Int bareiss_det(IntMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: square matrix required");
    int n = m.rows();
    if (n == 0) return 1;  // det of the empty matrix
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = num / prev;  // exact division, Bareiss invariant
            }
        prev = m(k, k);
    }
    return sign == 1 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

std::optional<std::vector<Int>> leading_principal_minors(IntMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("leading_principal_minors: square required");
    int n = m.rows();
    std::vector<Int> minors;
    minors.reserve(static_cast<std::size_t>(n));
    Int prev = 1;
    for (int k = 0; k < n; ++k) {
        minors.push_back(m(k, k));  // after k steps this is det of the (k+1)x(k+1) corner
        if (k == n - 1) break;
        if (m(k, k) == 0) return std::nullopt;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return minors;
}

IntMat adjugate(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate: square required");
    int n = m.rows();
    IntMat adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc) = m(r, c);
                    ++cc;
                }
                ++rr;
            }
            Int cof = bareiss_det(std::move(minor));
            adj(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

namespace {

RatMat to_rat(const IntMat& m) {
    RatMat r(static_cast<std::size_t>(m.rows()), std::vector<Rat>(static_cast<std::size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rat(m(i, j));
    return r;
}

}  // namespace

RatMat rat_inverse(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("rat_inverse: square required");
    int n = m.rows();
    RatMat a = to_rat(m);
    RatMat inv(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
                p = i;
                break;
            }
        if (p < 0) throw std::domain_error("rat_inverse: singular matrix");
        std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(p)]);
        std::swap(inv[static_cast<std::size_t>(k)], inv[static_cast<std::size_t>(p)]);
        Rat piv = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        for (int j = 0; j < n; ++j) {
            a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] /= piv;
            inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            Rat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= f * inv[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
        }
    }
    return inv;
}

std::optional<std::vector<Rat>> solve(const IntMat& m, const std::vector<Rat>& v) {
    if (m.rows() != m.cols() || static_cast<int>(v.size()) != m.rows())
        throw std::invalid_argument("solve: shape mismatch");
    int n = m.rows();
    RatMat a = to_rat(m);
    std::vector<Rat> b = v;
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
                p = i;
                break;
            }
        if (p < 0) return std::nullopt;
        std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(p)]);
        std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
        for (int i = k + 1; i < n; ++i) {
            Rat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
            if (f == 0) continue;
            for (int j = k; j < n; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
    }
    std::vector<Rat> x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        Rat acc = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) acc -= a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    return x;
}

std::optional<LdltFactors> ldlt_positive_definite(const RatMat& g) {
    std::size_t n = g.size();
    for (const auto& row : g)
        if (row.size() != n) throw std::invalid_argument("ldlt: square required");
    LdltFactors f;
    f.lower.assign(n, std::vector<Rat>(n));
    f.diag.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) f.lower[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
        Rat d = g[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= f.diag[k] * f.lower[j][k] * f.lower[j][k];
        if (d <= 0) return std::nullopt;
        f.diag[j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rat v = g[i][j];
            for (std::size_t k = 0; k < j; ++k) v -= f.diag[k] * f.lower[i][k] * f.lower[j][k];
            f.lower[i][j] = v / d;
        }
    }
    return f;
}

namespace {

struct SnfState {
    IntMat a, u, v;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    }
    void add_row(int dst, int src, const Int& f) {  // row dst += f * row src
        for (int c = 0; c < a.cols(); ++c) a(dst, c) += f * a(src, c);
        for (int c = 0; c < u.cols(); ++c) u(dst, c) += f * u(src, c);
    }
    void add_col(int dst, int src, const Int& f) {
        for (int r = 0; r < a.rows(); ++r) a(r, dst) += f * a(r, src);
        for (int r = 0; r < v.rows(); ++r) v(r, dst) += f * v(r, src);
    }
    void negate_row(int i) {
        for (int c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (int c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& m) {
    int rows = m.rows(), cols = m.cols();
    SnfState st{m, IntMat::identity(rows), IntMat::identity(cols)};
    int n = std::min(rows, cols);
    for (int t = 0; t < n; ++t) {
        // choose pivot: least nonzero |entry| in the trailing block
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (st.a(i, j) == 0) continue;
                Int mag = abs(st.a(i, j));
                if (pi < 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing block is zero
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < rows; ++i) {
                if (st.a(i, t) == 0) continue;
                Int q = -floor_div(st.a(i, t), st.a(t, t));
                st.add_row(i, t, q);
                if (st.a(i, t) != 0) {
                    st.swap_rows(t, i);  // remainder is smaller, keep reducing
                    dirty = true;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (st.a(t, j) == 0) continue;
                Int q = -floor_div(st.a(t, j), st.a(t, t));
                st.add_col(j, t, q);
                if (st.a(t, j) != 0) {
                    st.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }
        if (st.a(t, t) < 0) st.negate_row(t);
        // enforce divisibility d_t | every later entry
        for (int i = t + 1; i < rows; ++i)
            for (int j = t + 1; j < cols; ++j) {
                if (st.a(i, j) % st.a(t, t) != 0) {
                    st.add_row(t, i, 1);
                    // restart the clearing loop for this pivot
                    for (;;) {
                        bool dirty = false;
                        for (int jj = t + 1; jj < cols; ++jj) {
                            if (st.a(t, jj) == 0) continue;
                            Int q = -floor_div(st.a(t, jj), st.a(t, t));
                            st.add_col(jj, t, q);
                            if (st.a(t, jj) != 0) {
                                st.swap_cols(t, jj);
                                dirty = true;
                            }
                        }
                        for (int ii = t + 1; ii < rows; ++ii) {
                            if (st.a(ii, t) == 0) continue;
                            Int q = -floor_div(st.a(ii, t), st.a(t, t));
                            st.add_row(ii, t, q);
                            if (st.a(ii, t) != 0) {
                                st.swap_rows(t, ii);
                                dirty = true;
                            }
                        }
                        if (!dirty) break;
                    }
                    if (st.a(t, t) < 0) st.negate_row(t);
                    i = t;  // re-scan the whole block
                    break;
                }
            }
    }
    return SmithDecomposition{st.u, st.a, st.v};
}

}  // namespace zq
