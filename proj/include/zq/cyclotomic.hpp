#pragma once

#include <vector>

#include "zq/numbers.hpp"

namespace zq {

/// Coefficients of the N-th cyclotomic polynomial (little-endian, exact).
std::vector<Int> cyclotomic_polynomial(int n);

/// Element of Q[zeta_N] represented as a polynomial in Q[x]/(x^N - 1) and
/// evaluated at a primitive N-th root of unity. Sums and cyclic-convolution
/// products stay exact; rationality is decided by reducing modulo the N-th
/// cyclotomic polynomial, never by numerics.
class Cyclotomic {
public:
    explicit Cyclotomic(int conductor) : n_(conductor), c_(static_cast<std::size_t>(conductor)) {
        if (conductor < 1) throw std::invalid_argument("Cyclotomic: conductor must be positive");
    }

    static Cyclotomic rational(int conductor, const Rat& v) {
        Cyclotomic r(conductor);
        r.c_[0] = v;
        return r;
    }

    /// zeta_N^k (k taken mod N).
    static Cyclotomic root(int conductor, long long k) {
        Cyclotomic r(conductor);
        long long m = k % conductor;
        if (m < 0) m += conductor;
        r.c_[static_cast<std::size_t>(m)] = 1;
        return r;
    }

    int conductor() const { return n_; }
    const std::vector<Rat>& coords() const { return c_; }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        check(o);
        for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
        return *this;
    }

    Cyclotomic& operator-=(const Cyclotomic& o) {
        check(o);
        for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
        return *this;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        a.check(b);
        Cyclotomic r(a.n_);
        for (int i = 0; i < a.n_; ++i) {
            if (a.c_[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 0; j < a.n_; ++j) {
                if (b.c_[static_cast<std::size_t>(j)] == 0) continue;
                r.c_[static_cast<std::size_t>((i + j) % a.n_)] +=
                    a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
            }
        }
        return r;
    }

    Cyclotomic& operator*=(const Rat& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Cyclotomic operator*(Cyclotomic a, const Rat& s) { return a *= s; }

    /// Multiply by zeta^k in place (cyclic shift).
    void rotate(long long k);

    bool is_zero_representation() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    /// Exact test: is this element a rational number? If so, report it.
    bool rational_value(Rat& out) const;

private:
    void check(const Cyclotomic& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Cyclotomic: conductor mismatch");
    }

    int n_;
    std::vector<Rat> c_;
};

}  // namespace zq
