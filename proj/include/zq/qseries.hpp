#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zq/numbers.hpp"

namespace zq {

/// Truncated q-series with exact rational coefficients and rational exponents.
///
/// All exponents are stored as num/denom() on a common positive denominator,
/// kept minimal (the lcd of the stored exponents). Terms with exponent above
/// order() are *unknown*, not zero; a series without an order is complete
/// (a finite exact Laurent polynomial in fractional powers of q).
///
/// Values are immutable after construction apart from the named mutating
/// helpers, every operation returns a fresh series, and nothing here touches
/// floating point, so instances can be shared freely across threads.
class QSeries {
public:
    using TermMap = std::map<long long, Rat>;  // exponent numerator -> coefficient

    QSeries() : denom_(1) {}

    /// Zero series known through the given order.
    static QSeries zero(const Rat& order) {
        QSeries s;
        s.order_ = order;
        return s;
    }

    /// Exact zero (complete series, no truncation).
    static QSeries exact_zero() { return QSeries(); }

    static QSeries monomial(const Rat& coeff, const Rat& exponent,
                            std::optional<Rat> order = std::nullopt) {
        QSeries s;
        s.order_ = std::move(order);
        s.add_term(exponent, coeff);
        s.normalize();
        return s;
    }

    static QSeries one() { return monomial(1, 0); }

    bool is_exact() const { return !order_.has_value(); }
    const std::optional<Rat>& order() const { return order_; }
    long long denom() const { return denom_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rat exponent_of(long long num) const { return make_rat(num, denom_); }

    std::optional<Rat> min_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return exponent_of(terms_.begin()->first);
    }
    std::optional<Rat> max_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return exponent_of(terms_.rbegin()->first);
    }

    /// Coefficient at a given exponent. Throws if the exponent is beyond the
    /// truncation bound (the value is unknown there, not zero).
    Rat coeff(const Rat& exponent) const {
        if (order_ && exponent > *order_)
            throw std::out_of_range("QSeries::coeff: exponent beyond truncation order");
        Rat scaled = exponent * Rat(make_int(denom_));
        if (scaled.get_den() != 1) return Rat(0);
        if (!fits_ll(scaled.get_num())) return Rat(0);
        auto it = terms_.find(to_ll(scaled.get_num()));
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /// Accumulate coeff*q^exponent. Terms beyond the order are dropped (they
    /// are unknown anyway). Caller must normalize() when done inserting.
    void add_term(const Rat& exponent, const Rat& coeff) {
        if (coeff == 0) return;
        if (order_ && exponent > *order_) return;
        long long num = align_exponent(exponent);
        auto [it, fresh] = terms_.try_emplace(num, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Restore the normalized form: no zero coefficients, denom() is the lcd
    /// of the stored exponents. Idempotent.
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
        if (terms_.empty()) {
            denom_ = 1;
            return;
        }
        long long g = denom_;
        for (const auto& [num, c] : terms_) {
            g = static_cast<long long>(to_ll(gcd(make_int(g), make_int(num))));
            if (g == 1) return;
        }
        if (g <= 1) return;
        TermMap reduced;
        for (auto& [num, c] : terms_) reduced.emplace(num / g, std::move(c));
        terms_ = std::move(reduced);
        denom_ /= g;
    }

    /// Termwise sum; result order is the minimum of the operand orders.
    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        QSeries r;
        r.order_ = min_order(a.order_, b.order_);
        for (const auto& [num, c] : a.terms_) r.add_term(a.exponent_of(num), c);
        for (const auto& [num, c] : b.terms_) r.add_term(b.exponent_of(num), c);
        r.normalize();
        return r;
    }

    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + b.negated(); }

    QSeries negated() const {
        QSeries r(*this);
        for (auto& [num, c] : r.terms_) c = -c;
        return r;
    }

    QSeries scaled(const Rat& factor) const {
        QSeries r(*this);
        if (factor == 0) {
            r.terms_.clear();
            r.denom_ = 1;
            return r;
        }
        for (auto& [num, c] : r.terms_) c *= factor;
        return r;
    }

    /// q -> q^k substitution for positive rational k; exponents and order scale by k.
    QSeries scale_exponents(const Rat& k) const {
        if (k <= 0) throw std::invalid_argument("scale_exponents: factor must be positive");
        QSeries r;
        if (order_) r.order_ = *order_ * k;
        for (const auto& [num, c] : terms_) r.add_term(exponent_of(num) * k, c);
        r.normalize();
        return r;
    }

    /// Multiply by the monomial q^delta.
    QSeries shifted(const Rat& delta) const {
        QSeries r;
        if (order_) r.order_ = *order_ + delta;
        for (const auto& [num, c] : terms_) r.add_term(exponent_of(num) + delta, c);
        r.normalize();
        return r;
    }

    /// Cauchy product. The result is certified through the largest order the
    /// unknown tails provably cannot reach: min over the truncated operand of
    /// its order plus the other operand's least possible exponent.
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        QSeries r;
        r.order_ = product_order(a, b);
        for (const auto& [na, ca] : a.terms_) {
            Rat ea = a.exponent_of(na);
            for (const auto& [nb, cb] : b.terms_) r.add_term(ea + b.exponent_of(nb), ca * cb);
        }
        r.normalize();
        return r;
    }

    /// Forget everything above new_order.
    QSeries truncated(const Rat& new_order) const {
        QSeries r;
        r.order_ = order_ ? std::min(*order_, new_order) : new_order;
        for (const auto& [num, c] : terms_) r.add_term(exponent_of(num), c);
        r.normalize();
        return r;
    }

    /// Equality through the minimum of the two orders (exact comparison of
    /// every coefficient in the shared certified band).
    friend bool agree(const QSeries& a, const QSeries& b) {
        std::optional<Rat> bound = min_order(a.order_, b.order_);
        auto within = [&](const QSeries& s, long long num) {
            return !bound || s.exponent_of(num) <= *bound;
        };
        for (const auto& [num, c] : a.terms_) {
            if (!within(a, num)) continue;
            if (b.coeff(a.exponent_of(num)) != c) return false;
        }
        for (const auto& [num, c] : b.terms_) {
            if (!within(b, num)) continue;
            if (a.coeff(b.exponent_of(num)) != c) return false;
        }
        return true;
    }

    /// Identical stored representation (terms, lcd and order all equal).
    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.denom_ == b.denom_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    /// True if every known coefficient vanishes.
    bool is_zero() const { return terms_.empty(); }

    std::vector<std::pair<Rat, Rat>> term_list() const {
        std::vector<std::pair<Rat, Rat>> out;
        out.reserve(terms_.size());
        for (const auto& [num, c] : terms_) out.emplace_back(exponent_of(num), c);
        return out;
    }

    std::string pretty() const;

private:
    long long align_exponent(const Rat& e) {
        Int newden = lcm(make_int(denom_), e.get_den());
        long long nd = to_ll(newden);
        if (nd != denom_) rescale_denom(nd);
        Int num = e.get_num() * (make_int(denom_) / e.get_den());
        return to_ll(num);
    }

    void rescale_denom(long long newden) {
        long long f = newden / denom_;
        if (f == 1) return;
        TermMap scaled;
        for (auto& [num, c] : terms_) {
            Int wide = make_int(num) * make_int(f);
            scaled.emplace(to_ll(wide), std::move(c));
        }
        terms_ = std::move(scaled);
        denom_ = newden;
    }

    static std::optional<Rat> min_order(const std::optional<Rat>& a, const std::optional<Rat>& b) {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    }

    static std::optional<Rat> product_order(const QSeries& a, const QSeries& b) {
        if (!a.order_ && !b.order_) return std::nullopt;
        // least exponent the operand can possibly contribute, counting its
        // unknown tail (which starts just above the order)
        auto low = [](const QSeries& s) -> Rat {
            if (auto m = s.min_exponent()) return *m;
            return *s.order_;  // empty truncated series: tail only
        };
        std::optional<Rat> bound;
        auto consider = [&](const Rat& v) {
            if (!bound || v < *bound) bound = v;
        };
        if (a.order_) {
            if (b.terms_.empty() && !b.order_) return std::nullopt;  // b is exact zero
            consider(*a.order_ + low(b));
        }
        if (b.order_) {
            if (a.terms_.empty() && !a.order_) return std::nullopt;
            consider(*b.order_ + low(a));
        }
        return bound;
    }

    long long denom_;
    TermMap terms_;
    std::optional<Rat> order_;
};

/// Series of 1/((1-q)(1-q^2)(1-q^3)...) through the given order: the
/// partition-number generating function. Computed by the pentagonal-number
/// recurrence p(n) = sum_k (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)].
QSeries euler_inverse(const Rat& order);

/// The finite product (1-q)(1-q^2)...(1-q^N) stabilized below `order`,
/// i.e. the Euler function (q)_inf through that order.
QSeries euler_function(const Rat& order);

}  // namespace zq
