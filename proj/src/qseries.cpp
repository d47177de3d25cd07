#include "zq/qseries.hpp"

#include <sstream>

namespace zq {

std::string QSeries::pretty() const {
    std::ostringstream out;
    if (terms_.empty()) {
        out << "0";
    } else {
        bool first = true;
        for (const auto& [num, c] : terms_) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    out << "-";
                    a = -a;
                }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            Rat e = exponent_of(num);
            bool unit_coeff = (a == 1);
            if (!unit_coeff || e == 0) out << rat_str(a);
            if (e != 0) {
                if (!unit_coeff) out << "*";
                out << "q";
                if (e != 1) {
                    std::string es = rat_str(e);
                    bool bare = es.find('/') == std::string::npos && es.find('-') == std::string::npos;
                    out << "^" << (bare ? es : "(" + es + ")");
                }
            }
        }
    }
    if (order_) out << " + O(q^" << rat_str(*order_) << ")";
    return out.str();
}

QSeries euler_inverse(const Rat& order) {
    if (order < 0) throw std::invalid_argument("euler_inverse: order must be nonnegative");
    long long n_max = to_ll(rat_floor(order));
    std::vector<Int> p(static_cast<std::size_t>(n_max) + 1);
    p[0] = 1;
    for (long long n = 1; n <= n_max; ++n) {
        Int acc = 0;
        for (long long k = 1;; ++k) {
            long long g1 = k * (3 * k - 1) / 2;
            long long g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            Int contrib = 0;
            if (g1 <= n) contrib += p[static_cast<std::size_t>(n - g1)];
            if (g2 <= n) contrib += p[static_cast<std::size_t>(n - g2)];
            if (k % 2 == 1)
                acc += contrib;
            else
                acc -= contrib;
        }
        p[static_cast<std::size_t>(n)] = acc;
    }
    QSeries s = QSeries::zero(order);
    for (long long n = 0; n <= n_max; ++n) s.add_term(Rat(make_int(n)), Rat(p[static_cast<std::size_t>(n)]));
    s.normalize();
    return s;
}

QSeries euler_function(const Rat& order) {
    if (order < 0) throw std::invalid_argument("euler_function: order must be nonnegative");
    // pentagonal number theorem: (q)_inf = sum_k (-1)^k q^{k(3k-1)/2}
    QSeries s = QSeries::zero(order);
    s.add_term(Rat(0), Rat(1));
    for (long long k = 1;; ++k) {
        Rat g1(make_int(k * (3 * k - 1) / 2));
        Rat g2(make_int(k * (3 * k + 1) / 2));
        if (g1 > order && g2 > order) break;
        Rat sign = (k % 2 == 1) ? Rat(-1) : Rat(1);
        s.add_term(g1, sign);
        s.add_term(g2, sign);
    }
    s.normalize();
    return s;
}

}  // namespace zq
