#include "zq/symexpand.hpp"

#include <algorithm>
#include <stdexcept>

namespace zq {

std::vector<ZTerm> sym_expand(long long n, long long bound) {
    if (n < 0) throw std::invalid_argument("sym_expand: power must be nonnegative");
    if (bound < 0) throw std::invalid_argument("sym_expand: bound must be nonnegative");
    std::vector<ZTerm> out;
    if (n == 0) {
        out.emplace_back(0, Rat(1));
        return out;
    }
    Rat half(1, 2);
    Rat neg_side_sign(1);
    Rat pos_side_sign(n % 2 == 0 ? 1 : -1);
    for (long long j = 0; n + 2 * j <= bound; ++j) {
        Rat c(binomial(static_cast<unsigned long>(n + j - 1), static_cast<unsigned long>(j)));
        out.emplace_back(-(n + 2 * j), neg_side_sign * half * c);
        out.emplace_back(n + 2 * j, pos_side_sign * half * c);
    }
    std::sort(out.begin(), out.end(),
              [](const ZTerm& a, const ZTerm& b) { return a.first < b.first; });
    return out;
}

std::vector<ZTerm> leaf_factor() { return {{1, Rat(1)}, {-1, Rat(-1)}}; }

std::vector<ZTerm> expand_power(long long p) {
    if (p < 0) throw std::invalid_argument("expand_power: power must be nonnegative");
    std::vector<ZTerm> out;
    for (long long i = 0; i <= p; ++i) {
        Rat c(binomial(static_cast<unsigned long>(p), static_cast<unsigned long>(i)));
        if (i % 2 == 1) c = -c;
        out.emplace_back(p - 2 * i, c);
    }
    std::sort(out.begin(), out.end(),
              [](const ZTerm& a, const ZTerm& b) { return a.first < b.first; });
    return out;
}

std::vector<ZTerm> vertex_stream(long long degree, long long bound) {
    if (degree < 0) throw std::invalid_argument("vertex_stream: negative degree");
    if (degree <= 2) return expand_power(2 - degree);
    std::vector<ZTerm> terms = sym_expand(degree - 2, bound);
    return terms;
}

Rat vertex_coeff(long long degree, long long e) {
    if (degree <= 2) {
        long long p = 2 - degree;
        if (std::abs(e) > p || (e - p) % 2 != 0) return Rat(0);
        long long i = (p - e) / 2;
        Rat c(binomial(static_cast<unsigned long>(p), static_cast<unsigned long>(i)));
        return (i % 2 == 1) ? -c : c;
    }
    long long n = degree - 2;
    long long a = std::abs(e);
    if (a < n || (a - n) % 2 != 0) return Rat(0);
    long long j = (a - n) / 2;
    Rat c(binomial(static_cast<unsigned long>(n + j - 1), static_cast<unsigned long>(j)));
    c /= 2;
    if (e > 0 && n % 2 == 1) c = -c;
    return c;
}

}  // namespace zq
