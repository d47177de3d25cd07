#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zq {

// Exact arithmetic everywhere: big integers and canonical rationals from GMP.
// Nothing in this library ever touches floating point.
using Int = mpz_class;
using Rat = mpq_class;

inline Int make_int(long long v) {
    Int r;
    mpz_set_si(r.get_mpz_t(), v);
    return r;
}

inline Rat make_rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(make_int(num), make_int(den));
    r.canonicalize();
    return r;
}

inline bool fits_ll(const Int& v) { return v.fits_slong_p(); }

inline long long to_ll(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer too large: " + v.get_str());
    return v.get_si();
}

// floor(a/b) for exact integers, b != 0
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(r.get_num(), r.get_den()); }
inline Int rat_ceil(const Rat& r) { return ceil_div(r.get_num(), r.get_den()); }

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int m;
    mpz_lcm(m.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return m;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// r reduced into [0,1)
inline Rat mod1(const Rat& r) {
    Rat f(r - Rat(rat_floor(r)));
    f.canonicalize();
    return f;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace zq
