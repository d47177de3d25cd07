#include "zq/flatconn.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace zq {

namespace {

void require_census_input(const std::vector<long long>& a) {
    if (a.size() < 3) throw precondition_error("not_coprime", "need at least three fibers");
    for (long long v : a)
        if (v < 1) throw precondition_error("not_coprime", "multiplicities must be positive");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (std::gcd(a[i], a[j]) != 1)
                throw precondition_error("not_coprime",
                                         "multiplicities must be pairwise coprime: gcd(" +
                                             std::to_string(a[i]) + "," + std::to_string(a[j]) + ") > 1");
}

/// elementary symmetric polynomials e_0..e_k of the given values
std::vector<Int> elementary_symmetric(const std::vector<long long>& values) {
    std::vector<Int> e(values.size() + 1);
    e[0] = 1;
    for (long long v : values)
        for (std::size_t n = e.size() - 1; n >= 1; --n) e[n] += e[n - 1] * make_int(v);
    return e;
}

}  // namespace

ComponentCensus component_census(const std::vector<long long>& a) {
    require_census_input(a);
    std::vector<long long> shifted(a.size());
    std::transform(a.begin(), a.end(), shifted.begin(), [](long long v) { return v - 1; });
    std::vector<Int> e = elementary_symmetric(shifted);
    ComponentCensus out;
    out.lambda_p = 0;
    for (int n = 3; n <= static_cast<int>(a.size()); ++n) {
        Int denom = pow_int(Int(2), static_cast<unsigned long>(n - 1));
        if (e[static_cast<std::size_t>(n)] % denom != 0)
            throw internal_error("internal", "component count failed to be integral");
        ComponentCensus::Row row;
        row.n = n;
        row.count = e[static_cast<std::size_t>(n)] / denom;
        row.euler_char = binomial(static_cast<unsigned long>(n - 1), 2) *
                         pow_int(Int(2), static_cast<unsigned long>(n - 3));
        row.contribution = row.count * row.euler_char;
        out.lambda_p += row.contribution;
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<RotationOrbit> rotation_orbits(const std::vector<long long>& a, int n) {
    require_census_input(a);
    int k = static_cast<int>(a.size());
    if (n < 3 || n > k) return {};
    std::vector<RotationOrbit> out;

    // choose the support subset, then walk all tuples over it
    std::vector<int> support;
    std::function<void()> enumerate_tuples = [&]() {
        std::vector<long long> d(static_cast<std::size_t>(k), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t pos) {
            if (pos == support.size()) {
                // orbit of the even-flip action; free because at most one a_i is even
                std::vector<std::vector<long long>> orbit;
                for (unsigned long mask = 0; mask < (1UL << support.size()); ++mask) {
                    if (__builtin_parityl(mask)) continue;  // even flips only
                    std::vector<long long> flipped = d;
                    for (std::size_t s = 0; s < support.size(); ++s)
                        if (mask & (1UL << s)) {
                            int idx = support[s];
                            flipped[static_cast<std::size_t>(idx)] =
                                a[static_cast<std::size_t>(idx)] - d[static_cast<std::size_t>(idx)];
                        }
                    orbit.push_back(std::move(flipped));
                }
                auto least = *std::min_element(orbit.begin(), orbit.end());
                if (least == d) out.push_back(RotationOrbit{d, static_cast<long long>(orbit.size())});
                return;
            }
            int idx = support[pos];
            for (long long v = 1; v < a[static_cast<std::size_t>(idx)]; ++v) {
                d[static_cast<std::size_t>(idx)] = v;
                rec(pos + 1);
            }
            d[static_cast<std::size_t>(idx)] = 0;
        };
        rec(0);
    };
    std::function<void(int)> choose = [&](int from) {
        if (static_cast<int>(support.size()) == n) {
            enumerate_tuples();
            return;
        }
        for (int i = from; i < k; ++i) {
            support.push_back(i);
            choose(i + 1);
            support.pop_back();
        }
    };
    choose(0);
    return out;
}

MonodromySpectrum hamm_charpoly(const std::vector<long long>& a) {
    require_census_input(a);
    int k = static_cast<int>(a.size());
    MonodromySpectrum out;
    out.mu = 0;
    std::vector<int> subset;
    std::function<void(int)> choose = [&](int from) {
        if (static_cast<int>(subset.size()) >= 3) {
            Int multiplicity = binomial(static_cast<unsigned long>(subset.size() - 1), 2);
            // walk the tuples 0 < d_i < a_i over the subset
            std::vector<long long> d(subset.size(), 1);
            for (;;) {
                Rat r(0);
                for (std::size_t i = 0; i < subset.size(); ++i)
                    r += make_rat(d[i], a[static_cast<std::size_t>(subset[i])]);
                out.exponents[mod1(r)] += multiplicity;
                out.mu += multiplicity;
                std::size_t pos = 0;
                for (; pos < d.size(); ++pos) {
                    if (++d[pos] < a[static_cast<std::size_t>(subset[pos])]) break;
                    d[pos] = 1;
                }
                if (pos == d.size()) break;
            }
        }
        for (int i = from; i < k; ++i) {
            if (a[static_cast<std::size_t>(i)] == 1) continue;  // empty factor
            subset.push_back(i);
            choose(i + 1);
            subset.pop_back();
        }
    };
    choose(0);
    return out;
}

std::vector<Rat> spectrum_3fiber(long long a1, long long a2, long long a3) {
    require_census_input({a1, a2, a3});
    std::vector<Rat> out;
    for (long long d1 = 1; d1 < a1; ++d1)
        for (long long d2 = 1; d2 < a2; ++d2)
            for (long long d3 = 1; d3 < a3; ++d3)
                out.push_back(make_rat(d1, a1) + make_rat(d2, a2) + make_rat(d3, a3));
    std::sort(out.begin(), out.end());
    return out;
}

bool verify_casson_milnor(const std::vector<long long>& a) {
    return hamm_charpoly(a).mu == 4 * component_census(a).lambda_p;
}

}  // namespace zq
