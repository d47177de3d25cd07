#pragma once

#include <map>
#include <vector>

#include "zq/error.hpp"
#include "zq/numbers.hpp"

namespace zq {

/// Census of irreducible flat SL(2,C) connections on a Seifert homology
/// sphere with pairwise-coprime fiber multiplicities a_1..a_k: per n in
/// 3..k the moduli space has e_n(a_1-1,...,a_k-1)/2^{n-1} components of
/// dimension 2n-6, each with Euler characteristic C(n-1,2)*2^{n-3}.
struct ComponentCensus {
    struct Row {
        int n;            // number of nonzero rotation coordinates
        Int count;        // components of dimension 2n-6
        Int euler_char;   // per component
        Int contribution; // count * euler_char
    };
    std::vector<Row> rows;
    Int lambda_p;  // total Euler characteristic of the moduli space
};

/// Throws `not_coprime` unless the multiplicities are pairwise coprime
/// (the closed-form counts are only claimed there).
ComponentCensus component_census(const std::vector<long long>& a);

/// One component's rotation-number data: the tuples (d_1..d_k) with
/// 0 < d_i < a_i on exactly n coordinates, modulo simultaneous flips
/// d_i -> a_i - d_i on an even number of nonzero coordinates.
struct RotationOrbit {
    std::vector<long long> representative;  // lexicographically least member
    long long orbit_size;
};

std::vector<RotationOrbit> rotation_orbits(const std::vector<long long>& a, int n);

/// Monodromy eigenvalue data of the associated complete intersection:
/// exponents r mod 1 (eigenvalue e^{2 pi i r}) with multiplicities, and the
/// total count mu (the Milnor number).
struct MonodromySpectrum {
    std::map<Rat, Int> exponents;  // r in [0,1) -> multiplicity
    Int mu;
};

/// chi(t) = prod over subsets S of size n >= 3 of delta_S(t)^{C(n-1,2)},
/// where delta's roots are exp(2 pi i sum d_i/a_i).
MonodromySpectrum hamm_charpoly(const std::vector<long long>& a);

/// All (a1-1)(a2-1)(a3-1) spectral numbers d1/a1 + d2/a2 + d3/a3 of the
/// three-fiber singularity, as exact rationals (not reduced mod 1).
std::vector<Rat> spectrum_3fiber(long long a1, long long a2, long long a3);

/// The executable identity mu = 4 * lambda_p.
bool verify_casson_milnor(const std::vector<long long>& a);

}  // namespace zq
