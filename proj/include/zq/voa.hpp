#pragma once

#include <optional>
#include <vector>

#include "zq/qseries.hpp"

namespace zq {

/// Parameters of the false theta function: the one-sided signed sum
/// sum_{n>=0} psi^{(a)}_{2p}(n) q^{n^2/4p} with psi = +-1 for n = +-a mod 2p
/// (the + branch wins at a = p where the classes collide) and 0 otherwise.
struct FalseThetaParams {
    long long p;
    long long a;  // 0 < a < 2p
};

QSeries false_theta(const FalseThetaParams& params, const Rat& order);

/// (p', p) singlet model data; the atypical character formulas below are
/// all that is implemented of the algebra.
struct SingletModel {
    long long p_prime;
    long long p;
};

/// c = 1 - 6 (p - p')^2 / (p p'); for (1,p) this is 13 - 6p - 6/p.
Rat central_charge(const SingletModel& m);

/// h_min = -(p - p')^2 / (4 p p'), so c_eff = c - 24 h_min = 1.
Rat h_min(const SingletModel& m);

/// Character of the atypical module M_{r,s}: the bilateral difference sum
///   1/eta * sum_{n>=0} ( q^{(2pp'n + p'r - ps)^2/4pp'} - q^{(2pp'n + p'r + ps)^2/4pp'} )
/// with eta = q^{1/24} (q)_inf.
QSeries singlet_character(const SingletModel& m, long long r, long long s, const Rat& order);

/// Result of matching a family of q-series against (1,p) singlet characters
/// over the false-theta basis plus the 1/(q)_inf unit (on the lattice side
/// the unit becomes a plain monomial).
struct SingletMatch {
    bool pure_power = false;           // every nonzero member is one monomial
    std::optional<long long> p;        // matched singlet parameter when not pure
    Rat central_charge;                // 13 - 6p - 6/p for a matched p
    std::vector<Rat> leading_exponents;  // Delta_b of the nonzero members

    struct Piece {
        long long a;  // false-theta label, 0 for the unit monomial
        Rat shift;    // q-power prefactor exponent
        Rat coeff;    // rational prefactor
    };
    std::vector<std::vector<Piece>> reconstruction;  // one list per member
};

/// Search the smallest p <= max_p writing every member of the family as a
/// rational-prefactor combination of (1,p) false thetas and monomials,
/// decided by an exact overdetermined linear solve on coefficient prefixes
/// (at least three times as many matched coefficients as unknowns).
/// Returns nullopt when nothing matches within the bound.
std::optional<SingletMatch> identify_singlet(const std::vector<QSeries>& family, long long max_p);

}  // namespace zq
