#pragma once

#include <utility>
#include <vector>

#include "zq/numbers.hpp"

namespace zq {

/// Symmetric expansion of the factors (z - 1/z)^{2-deg} attached to the
/// vertices of a plumbing tree.
///
/// For negative powers the two one-sided geometric expansions are
///   at infinity: (z - 1/z)^{-n} = sum_j C(n+j-1, j) z^{-n-2j}
///   at zero:     (z - 1/z)^{-n} = (-1)^n sum_j C(n+j-1, j) z^{n+2j}
/// and the symmetric expansion is their average, so every emitted
/// coefficient carries a factor 1/2. Nonnegative powers are honest Laurent
/// polynomials where both expansions coincide and nothing is halved.

using ZTerm = std::pair<long long, Rat>;  // (exponent, coefficient)

/// s.e. of (z - 1/z)^{-n} for n >= 0, all terms with |exponent| <= bound.
/// Emitted in order of increasing exponent.
std::vector<ZTerm> sym_expand(long long n, long long bound);

/// The degree-one factor z - 1/z: [(+1, 1), (-1, -1)].
std::vector<ZTerm> leaf_factor();

/// Exact binomial expansion of (z - 1/z)^p for p >= 0.
std::vector<ZTerm> expand_power(long long p);

/// Stream for a vertex of the given degree, i.e. (z - 1/z)^{2-degree}:
/// finite for degree <= 2, the halved symmetric expansion for nodes.
std::vector<ZTerm> vertex_stream(long long degree, long long bound);

/// Coefficient of z^e in the stream of a degree-`degree` vertex
/// (zero when e is outside the support).
Rat vertex_coeff(long long degree, long long e);

}  // namespace zq
