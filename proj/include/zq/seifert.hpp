#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zq/homology.hpp"
#include "zq/plumbing.hpp"
#include "zq/qseries.hpp"

namespace zq {

/// Seifert data (b; (a_1,b_1),...,(a_k,b_k)) with 0 < b_i < a_i coprime.
/// Lens-space style inputs are padded with trivial (1,0) pairs so that k >= 3
/// always holds; a (1,0) pair contributes no leg to the plumbing graph and a
/// trivial factor to the reduced integrand.
class SeifertData {
public:
    SeifertData(long long b, std::vector<std::pair<long long, long long>> pairs);

    /// Text form "b; a1/b1 a2/b2 ... ak/bk".
    static SeifertData parse(const std::string& text);
    std::string format() const;

    long long b() const { return b_; }
    const std::vector<std::pair<long long, long long>>& pairs() const { return pairs_; }
    int fiber_count() const { return static_cast<int>(pairs_.size()); }

    Int big_a() const;                    // A = prod a_i
    Int abar(int i) const;                // A / a_i
    Rat euler_number() const;             // e = -b + sum b_i/a_i
    Int h_order() const;                  // |H| = |A e|
    Int fiber_lcm() const;                // lcm(a_1..a_k)

private:
    long long b_;
    std::vector<std::pair<long long, long long>> pairs_;
};

/// Negative continued fraction a/b = c_1 - 1/(c_2 - 1/(... - 1/c_n)) with
/// c_1 >= 1 and c_i >= 2 beyond the first. Throws `invalid_pair` unless
/// 0 < b < a and gcd(a,b) = 1.
std::vector<long long> neg_continued_fraction(long long a, long long b);

/// The star-shaped plumbing of the Seifert data plus the vertex bookkeeping
/// the equivariant reduction needs: the central node and the leaf of each
/// leg (-1 for padded (1,0) pairs, whose class is the node's).
struct SeifertPlumbing {
    PlumbingGraph graph;
    int node;
    std::vector<int> leg_leaf;
};

/// Throws `not_negative_definite` when the Euler number is >= 0.
SeifertPlumbing to_plumbing(const SeifertData& sd);

/// The exponent shift of the reduced series:
/// 4*Delta = 24*lambda(Y) - A*(2 - k + sum 1/a_i^2).
Rat reduction_delta(const SeifertData& sd);

/// Z_0(q^{|H|}) through the given order (in output exponent units), computed
/// on the single-variable side: the symmetric expansion of
///   f_0(t) = prod_i (t^{A/a_i} - t^{-A/a_i}) / (t^A - t^{-A})^{k-2}
/// followed by the Laplace substitution t^n -> q^{n^2/4A} and the q^Delta shift.
QSeries reduce_z0(const SeifertData& sd, const Rat& order);

/// All H-labeled reduced series at once, indexed by the group's elements()
/// order of the associated star plumbing: the chi-average
///   f_h = 1/|H| sum_chi chi(h^{-1}) (chi-twisted product)
/// evaluated exactly over cyclotomic integers. Throws `nonrational_result`
/// if a coefficient fails to collapse to a rational (an internal bug, never
/// rounded away).
std::vector<QSeries> reduce_zhat_prime_all(const SeifertData& sd, const Rat& order);
QSeries reduce_zhat_prime(const SeifertData& sd, const FiniteAbelianGroup::Elt& h, const Rat& order);

/// Order of the central fiber class g_0 in H, cross-checked against
/// lcm(a_i) * |e|.
Int g0_order(const SeifertData& sd);

/// When g_0 is trivial at most 2^k of the series are nonzero; otherwise no
/// bound beyond |H| is claimed.
Int vanishing_bound(const SeifertData& sd);

}  // namespace zq
