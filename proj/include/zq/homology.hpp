#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zq/error.hpp"
#include "zq/intlinalg.hpp"
#include "zq/plumbing.hpp"

namespace zq {

/// The first homology H = Z^s / M Z^s of a plumbed rational homology sphere,
/// presented through the Smith normal form U M V = D. An element is stored
/// as its reduced coordinate tuple against the elementary divisors; the
/// class map is v |-> (U v) mod D and lifting goes back through U^{-1}.
class FiniteAbelianGroup {
public:
    using Elt = std::vector<Int>;

    explicit FiniteAbelianGroup(const PlumbingMatrix& m);

    int ambient_dim() const { return s_; }
    const Int& order() const { return order_; }
    const std::vector<Int>& divisors() const { return divisors_; }  // all s of them
    const SmithDecomposition& smith() const { return snf_; }
    const PlumbingMatrix& matrix() const { return matrix_; }

    Elt identity() const { return Elt(divisors_.size(), Int(0)); }
    bool is_identity(const Elt& h) const;

    Elt class_of(const std::vector<Int>& v) const;
    Elt basis_class(int vertex) const;  // [e_vertex]
    bool in_lattice(const std::vector<Int>& v) const;  // v in M Z^s, exact

    Elt add(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt scale(const Elt& a, const Int& k) const;
    Int element_order(const Elt& a) const;

    /// Integer representative with class_of(lift(h)) == h; deterministic
    /// (the SNF-reduced mixed-radix tuple pushed through U^{-1}).
    std::vector<Int> lift(const Elt& h) const;

    /// All elements in deterministic mixed-radix order (identity first).
    std::vector<Elt> elements() const;
    long long index_of(const Elt& h) const;  // position in elements() order

    /// Linking pairing lk(h1,h2) = -(v1, M^{-1} v2) mod 1 on lifts.
    Rat linking(const Elt& h1, const Elt& h2) const;

    /// A character, stored by its exponents on the divisor generators:
    /// chi(generator_i) = exp(2*pi*i * comps[i]/d_i).
    struct Character {
        std::vector<Int> comps;
    };

    /// The full dual group, |H| characters, deterministic order.
    std::vector<Character> characters() const;

    /// Exponent r in [0,1) with chi(h) = exp(2*pi*i*r).
    Rat character_exponent(const Character& chi, const Elt& h) const;

    /// theta(h) = lk(h,-) in Hom(H, Q/Z), expressed as a Character.
    Character theta(const Elt& h) const;

    std::string describe(const Elt& h) const;

private:
    Elt reduce(std::vector<Int> comps) const;

    PlumbingMatrix matrix_;
    int s_;
    SmithDecomposition snf_;
    IntMat uinv_;
    std::vector<Int> divisors_;
    Int order_;
};

/// Complete list of spin-c representatives b = delta + 2*lift(h) in
/// (2Z^s + delta)/2MZ^s, one per element h of H, together with the
/// conjugation involution b -> -b and the c1 map b -> [b].
class SpincSet {
public:
    explicit SpincSet(const PlumbingGraph& g);

    const FiniteAbelianGroup& group() const { return group_; }
    long long count() const { return static_cast<long long>(reps_.size()); }
    const std::vector<int>& delta() const { return delta_; }

    const std::vector<Int>& representative(long long i) const { return reps_[static_cast<std::size_t>(i)]; }
    const FiniteAbelianGroup::Elt& label(long long i) const { return labels_[static_cast<std::size_t>(i)]; }

    /// Index of the class of -b_i.
    long long involution(long long i) const { return involution_[static_cast<std::size_t>(i)]; }
    bool is_spin(long long i) const { return involution_[static_cast<std::size_t>(i)] == i; }

    FiniteAbelianGroup::Elt c1(long long i) const;

    /// Index of the class of an arbitrary characteristic vector; throws
    /// `unknown_spinc` if it is not congruent to delta mod 2.
    long long index_of_vector(const std::vector<Int>& b) const;

private:
    FiniteAbelianGroup group_;
    std::vector<int> delta_;
    std::vector<std::vector<Int>> reps_;
    std::vector<FiniteAbelianGroup::Elt> labels_;
    std::vector<long long> involution_;
};

SpincSet spinc_reps(const PlumbingGraph& g);

}  // namespace zq
