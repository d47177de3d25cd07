#pragma once

#include <functional>
#include <vector>

#include "zq/homology.hpp"
#include "zq/plumbing.hpp"
#include "zq/qseries.hpp"

namespace zq {

/// The positive-definite exact quadratic data driving the lattice sum: the
/// Gram matrix G = -M^{-1}, its LDL^T factorization (used for the nested
/// enumeration intervals), and the overall prefactor exponent
/// delta0 = (-3s - tr M)/4.
struct LaplaceForm {
    RatMat gram;
    LdltFactors ldlt;
    Rat delta0;

    /// Throws `not_negative_definite` unless -M is positive definite.
    static LaplaceForm of(const PlumbingMatrix& m);
};

/// One emitted lattice vector: integer coordinates, the product of the
/// per-vertex stream coefficients, and the exponent (l, -M^{-1} l)/4
/// (before the delta0 prefactor).
struct LatticeTerm {
    std::vector<long long> coords;
    Rat coeff;
    Rat exponent;
};

using ProgressHook = std::function<void(unsigned long long vectors_emitted, const Rat& frontier)>;

/// Evaluator for the q-series invariants of one negative-definite plumbing:
/// the per-spin-c series, their sum over all labels, and the H-labeled
/// coset refinement, all from a single certified lattice enumeration.
///
/// Every vector l in the support of the integrand expansion (leaves +-1,
/// joints 0, node coordinates of fixed parity) with vertex-stream
/// coefficient product c_l and (l, -M^{-1} l)/4 <= order - delta0 is visited
/// exactly once; the interval bounds come from the exact LDL^T factors, so
/// the emitted series order is certified, never heuristic.
class ZhatEvaluator {
public:
    explicit ZhatEvaluator(const PlumbingGraph& g);

    const PlumbingGraph& graph() const { return graph_; }
    const PlumbingMatrix& matrix() const { return matrix_; }
    const SpincSet& spincs() const { return spincs_; }
    const FiniteAbelianGroup& group() const { return spincs_.group(); }
    const LaplaceForm& form() const { return form_; }

    void set_threads(int n) { threads_ = n > 0 ? n : 1; }
    void set_progress_hook(ProgressHook hook) { progress_ = std::move(hook); }

    /// Visit every supported lattice vector with exponent + delta0 <= order.
    void enumerate(const Rat& order, const std::function<void(const LatticeTerm&)>& sink) const;

    /// All spin-c series at once (indexed like spincs().representative).
    std::vector<QSeries> zhat_all(const Rat& order) const;
    QSeries zhat_b(long long spinc_index, const Rat& order) const;
    QSeries zhat_b(const std::vector<Int>& b, const Rat& order) const;

    /// Sum over the full shifted lattice (no coset restriction).
    QSeries z0(const Rat& order) const;

    /// H-labeled refinement; indexed by the group's elements() order.
    std::vector<QSeries> zhat_prime_all(const Rat& order) const;
    QSeries zhat_prime(const FiniteAbelianGroup::Elt& h, const Rat& order) const;

private:
    enum class Accumulate { BySpinc, ByClass, Total };
    std::vector<QSeries> run(const Rat& order, Accumulate mode) const;

    PlumbingGraph graph_;
    PlumbingMatrix matrix_;
    SpincSet spincs_;
    LaplaceForm form_;
    std::vector<int> degrees_;
    std::vector<int> perm_;      // level -> vertex (levels enumerated from the back)
    LdltFactors permuted_ldlt_;  // of the permuted Gram matrix
    int threads_ = 1;
    ProgressHook progress_;
};

/// Convenience wrappers matching the per-operation surface.
QSeries zhat_b(const PlumbingGraph& g, long long spinc_index, const Rat& order);
QSeries z0(const PlumbingGraph& g, const Rat& order);
QSeries zhat_prime_h(const PlumbingGraph& g, const FiniteAbelianGroup::Elt& h, const Rat& order);

}  // namespace zq
