#include "zq/homology.hpp"

#include <sstream>

namespace zq {

FiniteAbelianGroup::FiniteAbelianGroup(const PlumbingMatrix& m)
    : matrix_(m), s_(m.size()), snf_(smith_normal_form(m.entries())) {
    if (m.det() == 0)
        throw precondition_error("singular_matrix",
                                 "H is infinite: the plumbing matrix is singular");
    divisors_ = snf_.divisors();
    order_ = 1;
    for (const Int& d : divisors_) order_ *= d;
    // U is unimodular, so its inverse is det(U) * adj(U)
    Int du = bareiss_det(snf_.u);
    uinv_ = adjugate(snf_.u);
    if (du == -1)
        for (int i = 0; i < s_; ++i)
            for (int j = 0; j < s_; ++j) uinv_(i, j) = -uinv_(i, j);
}

bool FiniteAbelianGroup::is_identity(const Elt& h) const {
    for (const Int& c : h)
        if (c != 0) return false;
    return true;
}

FiniteAbelianGroup::Elt FiniteAbelianGroup::reduce(std::vector<Int> comps) const {
    for (std::size_t i = 0; i < comps.size(); ++i) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), comps[i].get_mpz_t(), divisors_[i].get_mpz_t());
        comps[i] = r;
    }
    return comps;
}

FiniteAbelianGroup::Elt FiniteAbelianGroup::class_of(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != s_) throw std::invalid_argument("class_of: wrong length");
    return reduce(snf_.u.apply(v));
}

FiniteAbelianGroup::Elt FiniteAbelianGroup::basis_class(int vertex) const {
    std::vector<Int> e(static_cast<std::size_t>(s_));
    e[static_cast<std::size_t>(vertex)] = 1;
    return class_of(e);
}

bool FiniteAbelianGroup::in_lattice(const std::vector<Int>& v) const {
    std::vector<Rat> rhs(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rhs[i] = Rat(v[i]);
    auto x = solve(matrix_.entries(), rhs);
    if (!x) throw internal_error("internal", "singular matrix in lattice membership");
    for (const Rat& c : *x)
        if (c.get_den() != 1) return false;
    return true;
}

FiniteAbelianGroup::Elt FiniteAbelianGroup::add(const Elt& a, const Elt& b) const {
    Elt r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return reduce(std::move(r));
}

FiniteAbelianGroup::Elt FiniteAbelianGroup::neg(const Elt& a) const {
    Elt r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return reduce(std::move(r));
}

FiniteAbelianGroup::Elt FiniteAbelianGroup::scale(const Elt& a, const Int& k) const {
    Elt r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
    return reduce(std::move(r));
}

Int FiniteAbelianGroup::element_order(const Elt& a) const {
    Int ord = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (divisors_[i] == 1) continue;
        Int g = gcd(divisors_[i], a[i]);
        ord = lcm(ord, divisors_[i] / g);
    }
    return ord;
}

std::vector<Int> FiniteAbelianGroup::lift(const Elt& h) const {
    return uinv_.apply(h);
}

std::vector<FiniteAbelianGroup::Elt> FiniteAbelianGroup::elements() const {
    if (!order_.fits_slong_p() || order_.get_si() > 2'000'000)
        throw precondition_error("group_too_large", "refusing to enumerate H of order " + order_.get_str());
    std::vector<Elt> out;
    out.reserve(static_cast<std::size_t>(order_.get_si()));
    Elt cur = identity();
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (divisors_[i] == 1) continue;
            cur[i] += 1;
            if (cur[i] < divisors_[i]) break;
            cur[i] = 0;
        }
        if (i == cur.size()) break;
    }
    return out;
}

long long FiniteAbelianGroup::index_of(const Elt& h) const {
    long long idx = 0, weight = 1;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (divisors_[i] == 1) continue;
        idx += to_ll(h[i]) * weight;
        weight *= to_ll(divisors_[i]);
    }
    return idx;
}

Rat FiniteAbelianGroup::linking(const Elt& h1, const Elt& h2) const {
    std::vector<Int> v1 = lift(h1), v2 = lift(h2);
    const RatMat& inv = matrix_.inverse();
    Rat acc(0);
    for (int i = 0; i < s_; ++i) {
        if (v1[static_cast<std::size_t>(i)] == 0) continue;
        Rat row(0);
        for (int j = 0; j < s_; ++j)
            row += inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * Rat(v2[static_cast<std::size_t>(j)]);
        acc += Rat(v1[static_cast<std::size_t>(i)]) * row;
    }
    return mod1(-acc);
}

std::vector<FiniteAbelianGroup::Character> FiniteAbelianGroup::characters() const {
    std::vector<Character> out;
    for (Elt e : elements()) out.push_back(Character{std::move(e)});
    return out;
}

Rat FiniteAbelianGroup::character_exponent(const Character& chi, const Elt& h) const {
    Rat acc(0);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (divisors_[i] == 1) continue;
        acc += Rat(chi.comps[i] * h[i], divisors_[i]);
    }
    acc.canonicalize();
    return mod1(acc);
}

FiniteAbelianGroup::Character FiniteAbelianGroup::theta(const Elt& h) const {
    Character chi;
    chi.comps.assign(divisors_.size(), Int(0));
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        if (divisors_[i] == 1) continue;
        Elt gen = identity();
        gen[i] = 1;
        Rat r = linking(h, gen) * Rat(divisors_[i]);
        r.canonicalize();
        if (r.get_den() != 1)
            throw internal_error("internal", "linking value has unexpected denominator");
        Int c;
        mpz_fdiv_r(c.get_mpz_t(), r.get_num().get_mpz_t(), divisors_[i].get_mpz_t());
        chi.comps[i] = c;
    }
    return chi;
}

std::string FiniteAbelianGroup::describe(const Elt& h) const {
    std::ostringstream out;
    out << "(";
    bool first = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (divisors_[i] == 1) continue;
        if (!first) out << ",";
        out << h[i].get_str() << "/" << divisors_[i].get_str();
        first = false;
    }
    if (first) out << "0";
    out << ")";
    return out.str();
}

SpincSet::SpincSet(const PlumbingGraph& g) : group_(matrix_of(g)), delta_(g.degree_vector()) {
    std::vector<Int> delta_int(delta_.begin(), delta_.end());
    FiniteAbelianGroup::Elt delta_class = group_.class_of(delta_int);
    auto elts = group_.elements();
    reps_.reserve(elts.size());
    labels_.reserve(elts.size());
    for (const auto& h : elts) {
        std::vector<Int> lift = group_.lift(h);
        std::vector<Int> b(delta_int);
        for (std::size_t i = 0; i < b.size(); ++i) b[i] += 2 * lift[i];
        reps_.push_back(std::move(b));
        labels_.push_back(h);
    }
    involution_.resize(elts.size());
    for (std::size_t i = 0; i < elts.size(); ++i) {
        // -b_h = b_{h'} with h' = -[delta] - h
        FiniteAbelianGroup::Elt partner = group_.neg(group_.add(delta_class, elts[i]));
        involution_[i] = group_.index_of(partner);
    }
}

FiniteAbelianGroup::Elt SpincSet::c1(long long i) const {
    return group_.class_of(reps_[static_cast<std::size_t>(i)]);
}

long long SpincSet::index_of_vector(const std::vector<Int>& b) const {
    if (static_cast<int>(b.size()) != group_.ambient_dim())
        throw precondition_error("unknown_spinc", "characteristic vector has wrong length");
    std::vector<Int> half(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        Int diff = b[i] - delta_[i];
        if (diff % 2 != 0)
            throw precondition_error("unknown_spinc", "vector is not congruent to the degree vector mod 2");
        half[i] = diff / 2;
    }
    return group_.index_of(group_.class_of(half));
}

SpincSet spinc_reps(const PlumbingGraph& g) { return SpincSet(g); }

}  // namespace zq
