#include "zq/zhat.hpp"

#include <algorithm>
#include <thread>

#include "zq/symexpand.hpp"

namespace zq {

LaplaceForm LaplaceForm::of(const PlumbingMatrix& m) {
    if (!m.negative_definite())
        throw precondition_error("not_negative_definite", "plumbing matrix is not negative definite");
    const RatMat& inv = m.inverse();
    int s = m.size();
    LaplaceForm f;
    f.gram.assign(static_cast<std::size_t>(s), std::vector<Rat>(static_cast<std::size_t>(s)));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            f.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                -inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto ldlt = ldlt_positive_definite(f.gram);
    if (!ldlt)
        throw precondition_error("not_negative_definite", "-M^{-1} failed the positive pivot test");
    f.ldlt = std::move(*ldlt);
    f.delta0 = Rat(make_int(-3 * static_cast<long long>(s)) - m.trace(), Int(4));
    f.delta0.canonicalize();
    return f;
}

namespace {

/// Depth-first interval enumeration over one branch of the assignment tree.
/// Levels run from high (fixed vertices) to low (node coordinates); at each
/// level the exact remaining budget bounds the coordinate window.
class Enumerator {
public:
    Enumerator(const std::vector<int>& perm, const std::vector<int>& degrees,
               const LdltFactors& ldlt, Rat budget,
               const std::function<void(const LatticeTerm&)>& sink,
               const ProgressHook& progress)
        : perm_(perm),
          degrees_(degrees),
          ldlt_(ldlt),
          budget_(std::move(budget)),
          sink_(sink),
          progress_(progress),
          x_(perm.size(), 0) {}

    void run_from(int level, const Rat& used, const std::vector<long long>& prefix) {
        for (std::size_t i = static_cast<std::size_t>(level) + 1; i < x_.size(); ++i)
            x_[i] = prefix[i];
        descend(level, used);
    }

    void run_all() { descend(static_cast<int>(perm_.size()) - 1, Rat(0)); }

private:
    Rat center(int level) const {
        Rat c(0);
        for (std::size_t j = static_cast<std::size_t>(level) + 1; j < x_.size(); ++j) {
            const Rat& l = ldlt_.lower[j][static_cast<std::size_t>(level)];
            if (l != 0 && x_[j] != 0) c += l * Rat(make_int(x_[j]));
        }
        return c;
    }

    void descend(int level, const Rat& used) {
        if (level < 0) {
            emit(used);
            return;
        }
        Rat c = center(level);
        const Rat& d = ldlt_.diag[static_cast<std::size_t>(level)];
        Rat remaining = budget_ - used;
        auto attempt = [&](long long y) {
            Rat t = Rat(make_int(y)) + c;
            Rat cost = d * t * t;
            if (cost > remaining) return;
            x_[static_cast<std::size_t>(level)] = y;
            descend(level - 1, used + cost);
        };
        int deg = degrees_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(level)])];
        if (deg == 1) {
            attempt(1);
            attempt(-1);
        } else if (deg == 2) {
            attempt(0);
        } else if (deg == 0) {
            attempt(-2);
            attempt(0);
            attempt(2);
        } else {
            long long n = deg - 2;
            auto admissible = [&](long long y) { return std::llabs(y) >= n && (y - n) % 2 == 0; };
            long long start = to_ll(rat_ceil(-c));
            for (long long y = start;; ++y) {
                Rat t = Rat(make_int(y)) + c;
                Rat cost = d * t * t;
                if (cost > remaining) break;
                if (admissible(y)) {
                    x_[static_cast<std::size_t>(level)] = y;
                    descend(level - 1, used + cost);
                }
            }
            for (long long y = start - 1;; --y) {
                Rat t = Rat(make_int(y)) + c;
                Rat cost = d * t * t;
                if (cost > remaining) break;
                if (admissible(y)) {
                    x_[static_cast<std::size_t>(level)] = y;
                    descend(level - 1, used + cost);
                }
            }
        }
    }

    void emit(const Rat& used) {
        LatticeTerm term;
        term.coords.assign(x_.size(), 0);
        term.coeff = 1;
        for (std::size_t level = 0; level < x_.size(); ++level) {
            int v = perm_[level];
            long long y = x_[level];
            term.coords[static_cast<std::size_t>(v)] = y;
            term.coeff *= vertex_coeff(degrees_[static_cast<std::size_t>(v)], y);
        }
        term.exponent = used / 4;
        sink_(term);
        if (progress_ && (++emitted_ & 0xfff) == 0) progress_(emitted_, term.exponent);
    }

    const std::vector<int>& perm_;
    const std::vector<int>& degrees_;
    const LdltFactors& ldlt_;
    Rat budget_;
    const std::function<void(const LatticeTerm&)>& sink_;
    const ProgressHook& progress_;
    std::vector<long long> x_;
    unsigned long long emitted_ = 0;
};

}  // namespace

ZhatEvaluator::ZhatEvaluator(const PlumbingGraph& g)
    : graph_(g), matrix_(matrix_of(g)), spincs_(g), form_(LaplaceForm::of(matrix_)),
      degrees_(g.degree_vector()) {
    int s = g.size();
    perm_.reserve(static_cast<std::size_t>(s));
    for (int v = 0; v < s; ++v)
        if (degrees_[static_cast<std::size_t>(v)] >= 3) perm_.push_back(v);  // innermost levels
    for (int v = 0; v < s; ++v)
        if (degrees_[static_cast<std::size_t>(v)] < 3) perm_.push_back(v);
    RatMat permuted(static_cast<std::size_t>(s), std::vector<Rat>(static_cast<std::size_t>(s)));
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
            permuted[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                form_.gram[static_cast<std::size_t>(perm_[static_cast<std::size_t>(a)])]
                          [static_cast<std::size_t>(perm_[static_cast<std::size_t>(b)])];
    auto ldlt = ldlt_positive_definite(permuted);
    if (!ldlt) throw precondition_error("not_negative_definite", "permuted Gram matrix not definite");
    permuted_ldlt_ = std::move(*ldlt);
}

void ZhatEvaluator::enumerate(const Rat& order,
                              const std::function<void(const LatticeTerm&)>& sink) const {
    Rat budget = (order - form_.delta0) * 4;
    if (budget < 0) return;  // the whole support lies above the requested order
    Enumerator en(perm_, degrees_, permuted_ldlt_, budget, sink, progress_);
    en.run_all();
}

std::vector<QSeries> ZhatEvaluator::run(const Rat& order, Accumulate mode) const {
    const FiniteAbelianGroup& h = group();
    long long families = mode == Accumulate::Total ? 1 : to_ll(h.order());
    std::vector<QSeries> out(static_cast<std::size_t>(families), QSeries::zero(order));

    std::vector<Int> delta(degrees_.begin(), degrees_.end());
    auto accumulate = [&](std::vector<QSeries>& fam, const LatticeTerm& t) {
        Rat exponent = form_.delta0 + t.exponent;
        long long idx = 0;
        if (mode == Accumulate::BySpinc) {
            std::vector<Int> half(t.coords.size());
            for (std::size_t i = 0; i < t.coords.size(); ++i)
                half[i] = (make_int(t.coords[i]) - delta[i]) / 2;
            idx = h.index_of(h.class_of(half));
        } else if (mode == Accumulate::ByClass) {
            std::vector<Int> v(t.coords.size());
            for (std::size_t i = 0; i < t.coords.size(); ++i) v[i] = make_int(t.coords[i]);
            idx = h.index_of(h.class_of(v));
        }
        fam[static_cast<std::size_t>(idx)].add_term(exponent, t.coeff);
    };

    Rat budget = (order - form_.delta0) * 4;
    if (budget >= 0) {
        int s = graph_.size();
        if (threads_ <= 1) {
            std::function<void(const LatticeTerm&)> sink = [&](const LatticeTerm& t) { accumulate(out, t); };
            Enumerator en(perm_, degrees_, permuted_ldlt_, budget, sink, progress_);
            en.run_all();
        } else {
            // split the assignment tree at the outermost fixed levels
            struct Prefix {
                std::vector<long long> x;
                Rat used;
            };
            std::vector<Prefix> prefixes{{std::vector<long long>(static_cast<std::size_t>(s), 0), Rat(0)}};
            int level = s - 1;
            const LdltFactors& ldlt = permuted_ldlt_;
            while (level >= 0 && static_cast<int>(prefixes.size()) < 4 * threads_ &&
                   degrees_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(level)])] < 3 &&
                   prefixes.size() < 512) {
                int deg = degrees_[static_cast<std::size_t>(perm_[static_cast<std::size_t>(level)])];
                std::vector<long long> choices = deg == 1 ? std::vector<long long>{1, -1}
                                               : deg == 2 ? std::vector<long long>{0}
                                                          : std::vector<long long>{-2, 0, 2};
                std::vector<Prefix> next;
                for (const Prefix& p : prefixes) {
                    Rat c(0);
                    for (int j = level + 1; j < s; ++j) {
                        const Rat& l = ldlt.lower[static_cast<std::size_t>(j)][static_cast<std::size_t>(level)];
                        if (l != 0 && p.x[static_cast<std::size_t>(j)] != 0)
                            c += l * Rat(make_int(p.x[static_cast<std::size_t>(j)]));
                    }
                    for (long long y : choices) {
                        Rat t = Rat(make_int(y)) + c;
                        Rat cost = ldlt.diag[static_cast<std::size_t>(level)] * t * t;
                        if (p.used + cost > budget) continue;
                        Prefix q = p;
                        q.x[static_cast<std::size_t>(level)] = y;
                        q.used += cost;
                        next.push_back(std::move(q));
                    }
                }
                prefixes = std::move(next);
                --level;
            }
            int nthreads = std::min(threads_, static_cast<int>(std::max<std::size_t>(prefixes.size(), 1)));
            std::vector<std::vector<QSeries>> partial(
                static_cast<std::size_t>(nthreads),
                std::vector<QSeries>(static_cast<std::size_t>(families), QSeries::zero(order)));
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) {
                pool.emplace_back([&, t] {
                    std::function<void(const LatticeTerm&)> sink = [&](const LatticeTerm& term) {
                        accumulate(partial[static_cast<std::size_t>(t)], term);
                    };
                    ProgressHook none;
                    for (std::size_t p = static_cast<std::size_t>(t); p < prefixes.size();
                         p += static_cast<std::size_t>(nthreads)) {
                        Enumerator en(perm_, degrees_, permuted_ldlt_, budget, sink, none);
                        en.run_from(level, prefixes[p].used, prefixes[p].x);
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& fam : partial)
                for (long long i = 0; i < families; ++i)
                    out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] + fam[static_cast<std::size_t>(i)];
        }
    }

    Int cap = 4 * abs(matrix_.det());
    for (auto& s : out) {
        s.normalize();
        if (make_int(s.denom()) > cap)
            throw internal_error("internal", "series exponent denominator exceeds 4|det M|");
    }
    return out;
}

std::vector<QSeries> ZhatEvaluator::zhat_all(const Rat& order) const {
    return run(order, Accumulate::BySpinc);
}

QSeries ZhatEvaluator::zhat_b(long long spinc_index, const Rat& order) const {
    if (spinc_index < 0 || spinc_index >= spincs_.count())
        throw precondition_error("unknown_spinc", "spin-c index out of range");
    return zhat_all(order)[static_cast<std::size_t>(spinc_index)];
}

QSeries ZhatEvaluator::zhat_b(const std::vector<Int>& b, const Rat& order) const {
    return zhat_b(spincs_.index_of_vector(b), order);
}

QSeries ZhatEvaluator::z0(const Rat& order) const { return run(order, Accumulate::Total)[0]; }

std::vector<QSeries> ZhatEvaluator::zhat_prime_all(const Rat& order) const {
    return run(order, Accumulate::ByClass);
}

QSeries ZhatEvaluator::zhat_prime(const FiniteAbelianGroup::Elt& h, const Rat& order) const {
    return zhat_prime_all(order)[static_cast<std::size_t>(group().index_of(h))];
}

QSeries zhat_b(const PlumbingGraph& g, long long spinc_index, const Rat& order) {
    return ZhatEvaluator(g).zhat_b(spinc_index, order);
}

QSeries z0(const PlumbingGraph& g, const Rat& order) { return ZhatEvaluator(g).z0(order); }

QSeries zhat_prime_h(const PlumbingGraph& g, const FiniteAbelianGroup::Elt& h, const Rat& order) {
    return ZhatEvaluator(g).zhat_prime(h, order);
}

}  // namespace zq
