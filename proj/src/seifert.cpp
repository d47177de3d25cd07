#include "zq/seifert.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "zq/cyclotomic.hpp"
#include "zq/splice.hpp"
#include "zq/symexpand.hpp"

namespace zq {

SeifertData::SeifertData(long long b, std::vector<std::pair<long long, long long>> pairs)
    : b_(b), pairs_(std::move(pairs)) {
    for (const auto& [a, bi] : pairs_) {
        if (a == 1 && bi == 0) continue;  // padding pair
        if (a < 1 || bi <= 0 || bi >= a)
            throw precondition_error("invalid_pair",
                                     "Seifert pair needs 0 < b_i < a_i, got " + std::to_string(a) +
                                         "/" + std::to_string(bi));
        if (std::gcd(a, bi) != 1)
            throw precondition_error("invalid_pair", "Seifert pair must be coprime: " +
                                                         std::to_string(a) + "/" + std::to_string(bi));
    }
    while (pairs_.size() < 3) pairs_.emplace_back(1, 0);
}

SeifertData SeifertData::parse(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw input_error("Seifert data: expected \"b; a1/b1 a2/b2 ...\"");
    long long b = 0;
    try {
        b = std::stoll(text.substr(0, semi));
    } catch (const std::exception&) {
        throw input_error("Seifert data: bad leading integer");
    }
    std::vector<std::pair<long long, long long>> pairs;
    std::istringstream rest(text.substr(semi + 1));
    std::string tok;
    while (rest >> tok) {
        auto slash = tok.find('/');
        if (slash == std::string::npos)
            throw input_error("Seifert data: pair '" + tok + "' is not of the form a/b");
        try {
            pairs.emplace_back(std::stoll(tok.substr(0, slash)), std::stoll(tok.substr(slash + 1)));
        } catch (const std::exception&) {
            throw input_error("Seifert data: bad pair '" + tok + "'");
        }
    }
    if (pairs.empty()) throw input_error("Seifert data: no (a_i, b_i) pairs given");
    return SeifertData(b, std::move(pairs));
}

std::string SeifertData::format() const {
    std::ostringstream out;
    out << b_ << ";";
    for (const auto& [a, bi] : pairs_) out << " " << a << "/" << bi;
    return out.str();
}

Int SeifertData::big_a() const {
    Int a = 1;
    for (const auto& [ai, bi] : pairs_) a *= make_int(ai);
    return a;
}

Int SeifertData::abar(int i) const {
    return big_a() / make_int(pairs_[static_cast<std::size_t>(i)].first);
}

Rat SeifertData::euler_number() const {
    Rat e(make_int(-b_));
    for (const auto& [a, bi] : pairs_) e += make_rat(bi, a);
    e.canonicalize();
    return e;
}

Int SeifertData::h_order() const {
    Rat n = Rat(big_a()) * euler_number();
    n.canonicalize();
    if (n.get_den() != 1) throw internal_error("internal", "A*e failed to be an integer");
    return abs(n.get_num());
}

Int SeifertData::fiber_lcm() const {
    Int l = 1;
    for (const auto& [a, bi] : pairs_) l = lcm(l, make_int(a));
    return l;
}

std::vector<long long> neg_continued_fraction(long long a, long long b) {
    if (b <= 0 || b >= a || std::gcd(a, b) != 1)
        throw precondition_error("invalid_pair", "continued fraction needs 0 < b < a coprime");
    std::vector<long long> cs;
    while (b > 0) {
        long long c = (a + b - 1) / b;  // ceil(a/b)
        cs.push_back(c);
        long long r = c * b - a;
        a = b;
        b = r;
    }
    return cs;
}

SeifertPlumbing to_plumbing(const SeifertData& sd) {
    if (sd.euler_number() >= 0)
        throw precondition_error("not_negative_definite",
                                 "Seifert data has Euler number >= 0: " + rat_str(sd.euler_number()));
    std::vector<long long> framings{-sd.b()};
    std::vector<std::pair<int, int>> edges;
    std::vector<int> leg_leaf;
    for (const auto& [a, bi] : sd.pairs()) {
        if (a == 1) {
            leg_leaf.push_back(-1);
            continue;
        }
        auto cs = neg_continued_fraction(a, bi);
        int prev = 0;
        for (long long c : cs) {
            int v = static_cast<int>(framings.size());
            framings.push_back(-c);
            edges.emplace_back(prev, v);
            prev = v;
        }
        leg_leaf.push_back(prev);
    }
    PlumbingGraph g(std::move(framings), std::move(edges));
    return SeifertPlumbing{std::move(g), 0, std::move(leg_leaf)};
}

Rat reduction_delta(const SeifertData& sd) {
    SeifertPlumbing sp = to_plumbing(sd);
    Rat lambda = casson_walker(sp.graph);
    Int a = sd.big_a();
    int k = sd.fiber_count();
    Rat correction = Rat(a) * Rat(make_int(2 - k));
    for (int i = 0; i < k; ++i) {
        long long ai = sd.pairs()[static_cast<std::size_t>(i)].first;
        correction += Rat(sd.abar(i), make_int(ai));
    }
    Rat delta = (Rat(24) * lambda - correction) / 4;
    delta.canonicalize();
    return delta;
}

namespace {

using TPoly = std::map<long long, Int>;  // t-exponent -> integer coefficient

TPoly numerator_product(const SeifertData& sd) {
    TPoly acc{{0, Int(1)}};
    for (int i = 0; i < sd.fiber_count(); ++i) {
        long long ab = to_ll(sd.abar(i));
        TPoly next;
        for (const auto& [e, c] : acc) {
            next[e + ab] += c;
            next[e - ab] -= c;
        }
        acc = std::move(next);
    }
    return acc;
}

long long max_t_exponent(const SeifertData& sd, const Rat& order, const Rat& delta) {
    // largest |n| with delta + n^2/4A <= order
    Rat room = (order - delta) * 4 * Rat(sd.big_a());
    if (room < 0) return -1;
    Int floor_room = rat_floor(room);
    Int n;
    mpz_sqrt(n.get_mpz_t(), floor_room.get_mpz_t());
    return to_ll(n);
}

}  // namespace

QSeries reduce_z0(const SeifertData& sd, const Rat& order) {
    Rat delta = reduction_delta(sd);
    QSeries out = QSeries::zero(order);
    long long n_max = max_t_exponent(sd, order, delta);
    if (n_max < 0) return out;

    TPoly numerator = numerator_product(sd);
    long long num_span = 0;
    for (const auto& [e, c] : numerator) num_span = std::max(num_span, std::llabs(e));

    long long big_a = to_ll(sd.big_a());
    long long k = sd.fiber_count();
    long long u_bound = (n_max + num_span) / big_a + 1;
    auto stream = sym_expand(k - 2, u_bound);

    Rat four_a(make_int(4 * big_a));
    for (const auto& [m, sc] : stream)
        for (const auto& [e, nc] : numerator) {
            long long n = e + big_a * m;
            Rat exponent = delta + Rat(make_int(n * n)) / four_a;
            if (exponent > order) continue;
            out.add_term(exponent, sc * Rat(nc));
        }
    out.normalize();
    return out;
}

std::vector<QSeries> reduce_zhat_prime_all(const SeifertData& sd, const Rat& order) {
    SeifertPlumbing sp = to_plumbing(sd);
    FiniteAbelianGroup h(matrix_of(sp.graph));
    Rat delta = reduction_delta(sd);
    long long hsize = to_ll(h.order());
    std::vector<QSeries> out(static_cast<std::size_t>(hsize), QSeries::zero(order));

    long long n_max = max_t_exponent(sd, order, delta);
    if (n_max < 0) return out;

    // classes of the node and leg leaves; a padded (1,0) leg carries g_0
    FiniteAbelianGroup::Elt g0 = h.basis_class(sp.node);
    std::vector<FiniteAbelianGroup::Elt> gi;
    for (int leaf : sp.leg_leaf) gi.push_back(leaf < 0 ? g0 : h.basis_class(leaf));

    int conductor = static_cast<int>(to_ll(h.divisors().back()));
    auto chars = h.characters();
    auto elements = h.elements();
    long long big_a = to_ll(sd.big_a());
    long long k = sd.fiber_count();
    Rat four_a(make_int(4 * big_a));
    Rat half(1, 2);

    // per character: expand the twisted product into (t-exponent, root power)
    // then bucket by |n| since the Laplace image only sees n^2
    std::vector<std::map<long long, Cyclotomic>> per_char(chars.size());
    for (std::size_t c = 0; c < chars.size(); ++c) {
        auto root_power = [&](const FiniteAbelianGroup::Elt& g) {
            Rat r = h.character_exponent(chars[c], g) * Rat(make_int(conductor));
            r.canonicalize();
            return to_ll(r.get_num());
        };
        // numerator: prod_i (zeta^{r_i} t^{abar_i} - zeta^{-r_i} t^{-abar_i})
        std::map<long long, std::map<long long, Int>> acc{{0, {{0, Int(1)}}}};  // exp -> power -> coeff
        for (int i = 0; i < sd.fiber_count(); ++i) {
            long long ab = to_ll(sd.abar(i));
            long long ri = root_power(gi[static_cast<std::size_t>(i)]);
            std::map<long long, std::map<long long, Int>> next;
            for (const auto& [e, powers] : acc)
                for (const auto& [p, coeff] : powers) {
                    next[e + ab][p + ri] += coeff;
                    next[e - ab][p - ri] -= coeff;
                }
            acc = std::move(next);
        }
        long long num_span = 0;
        for (const auto& [e, powers] : acc) num_span = std::max(num_span, std::llabs(e));
        long long u_bound = (n_max + num_span) / big_a + 1;
        long long r0 = root_power(g0);
        // denominator stream at scale A with the zeta^{r0 * m} twist
        auto stream = sym_expand(k - 2, u_bound);
        std::map<long long, Cyclotomic>& sink = per_char[c];
        for (const auto& [m, sc] : stream) {
            long long shift = big_a * m;
            for (const auto& [e, powers] : acc) {
                long long n = e + shift;
                Rat exponent = delta + Rat(make_int(n * n)) / four_a;
                if (exponent > order) continue;
                for (const auto& [p, coeff] : powers) {
                    Cyclotomic term = Cyclotomic::root(conductor, p + r0 * m);
                    term *= Rat(coeff) * sc;
                    auto [it, fresh] = sink.try_emplace(n, term);
                    if (!fresh) it->second += term;
                }
            }
        }
    }

    // f_h = 1/|H| sum_chi chi(h^{-1}) * (twisted expansion)
    for (std::size_t hi = 0; hi < elements.size(); ++hi) {
        std::map<long long, Cyclotomic> total;
        for (std::size_t c = 0; c < chars.size(); ++c) {
            Rat r = h.character_exponent(chars[c], h.neg(elements[hi])) * Rat(make_int(conductor));
            r.canonicalize();
            Cyclotomic w = Cyclotomic::root(conductor, to_ll(r.get_num()));
            for (const auto& [n, val] : per_char[c]) {
                Cyclotomic prod = val * w;
                auto [it, fresh] = total.try_emplace(n, prod);
                if (!fresh) it->second += prod;
            }
        }
        QSeries& series = out[static_cast<std::size_t>(h.index_of(elements[hi]))];
        for (const auto& [n, val] : total) {
            Rat value;
            if (!val.rational_value(value))
                throw internal_error("nonrational_result",
                                     "character average failed to collapse to a rational");
            Rat exponent = delta + Rat(make_int(n * n)) / four_a;
            series.add_term(exponent, value / Rat(make_int(hsize)));
        }
        series.normalize();
    }
    return out;
}

QSeries reduce_zhat_prime(const SeifertData& sd, const FiniteAbelianGroup::Elt& h, const Rat& order) {
    SeifertPlumbing sp = to_plumbing(sd);
    FiniteAbelianGroup group(matrix_of(sp.graph));
    return reduce_zhat_prime_all(sd, order)[static_cast<std::size_t>(group.index_of(h))];
}

Int g0_order(const SeifertData& sd) {
    SeifertPlumbing sp = to_plumbing(sd);
    FiniteAbelianGroup h(matrix_of(sp.graph));
    Int order = h.element_order(h.basis_class(sp.node));
    Rat check = Rat(sd.fiber_lcm()) * abs(sd.euler_number());
    check.canonicalize();
    if (check.get_den() != 1 || check.get_num() != order)
        throw internal_error("internal", "g0 order disagrees with lcm(a_i)|e| = " + rat_str(check));
    return order;
}

Int vanishing_bound(const SeifertData& sd) {
    SeifertPlumbing sp = to_plumbing(sd);
    FiniteAbelianGroup h(matrix_of(sp.graph));
    if (h.element_order(h.basis_class(sp.node)) == 1) {
        Int bound = pow_int(Int(2), static_cast<unsigned long>(sd.fiber_count()));
        return bound < h.order() ? bound : h.order();
    }
    return h.order();
}

}  // namespace zq
