#include "zq/voa.hpp"

#include <algorithm>

#include "zq/error.hpp"

namespace zq {

QSeries false_theta(const FalseThetaParams& params, const Rat& order) {
    auto [p, a] = params;
    if (p < 1 || a <= 0 || a >= 2 * p)
        throw precondition_error("invalid_pair", "false theta needs 0 < a < 2p");
    QSeries out = QSeries::zero(order);
    Rat four_p(make_int(4 * p));
    for (long long n = 0;; ++n) {
        Rat e = Rat(make_int(n * n)) / four_p;
        if (e > order) break;
        long long m = n % (2 * p);
        if (m == a % (2 * p))
            out.add_term(e, Rat(1));
        else if (m == (2 * p - a) % (2 * p))
            out.add_term(e, Rat(-1));
    }
    out.normalize();
    return out;
}

Rat central_charge(const SingletModel& m) {
    long long diff = m.p - m.p_prime;
    Rat c = Rat(1) - make_rat(6 * diff * diff, m.p * m.p_prime);
    c.canonicalize();
    return c;
}

Rat h_min(const SingletModel& m) {
    long long diff = m.p - m.p_prime;
    Rat h = -make_rat(diff * diff, 4 * m.p * m.p_prime);
    h.canonicalize();
    return h;
}

QSeries singlet_character(const SingletModel& m, long long r, long long s, const Rat& order) {
    if (r < 1 || r > m.p_prime || s < 1 || s > m.p)
        throw precondition_error("invalid_pair", "singlet labels need 1 <= r <= p', 1 <= s <= p");
    long long pp = m.p * m.p_prime;
    Rat four_pp(make_int(4 * pp));
    Rat sum_order = order + make_rat(1, 24) + 1;
    QSeries sum = QSeries::zero(sum_order);
    // roots 2pp'n + pr -+ p's; for (1,p) these are 2pn + (p - s) and
    // 2pn + (p + s), the two residue branches of the false theta
    for (long long n = 0;; ++n) {
        long long base = 2 * pp * n + m.p * r;
        Rat e_minus = Rat(make_int((base - m.p_prime * s) * (base - m.p_prime * s))) / four_pp;
        Rat e_plus = Rat(make_int((base + m.p_prime * s) * (base + m.p_prime * s))) / four_pp;
        if (e_minus > sum_order && e_plus > sum_order) break;
        sum.add_term(e_minus, Rat(1));
        sum.add_term(e_plus, Rat(-1));
    }
    sum.normalize();
    // 1/eta = q^{-1/24} / (q)_inf
    QSeries inv_eta = euler_inverse(order + 2).shifted(make_rat(-1, 24));
    return (sum * inv_eta).truncated(order);
}

namespace {

/// exact consistency solve of an overdetermined rational system; returns the
/// solution of A x = b or nullopt when inconsistent
std::optional<std::vector<Rat>> solve_overdetermined(std::vector<std::vector<Rat>> a,
                                                     std::vector<Rat> b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t p = rank;
        while (p < rows && a[p][col] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[rank], a[p]);
        std::swap(b[rank], b[p]);
        Rat inv = Rat(1) / a[rank][col];
        for (std::size_t j = col; j < cols; ++j) a[rank][j] *= inv;
        b[rank] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;  // inconsistent
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t i = 0; i < rank; ++i) x[pivot_cols[i]] = b[i];
    return x;
}

constexpr int kUnitShifts = 2;  // unit-monomial prefactor shifts 0..kUnitShifts-1

}  // namespace

std::optional<SingletMatch> identify_singlet(const std::vector<QSeries>& family, long long max_p) {
    std::vector<const QSeries*> members;
    for (const auto& s : family)
        if (!s.is_zero()) members.push_back(&s);
    if (members.empty()) return std::nullopt;

    SingletMatch match;
    for (const QSeries* s : members) match.leading_exponents.push_back(*s->min_exponent());
    std::sort(match.leading_exponents.begin(), match.leading_exponents.end());
    match.leading_exponents.erase(
        std::unique(match.leading_exponents.begin(), match.leading_exponents.end()),
        match.leading_exponents.end());

    // type A: every nonzero member is a single monomial, seen far enough out
    bool pure = true;
    for (const QSeries* s : members) {
        if (s->size() != 1 || !s->order() || *s->order() < *s->min_exponent() + 10) {
            pure = false;
            break;
        }
    }
    if (pure) {
        match.pure_power = true;
        match.central_charge = Rat(1);  // free boson characters
        for (const QSeries* s : members) {
            auto [e, c] = s->term_list()[0];
            match.reconstruction.push_back({SingletMatch::Piece{0, e, c}});
        }
        return match;
    }

    for (long long p = 1; p <= max_p; ++p) {
        bool all_ok = true;
        std::vector<std::vector<SingletMatch::Piece>> reconstruction;
        for (const QSeries* s : members) {
            if (!s->order()) {
                all_ok = false;
                break;
            }
            Rat delta_b = *s->min_exponent();
            long long row_count = to_ll(rat_floor(*s->order() - delta_b)) + 1;
            std::vector<Rat> rhs_base(static_cast<std::size_t>(row_count));
            for (long long row = 0; row < row_count; ++row)
                rhs_base[static_cast<std::size_t>(row)] = s->coeff(delta_b + Rat(make_int(row)));

            // all theta pieces of one member share a single monomial prefactor
            // q^sigma; the leading term pins sigma to delta_b - a^2/4p for one
            // of the participating labels, so each a gives one candidate
            bool member_ok = false;
            for (long long lead = 1; lead <= p - 1 && !member_ok; ++lead) {
                Rat sigma = delta_b - make_rat(lead * lead, 4 * p);
                struct Column {
                    long long a;
                    Rat shift;
                };
                std::vector<Column> columns;
                for (long long a = 1; a <= p - 1; ++a) {
                    Rat offset = make_rat(a * a, 4 * p) - make_rat(lead * lead, 4 * p);
                    offset.canonicalize();
                    if (offset.get_den() != 1 || offset < 0) continue;  // starts below or off-grid
                    if (Rat(offset) >= Rat(make_int(row_count))) continue;
                    columns.push_back({a, sigma});
                }
                if (columns.empty()) continue;
                for (int m = 0; m < kUnitShifts; ++m) columns.push_back({0, delta_b + m});
                if (row_count < 3 * static_cast<long long>(columns.size())) continue;

                std::vector<std::vector<Rat>> a_mat(static_cast<std::size_t>(row_count),
                                                    std::vector<Rat>(columns.size(), Rat(0)));
                for (std::size_t cidx = 0; cidx < columns.size(); ++cidx) {
                    const auto& col = columns[cidx];
                    if (col.a == 0) {
                        Rat off = col.shift - delta_b;
                        long long row = to_ll(off.get_num());
                        if (row >= 0 && row < row_count)
                            a_mat[static_cast<std::size_t>(row)][cidx] = 1;
                        continue;
                    }
                    QSeries theta =
                        false_theta({p, col.a}, *s->order() - col.shift).shifted(col.shift);
                    for (const auto& [e, c] : theta.term_list()) {
                        Rat off = e - delta_b;
                        if (off < 0 || off.get_den() != 1) continue;
                        long long row = to_ll(off.get_num());
                        if (row < row_count) a_mat[static_cast<std::size_t>(row)][cidx] = c;
                    }
                }
                auto x = solve_overdetermined(std::move(a_mat), rhs_base);
                if (!x) continue;
                std::vector<SingletMatch::Piece> pieces;
                for (std::size_t cidx = 0; cidx < columns.size(); ++cidx)
                    if ((*x)[cidx] != 0)
                        pieces.push_back({columns[cidx].a, columns[cidx].shift, (*x)[cidx]});
                reconstruction.push_back(std::move(pieces));
                member_ok = true;
            }
            if (!member_ok) {
                all_ok = false;
                break;
            }
        }
        if (all_ok) {
            match.p = p;
            match.central_charge = Rat(13) - Rat(make_int(6 * p)) - make_rat(6, p);
            match.central_charge.canonicalize();
            match.reconstruction = std::move(reconstruction);
            return match;
        }
    }
    return std::nullopt;
}

}  // namespace zq
