#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "zq/cyclotomic.hpp"
#include "zq/homology.hpp"

using namespace zq;
using zq::testing::e6_graph;
using zq::testing::y2_graph;

namespace {

std::vector<Int> column(const IntMat& m, int j) {
    std::vector<Int> v(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) v[static_cast<std::size_t>(i)] = m(i, j);
    return v;
}

void check_snf(const IntMat& m) {
    SmithDecomposition snf = smith_normal_form(m);
    CHECK(snf.u * m * snf.v == snf.d);
    CHECK(abs(bareiss_det(snf.u)) == 1);
    CHECK(abs(bareiss_det(snf.v)) == 1);
    auto div = snf.divisors();
    Int prod = 1;
    for (std::size_t i = 0; i < div.size(); ++i) {
        CHECK(div[i] >= 0);
        if (i + 1 < div.size() && div[i] != 0) CHECK(div[i + 1] % div[i] == 0);
        prod *= div[i];
    }
    CHECK(prod == abs(bareiss_det(m)));
    for (int i = 0; i < snf.d.rows(); ++i)
        for (int j = 0; j < snf.d.cols(); ++j)
            if (i != j) CHECK(snf.d(i, j) == 0);
}

}  // namespace

TEST_CASE("smith normal form of the standard examples") {
    auto e6 = matrix_of(e6_graph());
    check_snf(e6.entries());
    FiniteAbelianGroup h6(e6);
    CHECK(h6.order() == 3);
    CHECK(h6.divisors() == std::vector<Int>{1, 1, 1, 1, 1, 3});

    FiniteAbelianGroup h1(matrix_of(PlumbingGraph({-1}, {})));
    CHECK(h1.order() == 1);
    CHECK(h1.divisors() == std::vector<Int>{1});

    FiniteAbelianGroup h17(matrix_of(y2_graph()));
    CHECK(h17.order() == 17);
}

TEST_CASE("smith normal form on random trees") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> size(1, 10);
        check_snf(matrix_of(zq::testing::random_negative_definite_tree(size(rng), rng)).entries());
    }
}

TEST_CASE("classes of matrix columns are trivial") {
    FiniteAbelianGroup h(matrix_of(e6_graph()));
    const IntMat& m = h.matrix().entries();
    for (int j = 0; j < m.cols(); ++j) {
        CHECK(h.is_identity(h.class_of(column(m, j))));
        CHECK(h.in_lattice(column(m, j)));
    }
}

TEST_CASE("E6 leaf classes generate as expected") {
    // vertex 0 is the node; leaves are 1 (short leg), 3 and 5 (long legs)
    FiniteAbelianGroup h(matrix_of(e6_graph()));
    auto g0 = h.basis_class(0);
    auto g1 = h.basis_class(1);
    auto g2 = h.basis_class(3);
    auto g3 = h.basis_class(5);
    CHECK(h.is_identity(g0));
    CHECK(h.is_identity(g1));
    CHECK(h.element_order(g2) == 3);
    CHECK(g3 == h.add(g2, g2));
    CHECK(!h.in_lattice(h.lift(g2)));
    CHECK(h.class_of(h.lift(g2)) == g2);
}

TEST_CASE("spin-c sets of the standard examples") {
    SpincSet e6(e6_graph());
    CHECK(e6.count() == 3);
    int fixed = 0;
    for (long long i = 0; i < e6.count(); ++i) {
        CHECK(e6.involution(e6.involution(i)) == i);
        if (e6.involution(i) == i) ++fixed;
    }
    CHECK(fixed == 1);  // two classes swapped, one spin

    SpincSet s3(PlumbingGraph({-1}, {}));
    CHECK(s3.count() == 1);
    CHECK(s3.representative(0) == std::vector<Int>{0});

    SpincSet y2(y2_graph());
    CHECK(y2.count() == 17);
}

TEST_CASE("representatives are pairwise inequivalent and characteristic") {
    for (const PlumbingGraph& g : {e6_graph(), zq::testing::e12_graph()}) {
        SpincSet sc(g);
        const auto& h = sc.group();
        for (long long i = 0; i < sc.count(); ++i) {
            CHECK(sc.index_of_vector(sc.representative(i)) == i);
            for (long long j = i + 1; j < sc.count(); ++j) {
                // difference of distinct representatives must not lie in 2MZ^s
                std::vector<Int> diff = sc.representative(i);
                for (std::size_t t = 0; t < diff.size(); ++t) {
                    diff[t] -= sc.representative(j)[t];
                    diff[t] /= 2;
                }
                CHECK(!h.in_lattice(diff));
            }
        }
    }
}

TEST_CASE("c1 is a bijection exactly for odd order") {
    SpincSet e6(e6_graph());
    std::set<long long> image;
    for (long long i = 0; i < e6.count(); ++i) image.insert(e6.group().index_of(e6.c1(i)));
    CHECK(image.size() == 3);

    SpincSet y2(y2_graph());
    image.clear();
    for (long long i = 0; i < y2.count(); ++i) image.insert(y2.group().index_of(y2.c1(i)));
    CHECK(image.size() == 17);

    // spin class: b fixed by the involution has c1(b) = -c1(b)
    for (long long i = 0; i < e6.count(); ++i)
        if (e6.is_spin(i)) CHECK(e6.c1(i) == e6.group().neg(e6.c1(i)));

    // even order: D4 has H = Z/2 x Z/2, c1 image is the single spin fiber base
    SpincSet d4(PlumbingGraph({-2, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(d4.count() == 4);
    int spin = 0;
    for (long long i = 0; i < d4.count(); ++i)
        if (d4.is_spin(i)) ++spin;
    CHECK(spin == 4);  // all 2-torsion, everything is spin here
}

TEST_CASE("fixed points of the involution count the 2-torsion") {
    std::mt19937_64 rng(59);
    int done = 0;
    while (done < 25) {
        std::uniform_int_distribution<int> size(1, 8);
        PlumbingGraph g = zq::testing::random_negative_definite_tree(size(rng), rng);
        FiniteAbelianGroup h(matrix_of(g));
        if (h.order() > 400) continue;
        ++done;
        SpincSet sc(g);
        long long fixed = 0;
        for (long long i = 0; i < sc.count(); ++i)
            if (sc.involution(i) == i) ++fixed;
        long long torsion = 0;
        for (const auto& e : h.elements())
            if (h.is_identity(h.add(e, e))) ++torsion;
        CHECK(fixed == torsion);
    }
}

TEST_CASE("linking form on E6") {
    FiniteAbelianGroup h(matrix_of(e6_graph()));
    auto omega = h.basis_class(3);
    for (const auto& e : h.elements()) CHECK(h.linking(h.identity(), e) == 0);
    Rat self = h.linking(omega, omega);
    CHECK((self == make_rat(1, 3) || self == make_rat(2, 3)));
    // theta is injective
    std::set<std::string> seen;
    for (const auto& e : h.elements()) {
        auto chi = h.theta(e);
        std::string key;
        for (const auto& c : chi.comps) key += c.get_str() + ",";
        CHECK(seen.insert(key).second);
    }
}

TEST_CASE("characters of Z/3") {
    FiniteAbelianGroup h(matrix_of(e6_graph()));
    auto gen = h.basis_class(3);
    auto chars = h.characters();
    REQUIRE(chars.size() == 3);
    std::multiset<Rat> exps;
    for (const auto& chi : chars) exps.insert(h.character_exponent(chi, gen));
    CHECK(exps == std::multiset<Rat>{Rat(0), make_rat(1, 3), make_rat(2, 3)});
    // additive in the element: chi(h1+h2) = chi(h1)+chi(h2) mod 1
    for (const auto& chi : chars)
        CHECK(h.character_exponent(chi, h.add(gen, gen)) ==
              mod1(h.character_exponent(chi, gen) + h.character_exponent(chi, gen)));
    // closed under negation
    for (const auto& chi : chars) {
        bool found = false;
        for (const auto& other : chars) {
            bool all = true;
            for (const auto& e : h.elements())
                if (h.character_exponent(other, e) != mod1(-h.character_exponent(chi, e))) {
                    all = false;
                    break;
                }
            if (all) {
                found = true;
                break;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("character orthogonality with exact cyclotomic bookkeeping") {
    std::mt19937_64 rng(67);
    int done = 0;
    while (done < 10) {
        std::uniform_int_distribution<int> size(1, 7);
        PlumbingGraph g = zq::testing::random_negative_definite_tree(size(rng), rng);
        FiniteAbelianGroup h(matrix_of(g));
        if (h.order() > 60) continue;
        ++done;
        int n = static_cast<int>(to_ll(h.divisors().back()));  // exponent of H
        auto elements = h.elements();
        auto chars = h.characters();
        for (std::size_t a = 0; a < elements.size(); ++a)
            for (std::size_t b = 0; b < elements.size(); ++b) {
                Cyclotomic acc(n);
                for (const auto& chi : chars) {
                    Rat diff = mod1(h.character_exponent(chi, elements[a]) -
                                    h.character_exponent(chi, elements[b]));
                    Rat scaled = diff * Rat(make_int(n));
                    scaled.canonicalize();
                    REQUIRE(scaled.get_den() == 1);
                    acc += Cyclotomic::root(n, to_ll(scaled.get_num()));
                }
                Rat value;
                REQUIRE(acc.rational_value(value));
                CHECK(value == (a == b ? Rat(h.order()) : Rat(0)));
            }
    }
}

TEST_CASE("theta is bijective for every tested negative-definite matrix") {
    std::mt19937_64 rng(71);
    int done = 0;
    while (done < 15) {
        std::uniform_int_distribution<int> size(1, 8);
        PlumbingGraph g = zq::testing::random_negative_definite_tree(size(rng), rng);
        FiniteAbelianGroup h(matrix_of(g));
        if (h.order() > 300) continue;
        ++done;
        std::set<std::string> images;
        for (const auto& e : h.elements()) {
            auto chi = h.theta(e);
            std::string key;
            for (const auto& c : chi.comps) key += c.get_str() + ",";
            images.insert(key);
        }
        CHECK(images.size() == h.elements().size());
    }
}

TEST_CASE("cyclotomic ring basics") {
    // 1 + zeta + zeta^2 = 0 in conductor 3 even though the representation is nonzero
    Cyclotomic z(3);
    z += Cyclotomic::root(3, 0);
    z += Cyclotomic::root(3, 1);
    z += Cyclotomic::root(3, 2);
    CHECK(!z.is_zero_representation());
    Rat v;
    REQUIRE(z.rational_value(v));
    CHECK(v == 0);

    // zeta_6 is not rational; zeta_6^3 = -1 is
    Rat w;
    CHECK(!Cyclotomic::root(6, 1).rational_value(w));
    REQUIRE(Cyclotomic::root(6, 3).rational_value(w));
    CHECK(w == -1);

    // products respect the ring structure
    Cyclotomic p = Cyclotomic::root(12, 5) * Cyclotomic::root(12, 7);
    REQUIRE(p.rational_value(w));
    CHECK(w == 1);
}
