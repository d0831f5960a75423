#include "doctest.h"

#include "galmod/gmodule.hpp"
#include "util.hpp"

using namespace galmod;
using galmod::testutil::Rng;

namespace {

// Z[i] with complex conjugation
GModuleLattice gaussian_module() {
    auto g = FiniteGroup::abelian({2});
    QMatrix a1(2, 2);
    a1.at(0, 0) = 1;
    a1.at(1, 1) = -1;
    return make_module(g, 1, {QMatrix::identity(2), a1}, ZLattice::standard(2));
}

// Z[phi] in Q(sqrt5), phi^2 = phi + 1, sigma(phi) = 1 - phi
GModuleLattice golden_module() {
    auto g = FiniteGroup::abelian({2});
    QMatrix a1(2, 2);
    a1.at(0, 0) = 1;
    a1.at(0, 1) = 1;
    a1.at(1, 1) = -1;
    return make_module(g, 1, {QMatrix::identity(2), a1}, ZLattice::standard(2));
}

std::vector<Rat> rnd_alg(Rng& rng, std::size_t n, int range = 3) {
    std::uniform_int_distribution<int> d(-range, range);
    std::vector<Rat> v(n);
    for (auto& x : v) x = Rat(d(rng));
    return v;
}

bool preserves(const GModuleLattice& x, const std::vector<Rat>& lambda) {
    for (std::size_t i = 0; i < x.lat.rank(); ++i)
        if (!x.lat.contains(act_on(x, lambda, x.lat.basis_row(i)))) return false;
    return true;
}

}  // namespace

TEST_CASE("trace pairing values") {
    auto g = FiniteGroup::abelian({3});
    CHECK(trace_pair(g, ga_from_element(g, 1), ga_from_element(g, 2)) == 1);
    CHECK(trace_pair(g, ga_from_element(g, 1), ga_from_element(g, 1)) == 0);
    CHECK(trace_pair(g, ga_from_element(g, 0), ga_from_element(g, 0)) == 1);
    auto c2 = FiniteGroup::abelian({2});
    // t(1 + s, 1 - s) = 1 - 1 = 0
    CHECK(trace_pair(c2, {Rat(1), Rat(1)}, {Rat(1), Rat(-1)}) == 0);
    auto p = trace_pairing(g, 2);
    std::vector<Rat> a(6, Rat(0)), b(6, Rat(0));
    a[1] = 1;
    b[2] = 1;  // first component g vs g^2
    CHECK(s_pair(p, a, b) == 1);
    a[4] = 1;
    b[5] = 1;  // second component g vs g^2 adds another 1
    CHECK(s_pair(p, a, b) == 2);
}

TEST_CASE("dual lattices under the trace form") {
    auto g = FiniteGroup::abelian({2});
    auto p = trace_pairing(g, 1);
    CHECK(dual_lattice(ZLattice::standard(2), p) == ZLattice::standard(2));
    auto idem = ZLattice::from_rows(
        2, {{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(-1, 2)}});
    auto dual = dual_lattice(idem, p);
    CHECK(dual == ZLattice::from_rows(2, {{Rat(1), Rat(1)}, {Rat(0), Rat(2)}}));
    CHECK(dual_lattice(dual, p) == idem);

    Rng rng(1223);
    auto d3 = FiniteGroup::dihedral(3);
    auto pd = trace_pairing(d3, 1);
    for (int t = 0; t < 10; ++t) {
        auto l = galmod::testutil::rnd_lattice(rng, 6);
        CHECK(dual_lattice(dual_lattice(l, pd), pd) == l);
        auto sub = galmod::testutil::sublattice_by(l, galmod::testutil::rnd_nonsingular(rng, 6));
        CHECK(dual_lattice(sub, pd).contains(dual_lattice(l, pd)));
        if (!(sub == l)) CHECK(!dual_lattice(l, pd).contains(dual_lattice(sub, pd)));
    }
}

TEST_CASE("pairing map and its defining identity") {
    auto c2 = FiniteGroup::abelian({2});
    auto p1 = trace_pairing(c2, 1);
    CHECK(pairing_map(p1, ga_one(c2), ga_one(c2)) == ga_one(c2));
    CHECK(pairing_map(p1, ga_one(c2), {Rat(0), Rat(0)}) == std::vector<Rat>(2, Rat(0)));

    Rng rng(88);
    for (auto g : {FiniteGroup::abelian({4}), FiniteGroup::dihedral(3)}) {
        for (std::size_t d : {std::size_t(1), std::size_t(2)}) {
            auto p = trace_pairing(g, d);
            std::size_t n = g.order();
            for (int t = 0; t < 25; ++t) {
                auto mu = rnd_alg(rng, n * d), nu = rnd_alg(rng, n * d);
                auto delta = rnd_alg(rng, n);
                CHECK(trace_pair(g, pairing_map(p, mu, nu), delta) ==
                      s_pair(p, nu, tuple_left_mult(p, delta, mu)));
            }
        }
    }
}

TEST_CASE("module construction rejects bad data") {
    auto g = FiniteGroup::abelian({2});
    // trivial action does not carry the regular character
    CHECK_THROWS(make_module(g, 1, {QMatrix::identity(2), QMatrix::identity(2)},
                             ZLattice::standard(2)));
    // unstable lattice
    QMatrix a1(2, 2);
    a1.at(0, 1) = 1;
    a1.at(1, 0) = 1;
    auto skew = ZLattice::from_rows(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(2)}});
    CHECK_THROWS(make_module(g, 1, {QMatrix::identity(2), a1}, skew));
}

TEST_CASE("associated order of the gaussian integers") {
    auto x = gaussian_module();
    auto a = associated_order(x, x);
    CHECK(a.lat == ZLattice::from_rows(2, {{Rat(1), Rat(0)}, {Rat(1, 2), Rat(1, 2)}}));
    // exactness oracle: a rational element preserves X iff it lies in the order
    for (int num0 = -4; num0 <= 4; ++num0)
        for (int num1 = -4; num1 <= 4; ++num1)
            for (int den = 1; den <= 4; ++den) {
                std::vector<Rat> lam{Rat(num0, den), Rat(num1, den)};
                for (auto& q : lam) q.canonicalize();
                CHECK(preserves(x, lam) == a.lat.contains(lam));
            }
}

TEST_CASE("associated order of the golden ratio ring is the group ring") {
    auto x = golden_module();
    auto a = associated_order(x, x);
    CHECK(a.lat == ZLattice::standard(2));
    // phi generates X freely over Z[C2]
    CHECK(order_span(a, x, {{Rat(0), Rat(1)}}) == x.lat);
    // 1 does not
    CHECK(order_span(a, x, {{Rat(1), Rat(0)}}) != x.lat);
}

TEST_CASE("associated order of a regular lattice is the group ring") {
    for (auto g : {FiniteGroup::abelian({4}), FiniteGroup::dihedral(3)}) {
        auto x = regular_module(g, 1);
        CHECK(associated_order(x, x).lat == ZLattice::standard(g.order()));
    }
    auto c2 = FiniteGroup::abelian({2});
    auto x2 = regular_module(c2, 2);
    CHECK(associated_order(x2, x2).lat == ZLattice::standard(2));
}

TEST_CASE("associated orders are orders") {
    Rng rng(5005);
    auto x = gaussian_module();
    auto a = associated_order(x, x);
    CHECK(a.lat.contains(ga_one(a.group)));
    for (std::size_t i = 0; i < a.lat.rank(); ++i)
        for (std::size_t j = 0; j < a.lat.rank(); ++j)
            CHECK(a.lat.contains(ga_mul(a.group, a.lat.basis_row(i), a.lat.basis_row(j))));
    // different seeds agree
    CHECK(associated_order(x, x, 7).lat == a.lat);
    CHECK(associated_order(x, x, 99).lat == a.lat);
}

TEST_CASE("conductors") {
    auto c2 = FiniteGroup::abelian({2});
    auto zg = make_order(c2, ZLattice::standard(2));
    auto mx = make_order(c2, ZLattice::from_rows(
                                 2, {{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(-1, 2)}}));
    SUBCASE("conductor of an order in itself is the order") {
        CHECK(conductor(zg, zg).lat == zg.lat);
        CHECK(conductor(mx, mx).lat == mx.lat);
    }
    SUBCASE("group ring inside the maximal order of Q[C2]") {
        auto c = conductor(zg, mx);
        CHECK(c.lat == ZLattice::from_rows(2, {{Rat(1), Rat(1)}, {Rat(0), Rat(2)}}));
        // contained in the smaller order, contains [m : a] * m
        CHECK(zg.lat.contains(c.lat));
        Rat idx = lattice_index(mx.lat, zg.lat);
        CHECK(c.lat.contains(lattice_scale(mx.lat, idx)));
    }
    SUBCASE("group ring inside the maximal order of Q[C4]") {
        auto c4 = FiniteGroup::abelian({4});
        auto w = wedderburn(c4);
        auto mo = make_order(c4, lattice_apply(ZLattice::standard(4), w.from_flat));
        auto zg4 = make_order(c4, ZLattice::standard(4));
        auto c = conductor(zg4, mo);
        CHECK(zg4.lat.contains(c.lat));
        CHECK(mo.lat.contains(zg4.lat));
        Rat idx = lattice_index(mo.lat, zg4.lat);
        CHECK(c.lat.contains(lattice_scale(mo.lat, idx)));
        // the conductor is an ideal of the maximal order
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(c.lat.contains(
                    ga_mul(c4, mo.lat.basis_row(i), c.lat.basis_row(j))));
    }
}
