#include "doctest.h"

#include "galmod/maxorder.hpp"
#include "util.hpp"

using namespace galmod;

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

Order group_ring(const FiniteGroup& g) { return make_order(g, ZLattice::standard(g.order())); }

std::vector<Rat> qv(std::vector<Rat> v) { return v; }

bool is_unit_vector(const std::vector<Rat>& v, std::size_t pos, const Rat& val) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat want = i == pos ? val : Rat(0);
        if (v[i] != want && (i != pos || v[i] != -val)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("steinitz basis of the standard lattice over Q(i)") {
    auto f = NumberField::cyclotomic(4);
    auto basis = steinitz_free_basis(f, 2, ZLattice::standard(4));
    REQUIRE(basis.size() == 2);
    FMat s(f, 2, 2);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t p = 0; p < 2; ++p) s.at(p, k) = basis[k][p];
    Rat nd = nf_norm(s.det());
    CHECK((nd == 1 || nd == -1));
    CHECK(nf_eq(basis[0][0], nf_one(f)));
    CHECK(nf_is_zero(basis[0][1]));
    CHECK(nf_is_zero(basis[1][0]));
    CHECK(nf_eq(basis[1][1], nf_one(f)));
}

TEST_CASE("steinitz basis of a rank one ideal module") {
    auto f = NumberField::cyclotomic(4);
    // the ideal (1+i): Z-basis 1+i and i(1+i) = -1+i
    auto l = ZLattice::from_rows(2, {qv({Rat(1), Rat(1)}), qv({Rat(-1), Rat(1)})});
    auto basis = steinitz_free_basis(f, 1, l);
    REQUIRE(basis.size() == 1);
    FieldElem onepi = nf_add(nf_one(f), nf_gen(f));
    CHECK(ideal_eq(ideal_from_generators(f, {basis[0][0]}), ideal_from_generators(f, {onepi})));
}

TEST_CASE("steinitz basis over the rationals is a Hermite basis") {
    auto f = NumberField::rationals();
    auto l = ZLattice::from_rows(2, {qv({Rat(2), Rat(0)}), qv({Rat(0), Rat(2)}),
                                     qv({Rat(1), Rat(1)})});
    auto basis = steinitz_free_basis(f, 2, l);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0][0].c[0] == 1);
    CHECK(basis[0][1].c[0] == 1);
    CHECK(nf_is_zero(basis[1][0]));
    CHECK(basis[1][1].c[0] == 2);
}

TEST_CASE("steinitz basis rejects a lattice that is not a module") {
    auto f = NumberField::cyclotomic(4);
    auto l = ZLattice::from_rows(2, {qv({Rat(1), Rat(0)})});
    CHECK_THROWS(steinitz_free_basis(f, 1, l));
}

TEST_CASE("maximal order over the group ring of C2") {
    auto g = FiniteGroup::abelian({2});
    auto w = wedderburn(g);
    auto mo = maximal_order_containing(group_ring(g), w);

    CHECK(mo.m.lat == lattice_apply(ZLattice::standard(2), w.from_flat));
    CHECK(lattice_index(mo.m.lat, mo.a.lat) == 2);
    CHECK(mo.cond.lat == lattice_scale(mo.m.lat, Rat(2)));
    auto two = ZLattice::from_rows(1, {qv({Rat(2)})});
    for (const auto& nc : mo.comps) {
        CHECK(nc.g.lat == two);
        CHECK(nc.block == ZLattice::standard(1));
        CHECK(ideal_eq(nc.steinitz, whole_ring(nc.g.f)));
    }
}

TEST_CASE("an order that is already maximal is returned unchanged") {
    auto x = gaussian_module();
    auto a = associated_order(x, x);
    auto w = wedderburn(x.group);
    auto mo = maximal_order_containing(a, w);
    CHECK(mo.m.lat == a.lat);
    CHECK(mo.cond.lat == a.lat);
    for (const auto& nc : mo.comps) CHECK(ideal_eq(nc.g, whole_ring(nc.g.f)));
}

TEST_CASE("maximal order over the group ring of D3") {
    auto g = FiniteGroup::dihedral(3);
    auto w = wedderburn(g);
    auto mo = maximal_order_containing(group_ring(g), w);

    REQUIRE(mo.comps.size() == 3);
    CHECK(mo.comps[0].block == ZLattice::standard(1));
    CHECK(mo.comps[1].block == ZLattice::standard(1));
    CHECK(mo.comps[2].block.rank() == 4);
    CHECK(mo.m.lat.contains(mo.a.lat));
    Rat idx = lattice_index(mo.m.lat, mo.a.lat);
    CHECK(idx.get_den() == 1);
    CHECK(idx > 0);
    // the conductor always contains |G| times the maximal order
    CHECK(mo.cond.lat.contains(lattice_scale(mo.m.lat, Rat(6))));
    CHECK(mo.comps[2].g.lat.contains(qv({Rat(6)})));
}

TEST_CASE("maximal order invariants across small group rings") {
    std::vector<FiniteGroup> groups = {FiniteGroup::abelian({3}), FiniteGroup::abelian({4}),
                                       FiniteGroup::abelian({2, 2}), FiniteGroup::abelian({6}),
                                       FiniteGroup::dihedral(4), FiniteGroup::dihedral(5)};
    for (const auto& g : groups) {
        CAPTURE(g.describe());
        auto w = wedderburn(g);
        auto mo = maximal_order_containing(group_ring(g), w);
        CHECK(mo.m.lat.contains(mo.a.lat));
        Rat idx = lattice_index(mo.m.lat, mo.a.lat);
        CHECK(idx.get_den() == 1);
        CHECK(mo.cond.lat.contains(lattice_scale(mo.m.lat, Rat(g.order()))));
        for (std::size_t i = 0; i < mo.comps.size(); ++i) {
            const auto& nc = mo.comps[i];
            const auto& f = w.comps[i].field;
            FMat id = FMat::identity(f, w.comps[i].dim);
            std::vector<Rat> flat(nc.block.ambient(), Rat(0));
            for (std::size_t r = 0; r < id.rows(); ++r)
                for (std::size_t c = 0; c < id.cols(); ++c)
                    for (std::size_t t = 0; t < f.degree(); ++t)
                        flat[(r * id.cols() + c) * f.degree() + t] = id.at(r, c).c[t];
            CHECK(nc.block.contains(flat));
            CHECK(ideal_is_integral(nc.g));
            CHECK(nc.cond_block.contains(nc.f_block));
            CHECK(nc.g.lat.contains(nf_to_integral(nf_from_rat(f, Rat(g.order())))));
        }
    }
}

TEST_CASE("component generators of the gaussian integers") {
    auto x = gaussian_module();
    auto w = wedderburn(x.group);
    auto a = associated_order(x, x);
    auto mo = maximal_order_containing(a, w);
    for (auto seed : {std::uint64_t(1), std::uint64_t(5)}) {
        CAPTURE(seed);
        auto sm = split_module(x, w, seed);
        auto c0 = component_free_basis(mo, 0, sm);
        REQUIRE(c0.betas.size() == 1);
        CHECK(is_unit_vector(c0.betas[0], 0, Rat(1)));
        auto c1 = component_free_basis(mo, 1, sm);
        REQUIRE(c1.betas.size() == 1);
        CHECK(is_unit_vector(c1.betas[0], 1, Rat(1)));
    }
}

TEST_CASE("component generators of the golden ratio ring") {
    auto x = golden_module();
    auto w = wedderburn(x.group);
    auto a = associated_order(x, x);
    CHECK(a.lat == ZLattice::standard(2));
    auto mo = maximal_order_containing(a, w);
    auto sm = split_module(x, w);

    auto c0 = component_free_basis(mo, 0, sm);
    REQUIRE(c0.betas.size() == 1);
    CHECK(is_unit_vector(c0.betas[0], 0, Rat(1, 2)));

    auto c1 = component_free_basis(mo, 1, sm);
    REQUIRE(c1.betas.size() == 1);
    auto b = c1.betas[0];
    if (b[1] < 0)
        for (auto& q : b) q = -q;
    CHECK(b == qv({Rat(-1, 2), Rat(1)}));
}

TEST_CASE("component generators of regular modules") {
    for (const auto& g : {FiniteGroup::abelian({4}), FiniteGroup::dihedral(3)}) {
        CAPTURE(g.describe());
        auto w = wedderburn(g);
        auto x = regular_module(g, 1);
        auto mo = maximal_order_containing(group_ring(g), w);
        auto sm = split_module(x, w);
        for (std::size_t i = 0; i < w.comps.size(); ++i) {
            auto cf = component_free_basis(mo, i, sm);
            CHECK(cf.betas.size() == 1);
            CHECK(cf.omegas.size() == w.comps[i].dim);
            CHECK(cf.mx.rank() == w.comps[i].qdim());
            // diagonal idempotents keep the component lattice stable
            const auto& nc = mo.comps[i];
            const auto& f = w.comps[i].field;
            std::size_t n = w.comps[i].dim, qd = w.comps[i].qdim();
            for (std::size_t k = 0; k < n; ++k) {
                FMat ekk(f, n, n);
                ekk.at(k, k) = nf_one(f);
                FMat conj = nc.s * ekk * nc.s_inv;
                for (std::size_t r = 0; r < cf.mx.rank(); ++r) {
                    auto row = cf.mx.basis_row(r);
                    std::vector<Rat> out;
                    for (std::size_t slot = 0; slot < sm.x.rank; ++slot) {
                        FMat y = conj * [&] {
                            FMat mres(f, n, n);
                            for (std::size_t rr = 0; rr < n; ++rr)
                                for (std::size_t cc = 0; cc < n; ++cc) {
                                    std::vector<Rat> coef(f.degree());
                                    for (std::size_t t = 0; t < f.degree(); ++t)
                                        coef[t] = row[slot * qd + (rr * n + cc) * f.degree() + t];
                                    mres.at(rr, cc) = FieldElem{f, std::move(coef)};
                                }
                            return mres;
                        }();
                        for (std::size_t rr = 0; rr < n; ++rr)
                            for (std::size_t cc = 0; cc < n; ++cc)
                                for (std::size_t t = 0; t < f.degree(); ++t)
                                    out.push_back(y.at(rr, cc).c[t]);
                    }
                    CHECK(cf.mx.contains(out));
                }
            }
        }
    }
}

TEST_CASE("rank two module splits into two generators per component") {
    auto g = FiniteGroup::abelian({2});
    auto w = wedderburn(g);
    auto x = regular_module(g, 2);
    auto mo = maximal_order_containing(group_ring(g), w);
    auto sm = split_module(x, w);
    for (std::size_t i = 0; i < 2; ++i) {
        auto cf = component_free_basis(mo, i, sm);
        CHECK(cf.betas.size() == 2);
        CHECK(cf.omegas.size() == 2);
        CHECK(cf.mx.rank() == 2);
    }
}
