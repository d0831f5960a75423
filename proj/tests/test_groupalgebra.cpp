#include "doctest.h"

#include "galmod/groupalgebra.hpp"
#include "util.hpp"

using namespace galmod;
using galmod::testutil::Rng;

namespace {

std::vector<Rat> rnd_alg(Rng& rng, const FiniteGroup& g, int range = 3) {
    std::uniform_int_distribution<int> d(-range, range);
    std::vector<Rat> v(g.order());
    for (auto& x : v) x = Rat(d(rng));
    return v;
}

}  // namespace

TEST_CASE("component shapes for small groups") {
    {
        auto w = wedderburn(FiniteGroup::abelian({3}));
        REQUIRE(w.comps.size() == 2);
        CHECK(w.comps[0].field.kind() == FieldKind::rationals);
        CHECK(w.comps[1].field.kind() == FieldKind::cyclotomic);
        CHECK(w.comps[1].field.conductor() == 3);
        CHECK(w.comps[0].dim == 1);
        CHECK(w.comps[1].dim == 1);
    }
    {
        auto w = wedderburn(FiniteGroup::abelian({6}));
        REQUIRE(w.comps.size() == 4);
        // orbits of characters of orders 1, 6, 3, 2 in scan order
        CHECK(w.comps[0].field.degree() == 1);
        CHECK(w.comps[1].field.conductor() == 3);
        CHECK(w.comps[1].field.degree() == 2);
        CHECK(w.comps[2].field.conductor() == 3);
        CHECK(w.comps[3].field.degree() == 1);
    }
    {
        auto w = wedderburn(FiniteGroup::abelian({2, 4}));
        REQUIRE(w.comps.size() == 6);
        std::size_t rationals = 0, quartic = 0;
        for (const auto& c : w.comps) {
            if (c.field.kind() == FieldKind::rationals) ++rationals;
            if (c.field.kind() == FieldKind::cyclotomic && c.field.conductor() == 4) ++quartic;
        }
        CHECK(rationals == 4);
        CHECK(quartic == 2);
    }
    {
        auto w = wedderburn(FiniteGroup::dihedral(3));
        REQUIRE(w.comps.size() == 3);
        CHECK(w.comps[0].dim == 1);
        CHECK(w.comps[1].dim == 1);
        CHECK(w.comps[2].dim == 2);
        CHECK(w.comps[2].field.kind() == FieldKind::rationals);
    }
    {
        auto w = wedderburn(FiniteGroup::dihedral(5));
        REQUIRE(w.comps.size() == 3);
        CHECK(w.comps[2].dim == 2);
        CHECK(w.comps[2].field.kind() == FieldKind::real_cyclotomic);
        CHECK(w.comps[2].field.conductor() == 5);
        CHECK(w.comps[2].qdim() == 8);
    }
    {
        auto w = wedderburn(FiniteGroup::dihedral(6));
        REQUIRE(w.comps.size() == 6);  // four 1-dim, two 2-dim over Q
        std::size_t total = 0;
        for (const auto& c : w.comps) total += c.qdim();
        CHECK(total == 12);
    }
}

TEST_CASE("construction succeeds across the whole catalog") {
    // every admitted group; the constructor itself validates the image maps,
    // the dimension count and the idempotents
    std::vector<FiniteGroup> all;
    for (long n = 1; n <= 20; ++n) {
        // abelian groups of order n in divisor-chain form d1 | d2 | ...
        std::vector<std::vector<long>> stack{{}};
        std::vector<std::vector<long>> shapes;
        // enumerate multisets of factors with product n, each dividing the next
        struct Walk {
            long n;
            std::vector<std::vector<long>>& shapes;
            void go(long rest, long min, std::vector<long>& cur) {
                if (rest == 1) {
                    shapes.push_back(cur);
                    return;
                }
                for (long d = min; d <= rest; ++d) {
                    if (rest % d) continue;
                    cur.push_back(d);
                    go(rest / d, d, cur);
                    cur.pop_back();
                }
            }
        } walk{n, shapes};
        std::vector<long> cur;
        walk.go(n, 2, cur);
        if (n == 1) shapes.push_back({});
        for (auto& s : shapes) all.push_back(FiniteGroup::abelian(s));
    }
    for (long n = 2; n <= 10; ++n) all.push_back(FiniteGroup::dihedral(n));
    for (const auto& g : all) {
        auto w = wedderburn(g);
        std::size_t total = 0;
        for (const auto& c : w.comps) total += c.qdim();
        CHECK(total == static_cast<std::size_t>(g.order()));
    }
}

TEST_CASE("flattening is a ring isomorphism") {
    Rng rng(60901);
    for (auto g : {FiniteGroup::abelian({5}), FiniteGroup::abelian({2, 6}),
                   FiniteGroup::dihedral(4), FiniteGroup::dihedral(5),
                   FiniteGroup::dihedral(7)}) {
        auto w = wedderburn(g);
        for (int t = 0; t < 20; ++t) {
            auto a = rnd_alg(rng, g), b = rnd_alg(rng, g);
            auto fa = flat_of(w, a), fb = flat_of(w, b);
            auto fab = flat_of(w, ga_mul(g, a, b));
            for (std::size_t i = 0; i < w.comps.size(); ++i) {
                auto pa = block_of_flat(w, i, fa), pb = block_of_flat(w, i, fb);
                CHECK(block_of_flat(w, i, fab).equals(pa * pb));
            }
            CHECK(algebra_of_flat(w, fa) == a);
        }
        // the identity maps to the identity in every block
        auto fone = flat_of(w, ga_one(g));
        for (std::size_t i = 0; i < w.comps.size(); ++i)
            CHECK(block_of_flat(w, i, fone).equals(
                FMat::identity(w.comps[i].field, w.comps[i].dim)));
    }
}

TEST_CASE("central idempotents of the cyclic group of order three") {
    auto g = FiniteGroup::abelian({3});
    auto w = wedderburn(g);
    CHECK(w.comps[0].idempotent == std::vector<Rat>{Rat(1, 3), Rat(1, 3), Rat(1, 3)});
    CHECK(w.comps[1].idempotent == std::vector<Rat>{Rat(2, 3), Rat(-1, 3), Rat(-1, 3)});
}

TEST_CASE("idempotents are central and orthogonal") {
    Rng rng(117);
    for (auto g : {FiniteGroup::abelian({8}), FiniteGroup::dihedral(6),
                   FiniteGroup::abelian({2, 2, 3})}) {
        auto w = wedderburn(g);
        for (std::size_t i = 0; i < w.comps.size(); ++i) {
            for (std::size_t j = 0; j < w.comps.size(); ++j) {
                auto prod = ga_mul(g, w.comps[i].idempotent, w.comps[j].idempotent);
                if (i == j)
                    CHECK(prod == w.comps[i].idempotent);
                else
                    CHECK(prod == std::vector<Rat>(g.order(), Rat(0)));
            }
            auto x = rnd_alg(rng, g);
            CHECK(ga_mul(g, x, w.comps[i].idempotent) == ga_mul(g, w.comps[i].idempotent, x));
        }
    }
}

TEST_CASE("degenerate dihedral group splits into four characters") {
    // D2 is C2 x C2; the four components must be distinct rational characters
    auto g = FiniteGroup::dihedral(2);
    auto w = wedderburn(g);
    REQUIRE(w.comps.size() == 4);
    for (const auto& c : w.comps) {
        CHECK(c.dim == 1);
        CHECK(c.field.degree() == 1);
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            bool same = true;
            for (std::size_t a = 0; a < 4; ++a)
                same = same && w.comps[i].images[a].equals(w.comps[j].images[a]);
            CHECK_FALSE(same);
        }
}

TEST_CASE("dihedral two dimensional image relations") {
    auto g = FiniteGroup::dihedral(5);
    auto w = wedderburn(g);
    const auto& c = w.comps[2];
    auto r = c.images[1], s = c.images[5];
    CHECK((s * s).equals(FMat::identity(c.field, 2)));
    CHECK((s * r * s).equals(c.images[g.inverse(1)]));
    // trace of the rotation is 2 cos(2 pi / 5), the field generator
    CHECK(nf_eq(nf_add(r.at(0, 0), r.at(1, 1)), nf_gen(c.field)));
    auto p = r;
    for (int i = 1; i < 5; ++i) p = p * r;
    CHECK(p.equals(FMat::identity(c.field, 2)));
}
