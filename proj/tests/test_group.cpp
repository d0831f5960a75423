#include "doctest.h"

#include "galmod/group.hpp"

using namespace galmod;

TEST_CASE("cyclic group basics") {
    auto g = FiniteGroup::abelian({6});
    CHECK(g.order() == 6);
    CHECK(g.mul(2, 5) == 1);
    CHECK(g.inverse(1) == 5);
    CHECK(g.element_order(1) == 6);
    CHECK(g.element_order(2) == 3);
    CHECK(g.exponent() == 6);
    CHECK(g.describe() == "C6");
}

TEST_CASE("product of cyclic groups") {
    auto g = FiniteGroup::abelian({2, 4});
    CHECK(g.order() == 8);
    CHECK(g.exponent() == 4);
    // (1,0)*(1,0) = identity in mixed-radix indexing
    CHECK(g.mul(1, 1) == 0);
    // (0,1)*(0,1) = (0,2): indices 2, 2, 4
    CHECK(g.mul(2, 2) == 4);
}

TEST_CASE("dihedral relations") {
    for (long n : {3L, 4L, 7L}) {
        auto g = FiniteGroup::dihedral(n);
        int r = 1, s = static_cast<int>(n);
        CHECK(g.order() == 2 * n);
        CHECK(g.element_order(r) == n);
        CHECK(g.element_order(s) == 2);
        // s r s = r^{-1}
        CHECK(g.mul(g.mul(s, r), s) == g.inverse(r));
        for (int i = 0; i < n; ++i) {
            CHECK(g.mul(s, i) == static_cast<int>(n) + i);  // s * r^i = s r^i
        }
    }
    CHECK(FiniteGroup::dihedral(3).describe() == "D3");
    CHECK_FALSE(FiniteGroup::dihedral(5).is_abelian());
    CHECK(FiniteGroup::dihedral(2).is_abelian());
}

TEST_CASE("bad presentations rejected") {
    CHECK_THROWS_AS(FiniteGroup::abelian({1}), error);
    CHECK_THROWS_AS(FiniteGroup::dihedral(1), error);
}
