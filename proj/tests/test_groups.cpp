#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lt/groups.hpp"

using namespace lt;

TEST_CASE("gl2 order: formula vs enumeration")
{
    CHECK(gl2_order(5) == 480);
    CHECK(gl2_order(2) == 6);
    for (int ell : {2, 3, 5, 7, 11, 13}) {
        GL2Table g = enumerate_gl2(ell);
        CHECK(i64(g.size()) == gl2_order(ell));
    }
}

TEST_CASE("gl2 table: inverses and associativity spot checks")
{
    GL2Table g = enumerate_gl2(5);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 2000; ++k) {
        int i = int(rng() % u64(g.size()));
        int j = int(rng() % u64(g.size()));
        int l = int(rng() % u64(g.size()));
        CHECK(g.mul(i, g.inv(i)) == g.id());
        CHECK(g.mul(g.mul(i, j), l) == g.mul(i, g.mul(j, l)));
    }
}

TEST_CASE("B, U, H: orders, normality, quotient sizes")
{
    for (int ell : {5, 7, 11, 13}) {
        GL2Table g = enumerate_gl2(ell);
        auto B = borel_set(g);
        auto U = unipotent_set(g);
        auto H = equal_eigenvalue_set(g);
        i64 l = ell;
        CHECK(i64(B.size()) == (l - 1) * (l - 1) * l);
        CHECK(i64(U.size()) == l);
        CHECK(i64(H.size()) == (l - 1) * l);
        CHECK(is_subgroup(g, B));
        CHECK(is_subgroup(g, U));
        CHECK(is_subgroup(g, H));
        CHECK(is_normal_in(g, U, B));
        CHECK(is_normal_in(g, H, B));
        // Lagrange
        CHECK(i64(g.size()) % i64(B.size()) == 0);
        CHECK(i64(B.size()) % i64(U.size()) == 0);
        CHECK(i64(B.size()) % i64(H.size()) == 0);
        // the printed quotient orders: |B|/|U| = (l-1)^2, |B/H| = l-1
        CHECK(i64(B.size() / U.size()) == (l - 1) * (l - 1));
        CHECK(i64(B.size() / H.size()) == l - 1);
    }
}

TEST_CASE("C_a: conjugation stability and images in B/U, B/H")
{
    GL2Table g = enumerate_gl2(5);
    auto B = borel_set(g);
    auto U = unipotent_set(g);
    auto H = equal_eigenvalue_set(g);

    for (i64 a : {0, 1, 2, 3, 4}) {
        auto C = set_C_a(g, a);
        // conjugation stable: 1000 random conjugations stay inside
        std::set<int32_t> inC(C.begin(), C.end());
        std::mt19937_64 rng(5 + u64(a));
        for (int k = 0; k < 1000; ++k) {
            int32_t x = C[size_t(rng() % C.size())];
            int t = int(rng() % u64(g.size()));
            CHECK(inC.count(int32_t(g.mul(g.mul(t, x), g.inv(t)))) == 1);
        }
        // intersect with B
        std::vector<int32_t> CB;
        for (int32_t x : C)
            if (g.mat(x).c == 0)
                CB.push_back(x);
        i64 expect = (a == 0) ? 4 : 3; // l-1 or l-2 for l = 5
        CHECK(quotient_image_count(g, CB, U, B) == expect);
        if (a == 0)
            CHECK(quotient_image_count(g, CB, H, B) == 1);
    }
}

TEST_CASE("every conjugacy class of C meets B (exhaustive, l = 5)")
{
    GL2Table g = enumerate_gl2(5);
    for (i64 a : {0, 1, 2}) {
        for (int32_t x : set_C_a(g, a)) {
            bool meets = false;
            for (int t = 0; t < g.size() && !meets; ++t)
                meets = g.mat(g.mul(g.mul(t, x), g.inv(t))).c == 0;
            CHECK(meets);
        }
    }
}

TEST_CASE("quotient_image_count: contract errors")
{
    GL2Table g = enumerate_gl2(5);
    auto B = borel_set(g);
    auto U = unipotent_set(g);
    // a non-stable set: single non-scalar element of B
    std::vector<int32_t> single{B[3]};
    CHECK_THROWS_AS(quotient_image_count(g, single, U, B), contract_error);
    // trivial subgroup: identity quotient
    std::vector<int32_t> triv{int32_t(g.id())};
    auto C0 = set_C_a(g, 0);
    std::vector<int32_t> CB;
    for (int32_t x : C0)
        if (g.mat(x).c == 0)
            CB.push_back(x);
    CHECK(quotient_image_count(g, CB, triv, B) == i64(CB.size()));
}

TEST_CASE("mixed group: orders")
{
    MixedGroup m45 = mixed_group(-4, 5);
    CHECK(m45.size() == 480); // (16/4) * 120
    MixedGroup m711 = mixed_group(-7, 11);
    CHECK(m711.size() == 66000); // 50 * 1320
    // projection onto the coset factor is surjective
    std::set<int32_t> seen;
    for (auto [m, c] : m45.elems)
        seen.insert(c);
    CHECK(int(seen.size()) == m45.q.ncos());
    CHECK_THROWS_AS(mixed_group(-4, 7), domain_error); // 7 inert in Q(i)
}

TEST_CASE("mixed group: group laws on samples")
{
    MixedGroup mg = mixed_group(-4, 5);
    std::mt19937_64 rng(23);
    for (int k = 0; k < 2000; ++k) {
        int i = int(rng() % u64(mg.size()));
        int j = int(rng() % u64(mg.size()));
        int l = int(rng() % u64(mg.size()));
        CHECK(mg.mul(mg.mul(i, j), l) == mg.mul(i, mg.mul(j, l)));
        CHECK(mg.mul(i, mg.inv(i)) == mg.mul(mg.inv(i), i));
    }
}

TEST_CASE("mixed sets: cardinality relations for (-4, 5)")
{
    MixedGroup mg = mixed_group(-4, 5);
    MixedSets s = set_Ccal(mg);
    i64 l = 5;
    i64 B_order = (l - 1) * (l - 1) * l;
    CHECK(i64(s.CB.size()) <= 2 * B_order);
    CHECK(i64(s.Ucal.size()) == (l - 1) * l);
    CHECK(s.Cprime == i64(s.CB.size()) / i64(s.Ucal.size()));
    CHECK(i64(s.Bcal.size()) % i64(s.Ucal.size()) == 0); // Lagrange
    // conjugation stability of C: random conjugations
    std::set<int32_t> inC(s.C.begin(), s.C.end());
    std::mt19937_64 rng(29);
    for (int k = 0; k < 1000; ++k) {
        int32_t x = s.C[size_t(rng() % s.C.size())];
        int t = int(rng() % u64(mg.size()));
        CHECK(inC.count(int32_t(mg.mul(mg.mul(t, x), mg.inv(t)))) == 1);
    }
    // every element of C is conjugate to an element of Bcal (exhaustive)
    std::set<int32_t> inB(s.Bcal.begin(), s.Bcal.end());
    for (int32_t x : s.C) {
        bool meets = false;
        for (int t = 0; t < mg.size() && !meets; ++t)
            meets = inB.count(int32_t(mg.mul(mg.mul(t, x), mg.inv(t)))) == 1;
        CHECK(meets);
    }
}

TEST_CASE("charpoly class counts: fibers of the determinant")
{
    CharPolyCounts cc = charpoly_class_counts(5);
    CHECK(cc.group_order == 480);
    // det is surjective with equal fibers |GL2|/(l-1)
    for (i64 dt = 1; dt < 5; ++dt) {
        i64 fiber = 0;
        for (i64 t = 0; t < 5; ++t)
            fiber += cc.count[size_t(t * 5 + dt)];
        CHECK(fiber == 120);
    }
}

TEST_CASE("dense subgroup table round trip")
{
    GL2Table g = enumerate_gl2(3);
    auto B = borel_set(g);
    DenseSubgroup ds = dense_subgroup(g, B);
    CHECK(ds.members.size() == 12); // (3-1)^2*3
    // table closure was checked during construction; sanity only
    CHECK(ds.mul.size() == 144);
    // {id, unipotent of order 3} is not closed
    std::vector<int32_t> notgroup{B[0], B[2]};
    CHECK_THROWS_AS(dense_subgroup(g, notgroup), contract_error);
}
