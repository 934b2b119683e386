#include <doctest.h>

#include "flmod/arith.hpp"
#include "flmod/laurent.hpp"

using namespace flmod;
using namespace flmod::laurent;
using arith::pd_exponent;

TEST_CASE("ring ops: v+ v- = p, structure constants") {
    auto B3 = RingDescriptor::make(RingKind::B, 3, 1, 16, true);
    CHECK(vplus(B3) * vminus(B3) == BElement(B3, {{0, Rat(3)}}));
    // p=3: g2 * g3 = 3^(e(2)+e(3)-e(5)) g5 = g5, using e(2)=e(3)=2, e(5)=4
    CHECK(pd_exponent(3, 5) == 4);
    CHECK(g_basis(B3, 2) * g_basis(B3, 3) == g_basis(B3, 5));
    // p=2: g1 * g1 = 2 g2
    auto B2 = RingDescriptor::make(RingKind::B, 2, 1, 16, true);
    CHECK(g_basis(B2, 1) * g_basis(B2, 1) == g_basis(B2, 2).mul_int(2));
}

TEST_CASE("structure constants exhaustively: g_i g_j = p^(e(i)+e(j)-e(i+j)) g_(i+j)") {
    for (long p : {2L, 3L, 5L}) {
        auto ring = RingDescriptor::make(RingKind::B, p, 1, 24, true);
        for (int i = -12; i <= 12; ++i)
            for (int j = -12; j <= 12; ++j) {
                long e = pd_exponent(p, i) + pd_exponent(p, j) - pd_exponent(p, i + j);
                REQUIRE(e >= 0);
                CHECK(g_basis(ring, i) * g_basis(ring, j) ==
                      g_basis(ring, i + j).mul_int(pow_int(Int(p), e)));
            }
        // v- g_i = p^(e(i)-e(i-1)) g_(i-1))
        for (int i = -12; i <= 12; ++i) {
            long e = pd_exponent(p, i) - pd_exponent(p, i - 1);
            REQUIRE(e >= 0);
            CHECK(vminus(ring) * g_basis(ring, i) ==
                  g_basis(ring, i - 1).mul_int(pow_int(Int(p), e)));
        }
    }
}

TEST_CASE("integrality predicate") {
    auto B2 = RingDescriptor::make(RingKind::B, 2, 1, 8, true);
    // v+^4/8: val = -3 >= e(4)-4 = 1-4 = -3
    CHECK(integrality_check(BElement(B2, {{4, Rat(1, 8)}})).integral);
    // v+/p fails at degree 1 with gap 1
    auto w = integrality_check(BElement(B2, {{1, Rat(1, 2)}}));
    CHECK_FALSE(w.integral);
    CHECK(w.degree == 1);
    CHECK(w.gap == 1);
    // v-^2 integral
    CHECK(integrality_check(vminus(B2).pow(2)).integral);
    // gamma_n always integral
    for (long p : {2L, 3L, 5L}) {
        auto ring = RingDescriptor::make(RingKind::B, p, 1, 16, true);
        for (long n = 0; n <= 16; ++n) CHECK(integrality_check(gamma(ring, n)).integral);
    }
}

TEST_CASE("gamma basics") {
    auto B2 = RingDescriptor::make(RingKind::B, 2, 1, 8, true);
    CHECK(gamma(B2, 2) == BElement(B2, {{2, Rat(1, 2)}}));
    CHECK(gamma(B2, 0) == BElement(B2, {{0, Rat(1)}}));
    CHECK(gamma(B2, 2).mul_int(2) == vplus(B2).pow(2));  // 2 gamma_2 = v+^2 at p=2
}

TEST_CASE("pd relation report") {
    for (long p : {2L, 3L}) {
        auto rep = verify_pd_relations(p, 2, static_cast<int>(p * p + p));
        CHECK(rep.all_pass());
        CHECK(rep.cases.size() == 4);
    }
    // p=3, n=1: v-^3 gamma_3 = 27/6, a 3-adic integer of valuation 2
    auto B3 = RingDescriptor::make(RingKind::B, 3, 1, 12, true);
    BElement lhs = vminus(B3).pow(3) * gamma(B3, 3);
    CHECK(lhs == BElement(B3, {{0, Rat(27, 6)}}));
    CHECK(val_p(Rat(27, 6), Int(3)) == 2);
    // p=2, n=2: 4!/(2!)^2 gamma_4 = gamma_2^2, i.e. 6 gamma_4 = gamma_2^2
    auto B2 = RingDescriptor::make(RingKind::B, 2, 1, 8, true);
    CHECK(gamma(B2, 4).mul_int(6) == gamma(B2, 2) * gamma(B2, 2));
}

TEST_CASE("reduce_mod to the g basis") {
    auto B2 = RingDescriptor::make(RingKind::B, 2, 2, 8, true);
    // gamma_2 = g_2 for p=2 since e(2) = 1
    auto r = reduce_mod(gamma(B2, 2), 1);
    CHECK(r.coeffs() == std::map<int, Int>{{2, Int(1)}});
    // p*g_1 mod p = 0
    CHECK(reduce_mod(g_basis(B2, 1).mul_int(2), 1).is_zero());
    // v- mod p = g_(-1)
    CHECK(reduce_mod(vminus(B2), 1).coeffs() == std::map<int, Int>{{-1, Int(1)}});
    // non-integral input rejected
    CHECK_THROWS_AS(reduce_mod(BElement(B2, {{1, Rat(1, 2)}}), 1), DomainError);
}

TEST_CASE("GElement arithmetic mod p") {
    auto ring = RingDescriptor::make(RingKind::B_mod_p, 2, 1, 8, true);
    GElement g1(ring, {{1, Int(1)}});
    // g1*g1 = 2 g2 = 0 mod 2
    CHECK((g1 * g1).is_zero());
    GElement gm1(ring, {{-1, Int(1)}});
    // g1 * g_(-1) = p^(1+0-0) g0 = 0 mod 2
    CHECK((g1 * gm1).is_zero());
    CHECK(g1 + g1 == GElement(ring));
    CHECK(g1.one() * g1 == g1);
}

TEST_CASE("C2 kind: v+^p v- = 0") {
    auto c2 = RingDescriptor::make(RingKind::C2, 3, 1, 9, true);
    GElement vp3(c2, {{3, Int(1)}});
    GElement vm(c2, {{-1, Int(1)}});
    CHECK((vp3 * vm).is_zero());
    CHECK(vp3 * vp3 == GElement(c2, {{6, Int(1)}}));
    CHECK(vm * vm == GElement(c2, {{-2, Int(1)}}));
    CHECK_THROWS_AS(GElement(c2, {{2, Int(1)}}), DomainError);  // degree 2 not in C2
}

TEST_CASE("A kind enforces p-integral coefficients; A -> B index") {
    auto A = RingDescriptor::make(RingKind::A, 3, 1, 8, true);
    CHECK_THROWS_AS(BElement(A, {{1, Rat(1, 3)}}), DomainError);
    CHECK(vplus(A) * vminus(A) == BElement(A, {{0, Rat(3)}}));
    for (long p : {2L, 3L, 5L}) {
        for (long i = 0; i < p; ++i) CHECK(a_to_b_index_valuation(p, i) == 0);
        CHECK(a_to_b_index_valuation(p, p) == 1);  // B^p = W v+^p/p strictly larger
    }
}

TEST_CASE("window truncation: silent flag vs strict error") {
    auto lax = RingDescriptor::make(RingKind::B, 2, 1, 3, false);
    BElement x(lax, {{3, Rat(1)}});
    BElement sq = x * x;  // degree 6 out the window
    CHECK(sq.is_zero());
    CHECK(sq.truncated());
    auto strict = RingDescriptor::make(RingKind::B, 2, 1, 3, true);
    BElement y(strict, {{3, Rat(1)}});
    CHECK_THROWS_AS(y * y, TruncationError);
}
