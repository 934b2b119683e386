#include <doctest.h>

#include "flmod/arith.hpp"

#include <random>

using namespace flmod;
using namespace flmod::arith;

namespace {

/* Independent oracle: minimize ord_p(p^m/m!) with exact big-integer factorials,
   the p-part stripped as the product grows; best[n] = min over m in [n, 4p(nmax+1)]. */
std::vector<long> mazur_oracle(long p, long nmax) {
    long hi = 4 * p * (nmax + 1);
    std::vector<long> ord(static_cast<size_t>(hi) + 1, 0);
    Int fact = 1;
    long stripped = 0;
    for (long m = 1; m <= hi; ++m) {
        fact *= m;
        while (fact % p == 0) {
            fact /= p;
            ++stripped;
        }
        ord[static_cast<size_t>(m)] = m - stripped;
    }
    std::vector<long> best(static_cast<size_t>(nmax) + 1, 0);
    long suffix = ord[static_cast<size_t>(hi)];
    for (long m = hi; m >= 1; --m) {
        suffix = std::min(suffix, ord[static_cast<size_t>(m)]);
        if (m <= nmax) best[static_cast<size_t>(m)] = suffix;
    }
    return best;
}

}  // namespace

TEST_CASE("mazur numbers: pinned values") {
    CHECK(mazur_number(3, 1) == 1);  // [n] = n below p
    CHECK(mazur_number(3, 4) == 3);  // brute-force minimum of (m + s_3(m))/2 over 4..40
    CHECK(mazur_number(2, 5) == 1);  // min of s_2(m) over m >= 5, attained at m = 8
    CHECK(pd_exponent(5, 2) == 2);
    CHECK(pd_exponent(2, 4) == 1);
    CHECK(pd_exponent(7, -3) == 0);
    CHECK_THROWS_AS(mazur_number(3, 0), DomainError);
    CHECK_THROWS_AS(mazur_number(4, 1), DomainError);
}

TEST_CASE("mazur numbers: oracle agreement and step property") {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        long prev = 0;
        std::vector<long> oracle = mazur_oracle(p, 64);
        for (long n = 1; n <= 64; ++n) {
            long m = mazur_number(p, n);
            CHECK(m == oracle[static_cast<size_t>(n)]);
            if (n < p) CHECK(m == n);
            if (n > 1) {
                long diff = m - prev;
                CHECK(diff >= 0);
                CHECK(diff <= 1);
            }
            prev = m;
        }
    }
}

TEST_CASE("pd_exponent subadditivity") {
    for (long p : {2L, 3L, 5L}) {
        for (long i = -20; i <= 20; ++i)
            for (long j = -20; j <= 20; ++j)
                CHECK(pd_exponent(p, i) + pd_exponent(p, j) >= pd_exponent(p, i + j));
    }
}

TEST_CASE("Zq: pinned operations") {
    auto c32 = PrimeContext::create(3, 2);
    CHECK(c32->from_int(4).inverse() == c32->from_int(7));  // 4*7 = 28 = 1 mod 9
    auto c33 = PrimeContext::create(3, 3);
    CHECK(c33->from_int(18).valuation() == 2);
    CHECK(c33->zero().valuation() == 3);  // valuation of 0 reported as N
    CHECK_THROWS_AS(c33->from_int(3).inverse(), DomainError);

    auto c24 = PrimeContext::create(2, 4, 2, {Int(1), Int(1), Int(1)});  // x^2 + x + 1
    Zq a = c24->generator();
    Zq prod = a * (a + c24->one());
    CHECK(prod == c24->from_int(15));  // a^2 + a = -1 = 15 mod 16
}

TEST_CASE("Zq: ring axioms on random triples") {
    auto ctx = PrimeContext::create(3, 3, 2, {Int(1), Int(0), Int(1)});  // x^2 + 1, irred mod 3
    std::mt19937 rng(12345);
    auto rand_elt = [&] {
        std::vector<Int> c(2);
        for (auto& x : c) x = Int(rng() % 27);
        return Zq(ctx, c);
    };
    for (int it = 0; it < 1000; ++it) {
        Zq x = rand_elt(), y = rand_elt(), z = rand_elt();
        CHECK((x + y) + z == x + (y + z));
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x + (-x) == ctx->zero());
        CHECK(x * ctx->one() == x);
    }
}

TEST_CASE("frobenius: f=1 identity, f=2 pinned, sigma^f = id, homomorphism") {
    auto c1 = PrimeContext::create(5, 3);
    CHECK(c1->from_int(17).frobenius() == c1->from_int(17));

    for (int N : {1, 3}) {
        auto ctx = PrimeContext::create(2, N, 2, {Int(1), Int(1), Int(1)});
        Zq a = ctx->generator();
        // sigma(a) = -1 - a: the other root of x^2 + x + 1, congruent to a^2 mod 2
        CHECK(a.frobenius() == -(ctx->one()) - a);
    }

    auto ctx = PrimeContext::create(3, 2, 2, {Int(1), Int(0), Int(1)});
    std::mt19937 rng(777);
    auto rand_elt = [&] {
        std::vector<Int> c(2);
        for (auto& x : c) x = Int(rng() % 9);
        return Zq(ctx, c);
    };
    for (int it = 0; it < 200; ++it) {
        Zq x = rand_elt(), y = rand_elt();
        CHECK(x.frobenius().frobenius() == x);
        CHECK((x * y).frobenius() == x.frobenius() * y.frobenius());
        CHECK((x + y).frobenius() == x.frobenius() + y.frobenius());
    }
    // sigma fixes Z_p
    CHECK(ctx->from_int(7).frobenius() == ctx->from_int(7));
}

TEST_CASE("PrimeContext rejects bad input") {
    CHECK_THROWS_AS(PrimeContext::create(2, 0), DomainError);
    CHECK_THROWS_AS(PrimeContext::create(9, 1), DomainError);
    // x^2 - 1 factors mod 3
    CHECK_THROWS_AS(PrimeContext::create(3, 1, 2, {Int(-1), Int(0), Int(1)}), DomainError);
    CHECK_THROWS_AS(PrimeContext::create(3, 1, 2, {Int(1), Int(0), Int(2)}), DomainError);
}
