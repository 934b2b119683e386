#pragma once

#include "flmod/numeric.hpp"

#include <memory>
#include <vector>

namespace flmod::arith {

/*
 * Exact base arithmetic: Z_q = W(F_{p^f}) at precision p^N, represented as
 * Z[a]/(p^N, minpoly(a)) with the Frobenius lift computed by Hensel's lemma,
 * plus Mazur numbers [n] = min_{m>=n} ord_p(p^m/m!).
 */

class PrimeContext;
using CtxPtr = std::shared_ptr<const PrimeContext>;

class Zq;

class PrimeContext : public std::enable_shared_from_this<PrimeContext> {
  public:
    /* f = 1 needs no minpoly; f > 1 takes a monic integer lift (f+1 coefficients,
       constant term first) of a polynomial irreducible mod p. */
    static CtxPtr create(long p, int N, int f = 1, std::vector<Int> minpoly = {});

    long p() const { return p_; }
    int N() const { return N_; }
    int f() const { return f_; }
    const Int& pN() const { return pN_; }
    const std::vector<Int>& minpoly() const { return minpoly_; }

    /* Image sigma(a) of the ring generator under the Frobenius lift, as a
       coefficient vector (identity for f = 1). */
    const std::vector<Int>& frob_gen() const { return frob_gen_; }

    /* Same p/f/minpoly at precision 1 (residue field linear algebra). */
    CtxPtr residue_ctx() const;
    /* Same p/f/minpoly at precision M. */
    CtxPtr with_precision(int M) const;

    bool same_field(const PrimeContext& o) const {
        return p_ == o.p_ && f_ == o.f_ && minpoly_ == o.minpoly_;
    }

    Zq zero() const;
    Zq one() const;
    Zq from_int(const Int& n) const;
    Zq generator() const;

  private:
    PrimeContext() = default;
    long p_ = 2;
    int N_ = 1;
    int f_ = 1;
    Int pN_ = 2;
    std::vector<Int> minpoly_;   // monic, length f+1, reduced mod p^N
    std::vector<Int> frob_gen_;  // sigma(a) coefficients, length f
};

class Zq {
  public:
    Zq() = default;
    Zq(CtxPtr ctx, std::vector<Int> coeffs);

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const Zq& o) const;
    bool operator!=(const Zq& o) const { return !(*this == o); }

    Zq operator+(const Zq& o) const;
    Zq operator-(const Zq& o) const;
    Zq operator-() const;
    Zq operator*(const Zq& o) const;
    Zq& operator+=(const Zq& o) { return *this = *this + o; }
    Zq& operator*=(const Zq& o) { return *this = *this * o; }

    Zq mul_int(const Int& n) const;
    Zq pow(long e) const;

    /* Largest e <= N with x in p^e * Zq; N for x = 0 (total order convention). */
    int valuation() const;
    bool is_unit() const { return valuation() == 0; }

    /* Inverse of a unit; DomainError naming the valuation otherwise. */
    Zq inverse() const;

    /* Exact division by p^e; requires valuation >= e. The quotient is well
       defined only mod p^(N-e) and is returned reduced mod p^N with the top
       digits chosen from the canonical lift in [0, p^N). */
    Zq divide_p(int e) const;

    /* The Frobenius lift sigma (identity for f = 1); sigma^f = id. */
    Zq frobenius() const;
    Zq frobenius_pow(long k) const;

    Zq zero() const { return ctx_->zero(); }
    Zq one() const { return ctx_->one(); }
    Zq make_int(const Int& n) const { return ctx_->from_int(n); }

    std::string str() const;

  private:
    CtxPtr ctx_;
    std::vector<Int> c_;  // length f, entries in [0, p^N)
};

/* Mazur number [n] = min_{m >= n} ord_p(p^m / m!), n >= 1. */
long mazur_number(long p, long n);

/* e(i) := [i] for i >= 1 and 0 for i <= 0 (valuation of B's degree-i generator
   relative to v_+^i). Subadditive: e(i)+e(j) >= e(i+j). */
long pd_exponent(long p, long i);

/* Table n -> [n] for 1 <= n <= max. */
std::vector<long> mazur_table(long p, long max);

}  // namespace flmod::arith
