#pragma once

#include "flmod/numeric.hpp"
#include "flmod/report.hpp"

#include <map>
#include <memory>
#include <optional>

namespace flmod::laurent {

/*
 * Truncated graded coefficient rings realized inside Q[v+^{+-1}] with v- := p/v+.
 * An element is a finite sum sum_i c_i v+^i supported in the degree window
 * [-D, D]; B-integrality is the posterior valuation predicate
 * val_p(c_i) >= e(i) - i from the free-module basis g_i = p^{e(i)} v+^i / p^i.
 */

enum class RingKind { A, A_mod_p, C2, B, B_mod_p, Wkv_minus };

struct RingDescriptor {
    RingKind kind = RingKind::B;
    long p = 2;
    int N = 1;  // modulus exponent for the mod-p^M kinds
    int D = 8;  // degree window bound
    bool strict = false;  // strict mode fails fast on truncation

    static std::shared_ptr<const RingDescriptor> make(RingKind kind, long p, int N, int D,
                                                      bool strict = false);
};

using RingPtr = std::shared_ptr<const RingDescriptor>;

struct TruncationError : DomainError {
    using DomainError::DomainError;
};

class BElement {
  public:
    BElement() = default;
    explicit BElement(RingPtr ring) : ring_(std::move(ring)) {}
    BElement(RingPtr ring, std::map<int, Rat> coeffs, bool truncated = false);

    const RingPtr& ring() const { return ring_; }
    const std::map<int, Rat>& coeffs() const { return coeffs_; }
    bool truncated() const { return truncated_; }
    bool is_zero() const { return coeffs_.empty(); }
    Rat coeff(int degree) const;

    bool operator==(const BElement& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const BElement& o) const { return !(*this == o); }

    BElement operator+(const BElement& o) const;
    BElement operator-(const BElement& o) const;
    BElement operator-() const;
    BElement operator*(const BElement& o) const;
    BElement scalar_mul(const Rat& c) const;
    BElement mul_int(const Int& n) const { return scalar_mul(Rat(n)); }
    BElement pow(long e) const;

    /* Exact division by p^e inside Q[v+^{+-1}] (always possible rationally). */
    BElement divide_p(long e) const;

    /* Keep only degrees <= bound. */
    BElement truncate_above(int bound) const;

    /* Homogeneous of the given degree (zero counts as homogeneous of any degree). */
    bool homogeneous_of_degree(int d) const;

    /* Evaluation v+ -> value (a rational), for specializations like v+ = p. */
    Rat evaluate(const Rat& vplus) const;

    BElement zero() const { return BElement(ring_); }
    BElement one() const;
    BElement make_int(const Int& n) const { return one().mul_int(n); }

    std::string str() const;

  private:
    RingPtr ring_;
    std::map<int, Rat> coeffs_;  // degree -> coefficient, zeros pruned
    bool truncated_ = false;
};

/* Generators. */
BElement vplus(const RingPtr& ring);
BElement vminus(const RingPtr& ring);  // p / v+
/* Basis element g_i = p^{e(i) - i} v+^i of B^i. */
BElement g_basis(const RingPtr& ring, int i);
/* Divided power gamma_n(v+) = v+^n / n!. */
BElement gamma(const RingPtr& ring, long n);

struct IntegralityWitness {
    bool integral = true;
    int degree = 0;  // first violating degree
    long gap = 0;    // e(i) - i - val_p(c_i) > 0
};

/* B-integrality: val_p(c_i) >= e(i) - i for every i. */
IntegralityWitness integrality_check(const BElement& x);

/* Both displayed divided-power relations for 1 <= n <= n_max:
 *   p^n!/(p^{n-1}!)^p gamma_{p^n}(v+) = gamma_{p^{n-1}}(v+)^p
 *   v-^{p^n} gamma_{p^n}(v+) = p^{p^n}/p^n!
 */
Report verify_pd_relations(long p, int n_max, int D);

/*
 * Elements of B / p^M in the g_i basis (M = 1 gives B (x) F_p), and of the
 * reduced-locus curve C2 = k[v+^p, v-]/(v+^p v-). Multiplication uses the
 * structure constants g_i g_j = p^{e(i)+e(j)-e(i+j)} g_{i+j}.
 */
class GElement {
  public:
    GElement() = default;
    explicit GElement(RingPtr ring) : ring_(std::move(ring)) {}
    GElement(RingPtr ring, std::map<int, Int> coeffs);

    const RingPtr& ring() const { return ring_; }
    const std::map<int, Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    bool operator==(const GElement& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const GElement& o) const { return !(*this == o); }

    GElement operator+(const GElement& o) const;
    GElement operator-(const GElement& o) const;
    GElement operator-() const;
    GElement operator*(const GElement& o) const;
    GElement mul_int(const Int& n) const;

    GElement truncate_above(int bound) const;

    GElement zero() const { return GElement(ring_); }
    GElement one() const;
    GElement make_int(const Int& n) const;

    std::string str() const;

  private:
    RingPtr ring_;
    std::map<int, Int> coeffs_;  // degree -> coefficient in [0, p^M)
};

/* Rewrite an integral x in the g_i basis with coefficients mod p^M.
   M = 1 yields B (x) F_p coordinates. Rejects non-integral input. */
GElement reduce_mod(const BElement& x, int M);

/* Valuation gap of A^i inside B^i: the index [B^i : A^i] is p^(i - e(i)) for
   i >= 0 and 1 for i < 0. Zero exactly in degrees < p. */
long a_to_b_index_valuation(long p, long i);

}  // namespace flmod::laurent
