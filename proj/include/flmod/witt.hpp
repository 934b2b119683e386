#pragma once

#include "flmod/laurent.hpp"
#include "flmod/report.hpp"
#include "flmod/wittpoly.hpp"

#include <memory>
#include <vector>

namespace flmod::witt {

/*
 * p-typical Witt vectors of finite length over any supported coefficient ring.
 * The sum/product/negation/Frobenius structure polynomials are generated once
 * per (p, n) by the ghost recursion over exact integers (the recursion's exact
 * divisions double as the integrality assertion), then evaluated in the
 * coefficient ring. This stays correct over rings with p-torsion, where ghost
 * inversion is unavailable.
 *
 * Variable layout in the tables: X_i has index i, Y_i has index n + i.
 */
struct WittTables {
    long p = 2;
    int n = 1;
    std::vector<IntPoly> sum;   // sum[m] = S_m(X_0..X_m, Y_0..Y_m)
    std::vector<IntPoly> prod;  // prod[m] = P_m(X_0..X_m, Y_0..Y_m)
    std::vector<IntPoly> neg;   // neg[m] = N_m(X_0..X_m)
    std::vector<IntPoly> frob;  // frob[m] = F_m(X_0..X_{m+1}), m <= n-2
};

using TablesPtr = std::shared_ptr<const WittTables>;

/* Cached, write-once per (p, n); read-concurrent afterwards. */
TablesPtr structure_polynomials(long p, int n);

/* Default length bound per prime (table sizes grow as p^n). */
int default_witt_len(long p);

template <class R>
class WittVec {
  public:
    WittVec() = default;
    WittVec(TablesPtr tables, std::vector<R> comps)
        : tab_(std::move(tables)), c_(std::move(comps)) {
        if (c_.empty() || static_cast<int>(c_.size()) > tab_->n)
            throw DomainError("WittVec: length out of range for the tables");
    }

    const TablesPtr& tables() const { return tab_; }
    int length() const { return static_cast<int>(c_.size()); }
    const std::vector<R>& components() const { return c_; }
    const R& operator[](int i) const { return c_.at(i); }

    bool operator==(const WittVec& o) const { return c_ == o.c_; }
    bool operator!=(const WittVec& o) const { return !(*this == o); }

    WittVec operator+(const WittVec& o) const {
        check(o);
        std::vector<R> vals = concat(o);
        std::vector<R> out;
        out.reserve(c_.size());
        for (size_t m = 0; m < c_.size(); ++m)
            out.push_back(tab_->sum[m].evaluate(vals, c_[0]));
        return WittVec(tab_, std::move(out));
    }

    WittVec operator*(const WittVec& o) const {
        check(o);
        std::vector<R> vals = concat(o);
        std::vector<R> out;
        out.reserve(c_.size());
        for (size_t m = 0; m < c_.size(); ++m)
            out.push_back(tab_->prod[m].evaluate(vals, c_[0]));
        return WittVec(tab_, std::move(out));
    }

    WittVec operator-() const {
        std::vector<R> vals = c_;
        vals.resize(2 * tab_->n, c_[0].zero());
        std::vector<R> out;
        out.reserve(c_.size());
        for (size_t m = 0; m < c_.size(); ++m)
            out.push_back(tab_->neg[m].evaluate(vals, c_[0]));
        return WittVec(tab_, std::move(out));
    }

    WittVec operator-(const WittVec& o) const { return *this + (-o); }

    /* n-fold sum; n may be negative. */
    WittVec int_scalar(long k) const {
        if (k < 0) return (-*this).int_scalar(-k);
        WittVec acc = zero_like();
        WittVec base = *this;
        while (k > 0) {
            if (k & 1) acc = acc + base;
            k >>= 1;
            if (k) base = base + base;
        }
        return acc;
    }

    WittVec zero_like() const { return WittVec(tab_, std::vector<R>(c_.size(), c_[0].zero())); }

    /* Frobenius, stored at length n-1. */
    WittVec frobenius() const {
        if (length() < 2) throw DomainError("WittVec: Frobenius needs length >= 2");
        std::vector<R> vals = c_;
        vals.resize(2 * tab_->n, c_[0].zero());
        std::vector<R> out;
        for (int m = 0; m + 1 < length(); ++m)
            out.push_back(tab_->frob[m].evaluate(vals, c_[0]));
        return WittVec(tab_, std::move(out));
    }

    /* Shift: V(x)_0 = 0; drops the top component to stay at this length. */
    WittVec verschiebung() const {
        std::vector<R> out;
        out.push_back(c_[0].zero());
        for (int m = 0; m + 1 < length(); ++m) out.push_back(c_[m]);
        return WittVec(tab_, std::move(out));
    }

    std::vector<R> ghost() const {
        std::vector<R> out;
        for (int m = 0; m < length(); ++m) {
            R acc = c_[0].zero();
            Int pi = 1;
            for (int i = 0; i <= m; ++i) {
                R t = c_[i];
                long e = 1;
                for (int j = 0; j < m - i; ++j) e *= tab_->p;
                R powed = c_[0].one();
                for (long j = 0; j < e; ++j) powed = powed * t;
                acc = acc + powed.mul_int(pi);
                pi *= tab_->p;
            }
            out.push_back(acc);
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!(x == x.zero())) return false;
        return true;
    }

  private:
    void check(const WittVec& o) const {
        if (tab_.get() != o.tab_.get() || length() != o.length())
            throw DomainError("WittVec: mixed contexts or lengths");
    }
    std::vector<R> concat(const WittVec& o) const {
        std::vector<R> vals = c_;
        vals.resize(tab_->n, c_[0].zero());
        vals.insert(vals.end(), o.c_.begin(), o.c_.end());
        vals.resize(2 * tab_->n, c_[0].zero());
        return vals;
    }

    TablesPtr tab_;
    std::vector<R> c_;
};

template <class R>
WittVec<R> teichmuller(const TablesPtr& tab, const R& r, int len) {
    std::vector<R> c(static_cast<size_t>(len), r.zero());
    c[0] = r;
    return WittVec<R>(tab, std::move(c));
}

template <class R>
WittVec<R> witt_one(const TablesPtr& tab, const R& model, int len) {
    return teichmuller(tab, model.one(), len);
}

using BWitt = WittVec<laurent::BElement>;
using GWitt = WittVec<laurent::GElement>;

/*
 * The unique y in W^(F)(B) = ker F with first component t, computed by the
 * ghost recursion gh_m(y) = 0 over exact rationals; the final integrality
 * assertion is exactly the statement that t admits divided powers.
 */
BWitt sharp_lift(const laurent::BElement& t, const TablesPtr& tab, int len);

struct DividedTeichmuller {
    BWitt y;  // sharp lift of v+ (length n+1)
    BWitt z;  // [v+^p]/p: V(z) = [v+] - y and p z = [v+^p], length n
};

/* Builds z with V(z) = [v+] - sharp_lift(v+) and hard-asserts integrality of
   every component and the identity p z = [v+^p] in W_n(B). */
DividedTeichmuller divided_teichmuller(long p, int n, int D);

/* Unit power series 1 + c_1 x + ... + c_D x^D over B; the big-Witt additive group. */
struct BigWitt {
    laurent::RingPtr ring;
    std::vector<laurent::BElement> c;  // c[k-1] = coefficient of x^k, k = 1..order
    int order() const { return static_cast<int>(c.size()); }
};

BigWitt bigwitt_mul(const BigWitt& a, const BigWitt& b);
BigWitt bigwitt_pow(const BigWitt& a, long e);

/* g = exp((1/p) log(1 - v+^p x)) truncated at x^order; asserts every coefficient
   is B-integral and g^p = 1 - v+^p x. */
BigWitt bigwitt_pth_root(long p, int order);

/* Identities from the proof that Psi_Maz is well defined:
   (a) F(w) = 0 for w = [v+] - V(z); (b) [v-] w + V(1) = p in W_n(B), plus its
   specialization at v+ = p over Z/p^N; (c) V(u F(x)) = x V(u) on a test panel. */
Report verify_psi_maz(long p, int n, int D);

/* The comparison matrix psi Y = X between the two trivializations over B (x) F_p:
   f + V(u) = [v+] for u = {[v+^p]/p}, homogeneity of z components (degree p^(m+1)),
   and vanishing of u in the quotient keeping v+-degrees < p-1. */
Report verify_di_matrix(long p, int n, int D);

}  // namespace flmod::witt
