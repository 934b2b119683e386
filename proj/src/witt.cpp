#include "flmod/witt.hpp"

#include "flmod/arith.hpp"

#include <mutex>
#include <sstream>

namespace flmod::witt {

using laurent::BElement;
using laurent::GElement;
using laurent::RingDescriptor;
using laurent::RingKind;
using laurent::RingPtr;

namespace {

/* Ghost polynomial w_m over the variable block starting at `base`. */
IntPoly ghost_poly(long p, int m, unsigned base) {
    IntPoly w;
    Int pi = 1;
    for (int i = 0; i <= m; ++i) {
        long e = 1;
        for (int j = 0; j < m - i; ++j) e *= p;
        w = w + IntPoly::variable(base + static_cast<unsigned>(i)).pow(e).mul_int(pi);
        pi *= p;
    }
    return w;
}

std::shared_ptr<WittTables> generate_tables(long p, int n) {
    auto t = std::make_shared<WittTables>();
    t->p = p;
    t->n = n;
    const unsigned ybase = static_cast<unsigned>(n);
    for (int m = 0; m < n; ++m) {
        Int pm = pow_int(Int(p), m);
        {
            IntPoly rhs = ghost_poly(p, m, 0) + ghost_poly(p, m, ybase);
            Int pi = 1;
            for (int i = 0; i < m; ++i) {
                long e = 1;
                for (int j = 0; j < m - i; ++j) e *= p;
                rhs = rhs - t->sum[i].pow(e).mul_int(pi);
                pi *= p;
            }
            t->sum.push_back(rhs.divide_exact(pm));
        }
        {
            IntPoly rhs = ghost_poly(p, m, 0) * ghost_poly(p, m, ybase);
            Int pi = 1;
            for (int i = 0; i < m; ++i) {
                long e = 1;
                for (int j = 0; j < m - i; ++j) e *= p;
                rhs = rhs - t->prod[i].pow(e).mul_int(pi);
                pi *= p;
            }
            t->prod.push_back(rhs.divide_exact(pm));
        }
        {
            IntPoly rhs = IntPoly() - ghost_poly(p, m, 0);
            Int pi = 1;
            for (int i = 0; i < m; ++i) {
                long e = 1;
                for (int j = 0; j < m - i; ++j) e *= p;
                rhs = rhs - t->neg[i].pow(e).mul_int(pi);
                pi *= p;
            }
            t->neg.push_back(rhs.divide_exact(pm));
        }
        if (m + 1 < n) {
            IntPoly rhs = ghost_poly(p, m + 1, 0);
            Int pi = 1;
            for (int i = 0; i < m; ++i) {
                long e = 1;
                for (int j = 0; j < m - i; ++j) e *= p;
                rhs = rhs - t->frob[i].pow(e).mul_int(pi);
                pi *= p;
            }
            t->frob.push_back(rhs.divide_exact(pm));
        }
    }
    return t;
}

}  // namespace

TablesPtr structure_polynomials(long p, int n) {
    if (!is_prime_small(p)) throw DomainError("structure_polynomials: p is not prime");
    if (n < 1) throw DomainError("structure_polynomials: n must be >= 1");
    static std::mutex mu;
    static std::map<std::pair<long, int>, TablesPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    TablesPtr t = generate_tables(p, n);
    cache[key] = t;
    return t;
}

int default_witt_len(long p) {
    if (p == 2) return 4;
    if (p == 3) return 3;
    if (p == 5) return 2;
    return 2;
}

BWitt sharp_lift(const BElement& t, const TablesPtr& tab, int len) {
    const long p = tab->p;
    // gh_m(y) = 0 for m >= 1 determines y_m over the rational coordinatization
    std::vector<BElement> out;
    out.push_back(t);
    for (int m = 1; m < len; ++m) {
        BElement acc = t.zero();
        Int pi = 1;
        for (int i = 0; i < m; ++i) {
            long e = 1;
            for (int j = 0; j < m - i; ++j) e *= p;
            acc = acc + out[i].pow(e).mul_int(pi);
            pi *= p;
        }
        out.push_back((-acc).scalar_mul(Rat(Int(1), pow_int(Int(p), m))));
    }
    for (int m = 0; m < len; ++m) {
        auto w = laurent::integrality_check(out[m]);
        if (!w.integral)
            throw DomainError("sharp_lift: component " + std::to_string(m) +
                              " is not integral (the element has no divided powers), degree " +
                              std::to_string(w.degree));
    }
    return BWitt(tab, std::move(out));
}

DividedTeichmuller divided_teichmuller(long p, int n, int D) {
    if (D < pow_int(Int(p), n)) throw DomainError("divided_teichmuller: window D < p^n");
    auto tab = structure_polynomials(p, n + 1);
    auto ring = RingDescriptor::make(RingKind::B, p, 1, D, /*strict=*/true);
    BElement vp = laurent::vplus(ring);
    BWitt y = sharp_lift(vp, tab, n + 1);
    BWitt d = teichmuller(tab, vp, n + 1) - y;
    if (!(d[0] == vp.zero()))
        throw VerificationError("divided_teichmuller: first component of [v+] - y is nonzero");
    std::vector<BElement> zc(d.components().begin() + 1, d.components().end());
    BWitt z(tab, std::move(zc));
    for (int m = 0; m < n; ++m) {
        auto w = laurent::integrality_check(z[m]);
        if (!w.integral)
            throw VerificationError("divided_teichmuller: component " + std::to_string(m) +
                                    " of z fails integrality at degree " +
                                    std::to_string(w.degree));
    }
    BWitt pz = z.int_scalar(p);
    BElement vpp = vp.pow(p);
    if (!(pz == teichmuller(tab, vpp, n)))
        throw VerificationError("divided_teichmuller: p z != [v+^p]");
    return {std::move(y), std::move(z)};
}

BigWitt bigwitt_mul(const BigWitt& a, const BigWitt& b) {
    if (a.ring.get() != b.ring.get() || a.order() != b.order())
        throw DomainError("bigwitt_mul: mixed series");
    int D = a.order();
    BElement zero = BElement(a.ring);
    std::vector<BElement> out(static_cast<size_t>(D), zero);
    // (1 + sum a_i x^i)(1 + sum b_j x^j), truncated beyond x^D
    for (int k = 1; k <= D; ++k) {
        BElement acc = zero;
        acc = acc + (k <= a.order() ? a.c[k - 1] : zero);
        acc = acc + (k <= b.order() ? b.c[k - 1] : zero);
        for (int i = 1; i < k; ++i) acc = acc + a.c[i - 1] * b.c[k - i - 1];
        out[k - 1] = acc;
    }
    return {a.ring, std::move(out)};
}

BigWitt bigwitt_pow(const BigWitt& a, long e) {
    BigWitt acc{a.ring, std::vector<BElement>(a.c.size(), BElement(a.ring))};
    BigWitt base = a;
    while (e > 0) {
        if (e & 1) acc = bigwitt_mul(acc, base);
        e >>= 1;
        if (e) base = bigwitt_mul(base, base);
    }
    return acc;
}

BigWitt bigwitt_pth_root(long p, int order) {
    if (order < 2) throw DomainError("bigwitt_pth_root: order must be >= 2");
    int D = static_cast<int>(p) * order;
    auto ring = RingDescriptor::make(RingKind::B, p, 1, D, /*strict=*/true);
    BElement zero = BElement(ring);
    BElement vp = laurent::vplus(ring);
    // s = (1/p) log(1 - v+^p x) = -sum_{k>=1} v+^{pk} x^k / (p k)
    std::vector<BElement> s(static_cast<size_t>(order), zero);
    for (int k = 1; k <= order; ++k)
        s[k - 1] = vp.pow(p * k).scalar_mul(Rat(Int(-1), Int(p) * k));
    // g = exp(s) = sum_j s^j / j!, computed coefficientwise on series with zero constant term
    std::vector<BElement> g(static_cast<size_t>(order), zero);
    std::vector<BElement> spow(static_cast<size_t>(order), zero);  // s^j, starts at j=1
    spow = s;
    Int jfact = 1;
    for (int j = 1; j <= order; ++j) {
        jfact *= j;
        for (int k = 1; k <= order; ++k)
            g[k - 1] = g[k - 1] + spow[k - 1].scalar_mul(Rat(Int(1), jfact));
        if (j < order) {
            // spow <- spow * s (both have zero constant term)
            std::vector<BElement> nxt(static_cast<size_t>(order), zero);
            for (int k = 2; k <= order; ++k) {
                BElement acc = zero;
                for (int i = 1; i < k; ++i) acc = acc + spow[i - 1] * s[k - i - 1];
                nxt[k - 1] = acc;
            }
            spow = std::move(nxt);
        }
    }
    BigWitt result{ring, std::move(g)};
    for (int k = 1; k <= order; ++k) {
        auto w = laurent::integrality_check(result.c[k - 1]);
        if (!w.integral)
            throw VerificationError("bigwitt_pth_root: coefficient of x^" + std::to_string(k) +
                                    " is not integral at degree " + std::to_string(w.degree));
    }
    BigWitt gp = bigwitt_pow(result, p);
    for (int k = 1; k <= order; ++k) {
        BElement expect = (k == 1) ? -vp.pow(p) : zero;
        if (!(gp.c[k - 1] == expect))
            throw VerificationError("bigwitt_pth_root: g^p != 1 - v+^p x at order " +
                                    std::to_string(k));
    }
    return result;
}

namespace {

template <class R>
WittVec<R> verschiebung_up(const WittVec<R>& x) {
    std::vector<R> out;
    out.push_back(x[0].zero());
    for (const auto& c : x.components()) out.push_back(c);
    return WittVec<R>(x.tables(), std::move(out));
}

template <class R>
WittVec<R> truncate(const WittVec<R>& x, int len) {
    std::vector<R> out(x.components().begin(), x.components().begin() + len);
    return WittVec<R>(x.tables(), std::move(out));
}

std::string witt_str(const BWitt& x) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < x.length(); ++i) os << (i ? "; " : "") << x[i].str();
    os << ")";
    return os.str();
}

std::string witt_str(const GWitt& x) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < x.length(); ++i) os << (i ? "; " : "") << x[i].str();
    os << ")";
    return os.str();
}

}  // namespace

Report verify_psi_maz(long p, int n, int D) {
    if (n < 2) throw DomainError("verify_psi_maz: length must be >= 2 (F drops a component)");
    Report rep;
    const std::string tag = "psi-maz/p=" + std::to_string(p) + "/";
    auto dt = divided_teichmuller(p, n, D);
    auto tab = dt.z.tables();
    auto ring = dt.z[0].ring();
    BElement vp = laurent::vplus(ring);
    BElement vm = laurent::vminus(ring);
    BElement one = vp.one();

    // w = [v+] - V(z) (length n), the sharp lift of v+
    BWitt vteich = teichmuller(tab, vp, n);
    BWitt w = vteich - truncate(verschiebung_up(dt.z), n);
    {
        BWitt fw = w.frobenius();
        rep.add(tag + "F(w)=0", fw.is_zero(), "F(w) = " + witt_str(fw));
    }
    {
        BWitt lhs = teichmuller(tab, vm, n) * w + witt_one(tab, one, n).verschiebung();
        BWitt rhs = witt_one(tab, one, n).int_scalar(p);
        rep.add(tag + "[v-]w+V(1)=p", lhs == rhs,
                "lhs = " + witt_str(lhs) + ", rhs = " + witt_str(rhs));
    }
    {
        // Specialize at v+ = p, v- = 1: Witt arithmetic over Z/p^N.
        // z evaluates to [p]^p / p and [p] + V(1 - z(p)) = p must hold in W_n(Z/p^N).
        auto ctx = arith::PrimeContext::create(p, n + 4);
        auto to_zq = [&](const BElement& b) {
            Rat v = b.evaluate(Rat(p));
            if (!is_p_integral(v, Int(p)))
                throw VerificationError("psi-maz: specialization not p-integral");
            return ctx->from_int(numerator(v)) * ctx->from_int(denominator(v)).inverse();
        };
        std::vector<arith::Zq> zc;
        for (const auto& c : dt.z.components()) zc.push_back(to_zq(c));
        WittVec<arith::Zq> z_eval(tab, zc);
        WittVec<arith::Zq> pteich = teichmuller(tab, ctx->from_int(p), n);
        WittVec<arith::Zq> onew = witt_one(tab, ctx->one(), n);
        // p * z(p) = [p]^p = [p^p] in W_n(Z/p^N)
        WittVec<arith::Zq> ppow = teichmuller(tab, ctx->from_int(pow_int(Int(p), p)), n);
        bool ok1 = z_eval.int_scalar(p) == ppow;
        // [p] + V(1 - z(p)) = p
        WittVec<arith::Zq> lhs = pteich + (onew - z_eval).verschiebung();
        WittVec<arith::Zq> rhs = onew.int_scalar(p);
        rep.add(tag + "teichmuller-specialization/p*z=[p^p]", ok1, "over Z/p^" +
                std::to_string(n + 4));
        rep.add(tag + "teichmuller-specialization/[p]+V(1-z)=p", lhs == rhs,
                "over Z/p^" + std::to_string(n + 4));
    }
    {
        // V(u F(x)) = x V(u) on a panel; sharp lifts make V(u) x = 0 when F(x) = 0.
        std::vector<BWitt> panel_x;
        panel_x.push_back(BWitt(tab, std::vector<BElement>(n, vp.zero())));
        panel_x.push_back(witt_one(tab, one, n));
        panel_x.push_back(vteich);
        panel_x.push_back(teichmuller(tab, vm, n));
        panel_x.push_back(w);
        panel_x.push_back(vteich + witt_one(tab, one, n));
        panel_x.push_back(witt_one(tab, one, n).verschiebung());
        panel_x.push_back(teichmuller(tab, vp + vm, n));
        std::vector<BWitt> panel_u;
        for (const auto& x : panel_x) panel_u.push_back(truncate(x, n - 1));
        int idx = 0;
        for (const auto& u : panel_u)
            for (const auto& x : panel_x) {
                BWitt lhs = verschiebung_up(u * x.frobenius());
                BWitt rhs = x * verschiebung_up(u);
                rep.add(tag + "V(uF(x))=xV(u)/case" + std::to_string(idx++), lhs == rhs, "");
            }
        // x in ker F kills V(u)
        for (const auto& u : panel_u) {
            BWitt prod = w * verschiebung_up(u);
            rep.add(tag + "V(u)w=0-for-sharp/case" + std::to_string(idx++), prod.is_zero(),
                    witt_str(prod));
        }
        // the full commutation with xi: [v-] w x + V(F(x)) = p x for every x
        int jdx = 0;
        BWitt vmt = teichmuller(tab, vm, n);
        for (const auto& x : panel_x) {
            BWitt lhs = vmt * w * x + verschiebung_up(x.frobenius());
            BWitt rhs = x.int_scalar(p);
            rep.add(tag + "xi-commutes/case" + std::to_string(jdx++), lhs == rhs, "");
        }
    }
    rep.sort();
    return rep;
}

Report verify_di_matrix(long p, int n, int D) {
    Report rep;
    const std::string tag = "di-matrix/p=" + std::to_string(p) + "/";
    auto dt = divided_teichmuller(p, n, D);
    auto tab = dt.z.tables();

    // component m of z is homogeneous of degree p^(m+1)
    for (int m = 0; m < n; ++m) {
        long deg = 1;
        for (int j = 0; j <= m; ++j) deg *= p;
        rep.add(tag + "z-homogeneous/component" + std::to_string(m),
                dt.z[m].homogeneous_of_degree(static_cast<int>(deg)),
                "z_" + std::to_string(m) + " = " + dt.z[m].str());
    }

    // u = {[v+^p]/p} in W(B (x) F_p); f = [v+] - V(u); psi Y = X amounts to f + V(u) = [v+]
    auto gring = RingDescriptor::make(RingKind::B_mod_p, p, 1, dt.z[0].ring()->D, false);
    std::vector<GElement> uc;
    for (const auto& c : dt.z.components()) {
        auto r = laurent::reduce_mod(c, 1);
        uc.push_back(GElement(gring, r.coeffs()));
    }
    GWitt u(tab, uc);
    GElement gvp(gring, {{1, Int(1)}});
    GWitt vteich = teichmuller(tab, gvp, n);
    GWitt f = vteich - u.verschiebung();
    GWitt lhs = f + u.verschiebung();
    rep.add(tag + "f+V(u)=[v+]", lhs == vteich,
            "lhs = " + witt_str(lhs) + ", [v+] = " + witt_str(vteich));

    // u dies in the quotient keeping v+-degrees < p-1
    bool all_zero = true;
    for (const auto& c : u.components()) all_zero = all_zero && c.truncate_above(static_cast<int>(p) - 2).is_zero();
    rep.add(tag + "u-vanishes-below-weight-p-1", all_zero, "");
    rep.sort();
    return rep;
}

}  // namespace flmod::witt
