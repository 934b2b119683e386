#include "flmod/suites.hpp"

#include "flmod/arith.hpp"
#include "flmod/fl.hpp"
#include "flmod/gradmod.hpp"
#include "flmod/laurent.hpp"
#include "flmod/mazsyn.hpp"
#include "flmod/sen.hpp"
#include "flmod/witt.hpp"

#include <chrono>
#include <functional>
#include <random>

namespace flmod::suites {

using arith::PrimeContext;
using arith::Zq;
using gmod::CtxPtr;
using gmod::FPModule;
using gmod::GradedModule;
using gmod::Mat;
using gmod::ModuleMap;

namespace {

std::string tag(const std::string& suite, long p, const std::string& rest) {
    return suite + "/p=" + std::to_string(p) + "/" + rest;
}

/* Independent Mazur oracle: exact big-integer factorials (kept with their
   p-part stripped incrementally), no Legendre shortcut. Returns suffix minima
   of ord_p(p^m/m!) over m up to 4p(nmax+1). */
std::vector<long> mazur_oracle_table(long p, long nmax) {
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

/* Random effective A-graded module: conjugated sum of weighted torsion lines. */
GradedModule random_a_module(const CtxPtr& ctx, std::mt19937& rng, int wmax, int max_dim) {
    const long p = ctx->p();
    const int N = ctx->N();
    int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_dim));
    std::vector<int> weights, tors;
    for (int m = 0; m < d; ++m) {
        weights.push_back(static_cast<int>(rng() % static_cast<unsigned>(wmax + 1)));
        tors.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(N)));
    }
    FPModule piece{ctx, tors};
    GradedModule M{ctx, wmax, {}, {}, std::vector<ModuleMap>{}};
    for (int i = 0; i <= wmax; ++i) M.pieces.push_back(piece);
    for (int i = 1; i <= wmax; ++i) {
        Mat V(ctx, d, d);
        for (int m = 0; m < d; ++m)
            V.at(m, m) = i <= weights[static_cast<size_t>(m)]
                             ? ctx->one()
                             : ctx->from_int(p);
        M.vminus.emplace_back(piece, piece, std::move(V), false);
    }
    for (int i = 0; i < wmax; ++i) {
        Mat V(ctx, d, d);
        for (int m = 0; m < d; ++m)
            V.at(m, m) = i >= weights[static_cast<size_t>(m)]
                             ? ctx->one()
                             : ctx->from_int(p);
        M.vplus->emplace_back(piece, piece, std::move(V), false);
    }
    // conjugate by random graded automorphisms respecting the torsion pattern
    auto rand_auto = [&] {
        while (true) {
            Mat U(ctx, d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    int need = std::max(0, tors[static_cast<size_t>(i)] -
                                               tors[static_cast<size_t>(j)]);
                    U.at(i, j) = ctx->from_int(Int(rng()) * pow_int(Int(p), need));
                }
            auto s = gmod::smith_normal_form(U);
            bool unit = true;
            for (int v : s.divisor_vals) unit = unit && v == 0;
            if (unit) return U;
        }
    };
    std::vector<Mat> U, Uinv;
    for (int i = 0; i <= wmax; ++i) {
        Mat u = rand_auto();
        U.push_back(u);
        Uinv.push_back(*gmod::solve(u, Mat::identity(ctx, d)));
    }
    for (int i = 1; i <= wmax; ++i)
        M.vminus[static_cast<size_t>(i - 1)] = ModuleMap(
            piece, piece,
            U[static_cast<size_t>(i - 1)] * M.vminus[static_cast<size_t>(i - 1)].A *
                Uinv[static_cast<size_t>(i)]);
    for (int i = 0; i < wmax; ++i)
        (*M.vplus)[static_cast<size_t>(i)] = ModuleMap(
            piece, piece,
            U[static_cast<size_t>(i + 1)] * (*M.vplus)[static_cast<size_t>(i)].A *
                Uinv[static_cast<size_t>(i)]);
    M.validate();
    return M;
}

Report criterion_mazur() {
    Report rep;
    for (long p : {2L, 3L, 5L, 7L}) {
        bool oracle_ok = true, below_ok = true, step_ok = true;
        long prev = 0;
        std::vector<long> oracle = mazur_oracle_table(p, 64);
        for (long n = 1; n <= 64; ++n) {
            long m = arith::mazur_number(p, n);
            oracle_ok = oracle_ok && m == oracle[static_cast<size_t>(n)];
            if (n < p) below_ok = below_ok && m == n;
            if (n > 1) step_ok = step_ok && (m - prev == 0 || m - prev == 1);
            prev = m;
        }
        rep.add(tag("mazur", p, "oracle-agreement"), oracle_ok, "n = 1..64");
        rep.add(tag("mazur", p, "[n]=n-below-p"), below_ok, "");
        rep.add(tag("mazur", p, "step-in-{0,1}"), step_ok, "");
    }
    rep.sort();
    return rep;
}

Report criterion_pd() {
    Report rep;
    for (long p : {2L, 3L}) rep.merge(suite_pd(p, 2, static_cast<int>(p * p + p)));
    rep.sort();
    return rep;
}

Report criterion_divisibility() {
    Report rep;
    rep.merge(suite_divisibility(2, 3, 10));
    rep.merge(suite_divisibility(3, 2, 12));
    rep.sort();
    return rep;
}

Report criterion_bigwitt() {
    Report rep;
    for (long p : {2L, 3L}) rep.merge(suite_bigwitt(p, 8));
    rep.sort();
    return rep;
}

Report criterion_psi_maz() {
    Report rep;
    rep.merge(suite_psi_maz(2, 3, 10));
    rep.merge(suite_psi_maz(3, 2, 12));
    rep.sort();
    return rep;
}

Report criterion_di_matrix() {
    Report rep;
    rep.merge(suite_di_matrix(2, 3, 10));
    rep.merge(suite_di_matrix(3, 2, 12));
    rep.sort();
    return rep;
}

Report criterion_effectivity() {
    Report rep;
    for (long p : {2L, 3L, 5L}) {
        rep.merge(suite_effectivity(p, 100, 1000u + static_cast<unsigned>(p)));
        rep.merge(suite_tor1(p));
    }
    rep.sort();
    return rep;
}

Report criterion_fl_suite() {
    Report rep;
    for (long p : {2L, 3L, 5L}) {
        auto ctx = PrimeContext::create(p, 2);
        std::mt19937 rng(2000u + static_cast<unsigned>(p));
        int max_w = static_cast<int>(p) - 1;
        bool valid_ok = true, fiber_ok = true, dims_ok = true;
        for (int it = 0; it < 200; ++it) {
            fl::FLModule M = fl::random_flmodule(ctx, rng, max_w, 4);
            auto v = fl::fl_validate(M);
            valid_ok = valid_ok && v.valid;
            auto f0 = gmod::graded_fiber(M.base, Int(0));
            auto f1 = gmod::graded_fiber(M.base, Int(1));
            auto fp = gmod::graded_fiber(M.base, Int(p));
            fiber_ok = fiber_ok && f0.hminus1.is_zero() && f1.hminus1.is_zero() &&
                       fp.hminus1.is_zero();
            dims_ok = dims_ok && f0.h0.length() == f1.h0.length();
        }
        rep.add(tag("fl", p, "200-random-modules-validate"), valid_ok, "");
        rep.add(tag("fl", p, "derived-fibers-in-degree-0"), fiber_ok, "a in {0, 1, p}");
        rep.add(tag("fl", p, "fiber-dims-at-0-and-1-agree"), dims_ok, "");
        bool kers_ok = true;
        for (int it = 0; it < 200; ++it) {
            fl::FLModule M = fl::random_flmodule(ctx, rng, max_w, 3);
            fl::FLModule N = fl::random_flmodule(ctx, rng, max_w, 3);
            fl::FLMorphism h = fl::random_morphism(M, N, rng);
            try {
                auto k = fl::fl_kernel(h);
                auto c = fl::fl_cokernel(h);
                kers_ok = kers_ok && fl::fl_validate(k.ker).valid &&
                          fl::fl_validate(c.coker).valid;
            } catch (const Error&) {
                kers_ok = false;
            }
        }
        rep.add(tag("fl", p, "200-kernels-cokernels-revalidate"), kers_ok, "");
        bool lift_ok = true;
        for (int it = 0; it < 100; ++it) {
            fl::FLModule M = fl::random_flmodule(ctx, rng, max_w, 4);
            try {
                fl::FLModule L = fl::torsionfree_lift(M, 2);
                fl::FLModule back = L.reduce_mod_p();
                fl::FLModule orig = M.reduce_mod_p();
                bool same = back.wmax() == orig.wmax();
                for (int i = 0; same && i <= back.wmax(); ++i)
                    same = back.phi[static_cast<size_t>(i)] == orig.phi[static_cast<size_t>(i)];
                for (int i = 1; same && i <= back.wmax(); ++i)
                    same = back.base.vminus[static_cast<size_t>(i - 1)].A ==
                           orig.base.vminus[static_cast<size_t>(i - 1)].A;
                lift_ok = lift_ok && same;
            } catch (const Error&) {
                lift_ok = false;
            }
        }
        rep.add(tag("fl", p, "100-lifts-round-trip"), lift_ok, "");
    }
    rep.sort();
    return rep;
}

Report criterion_syntomic() {
    Report rep;
    {
        auto ctx = PrimeContext::create(3, 4);
        auto W0 = fl::unit_module(ctx);
        auto h0 = mazsyn::syntomic_cohomology(W0, 0);
        rep.add("syn/unit-Z81/i=0", h0.h0.sorted_exps() == std::vector<int>{4} &&
                                        h0.h1.sorted_exps() == std::vector<int>{4},
                "(H0, H1) = (" + h0.h0.describe() + ", " + h0.h1.describe() + ")");
        auto h1 = mazsyn::syntomic_cohomology(W0, 1);
        rep.add("syn/unit-Z81/i=1",
                h1.h0.is_zero() && h1.h1.sorted_exps() == std::vector<int>{4},
                "(H0, H1) = (" + h1.h0.describe() + ", " + h1.h1.describe() + ")");
    }
    for (long p : {2L, 3L, 5L}) {
        auto ctx = PrimeContext::create(p, 2);
        std::mt19937 rng(3000u + static_cast<unsigned>(p));
        bool ok = true;
        for (int it = 0; it < 50; ++it) {
            fl::FLModule M = fl::random_flmodule(ctx, rng, static_cast<int>(p) - 1, 3);
            for (int i = 0; i <= static_cast<int>(p) - 2; ++i)
                ok = ok && mazsyn::syn_vs_ext_crosscheck(M, i).pass;
        }
        rep.add(tag("syn", p, "crosscheck-50-random-modules"), ok, "weights 0..p-2");
    }
    rep.sort();
    return rep;
}

Report criterion_sen() {
    Report rep;
    for (long p : {3L, 5L}) {
        auto ctx = PrimeContext::create(p, 1);
        std::mt19937 rng(4000u + static_cast<unsigned>(p));
        bool fix_ok = true;
        for (int it = 0; it < 100; ++it) {
            fl::FLModule M = fl::random_flmodule(ctx, rng, static_cast<int>(p) - 2, 4);
            fix_ok = fix_ok && sen::fl_equal(M, sen::di_maz_endofunctor(M));
        }
        rep.add(tag("sen", p, "endofunctor-fixes-F^(p-1)=0-bitwise"), fix_ok, "100 random");
        bool alpha_ok = true;
        for (int it = 0; it < 100; ++it) {
            fl::FLModule M = fl::random_flmodule(ctx, rng, static_cast<int>(p) - 1, 4);
            auto a = sen::alpha(M);
            alpha_ok = alpha_ok && (a.alpha * a.alpha).is_zero();
        }
        rep.add(tag("sen", p, "alpha-squared-zero"), alpha_ok, "100 random");
        bool ext_ok = true;
        for (long t = 0; t < p; ++t) {
            fl::FLModule E = sen::standard_extension(ctx, ctx->from_int(t));
            fl::FLModule out = sen::di_maz_endofunctor(E);
            auto cls = sen::extension_class(out);
            ext_ok = ext_ok && cls.value.is_zero() && cls.splits &&
                     sen::extension_class(E).value == E.ctx()->from_int(t);
        }
        rep.add(tag("sen", p, "worked-extension-Fp-classes-killed"), ext_ok, "all t in F_p");
        // 20 random classes over F_{p^2}
        std::vector<Int> mp = p == 3 ? std::vector<Int>{Int(1), Int(0), Int(1)}
                                     : std::vector<Int>{Int(2), Int(0), Int(1)};
        auto ctx2 = PrimeContext::create(p, 1, 2, mp);
        bool ext2_ok = true;
        for (int it = 0; it < 20; ++it) {
            std::vector<Int> tc{Int(rng() % static_cast<unsigned>(p)),
                                Int(rng() % static_cast<unsigned>(p))};
            Zq t(ctx2, tc);
            fl::FLModule E = sen::standard_extension(ctx2, t);
            auto before = sen::extension_class(E);
            auto after = sen::extension_class(sen::di_maz_endofunctor(E));
            ext2_ok = ext2_ok && before.value == t && after.value.is_zero() && after.splits;
        }
        rep.add(tag("sen", p, "worked-extension-Fp2-classes-killed"), ext2_ok, "20 random t");
    }
    rep.sort();
    return rep;
}

Report criterion_witt_core() {
    Report rep;
    for (long p : {2L, 3L}) {
        int n = 3;
        auto tab = witt::structure_polynomials(p, n);
        auto ctx = PrimeContext::create(p, 3);
        std::mt19937 rng(5000u + static_cast<unsigned>(p));
        auto rand_w = [&](int len) {
            std::vector<Zq> c;
            for (int i = 0; i < len; ++i) c.push_back(ctx->from_int(Int(rng())));
            return witt::WittVec<Zq>(tab, c);
        };
        bool ring_ok = true, fv_ok = true, teich_ok = true;
        witt::WittVec<Zq> zero(tab, std::vector<Zq>(static_cast<size_t>(n), ctx->zero()));
        auto one = witt::witt_one(tab, ctx->one(), n);
        for (int it = 0; it < 400; ++it) {
            auto x = rand_w(n), y = rand_w(n), z = rand_w(n);
            ring_ok = ring_ok && (x + y) + z == x + (y + z) && x + y == y + x &&
                      x * y == y * x && (x * y) * z == x * (y * z) &&
                      x * (y + z) == x * y + x * z && x + (-x) == zero && x * one == x;
            // FV = p
            auto fv = x.verschiebung().frobenius();
            auto px = x.int_scalar(p);
            std::vector<Zq> trunc(px.components().begin(), px.components().end() - 1);
            fv_ok = fv_ok && fv == witt::WittVec<Zq>(tab, trunc);
            // Teichmuller multiplicative
            auto r = ctx->from_int(Int(rng())), s = ctx->from_int(Int(rng()));
            teich_ok = teich_ok && witt::teichmuller(tab, r, n) * witt::teichmuller(tab, s, n) ==
                                       witt::teichmuller(tab, r * s, n);
        }
        rep.add(tag("witt", p, "ring-axioms-400-triples"), ring_ok, "length 3 over Z/p^3");
        rep.add(tag("witt", p, "FV=p-400"), fv_ok, "");
        rep.add(tag("witt", p, "teichmuller-multiplicative-400"), teich_ok, "");
        // ghost homomorphism over B
        auto ring = laurent::RingDescriptor::make(laurent::RingKind::B, p, 1, 64, false);
        auto rand_b = [&] {
            std::map<int, Rat> c;
            for (int deg = -1; deg <= 1; ++deg)
                if (rng() % 2) c[deg] = Rat(Int(rng() % 9) - 4, Int(1 + rng() % 3));
            return laurent::BElement(ring, c);
        };
        bool ghost_ok = true;
        for (int it = 0; it < 200; ++it) {
            std::vector<laurent::BElement> xc, yc;
            for (int i = 0; i < n; ++i) {
                xc.push_back(rand_b());
                yc.push_back(rand_b());
            }
            witt::BWitt x(tab, xc), y(tab, yc);
            auto gs = (x + y).ghost();
            auto gp = (x * y).ghost();
            auto gx = x.ghost(), gy = y.ghost();
            for (int m = 0; m < n; ++m)
                ghost_ok = ghost_ok && gs[static_cast<size_t>(m)] ==
                                           gx[static_cast<size_t>(m)] + gy[static_cast<size_t>(m)] &&
                           gp[static_cast<size_t>(m)] ==
                               gx[static_cast<size_t>(m)] * gy[static_cast<size_t>(m)];
        }
        rep.add(tag("witt", p, "ghost-ring-homomorphism-200"), ghost_ok, "over B");
    }
    rep.sort();
    return rep;
}

}  // namespace

Report suite_pd(long p, int n_max, int window) {
    return laurent::verify_pd_relations(p, n_max, window);
}

Report suite_divisibility(long p, int witt_len, int window) {
    Report rep;
    const std::string t = "divisibility/p=" + std::to_string(p) + "/";
    try {
        auto dt = witt::divided_teichmuller(p, witt_len, window);
        rep.add(t + "z-components-integral", true, "");
        std::string comps;
        for (int m = 0; m < dt.z.length(); ++m)
            comps += (m ? "; " : "") + dt.z[m].str();
        rep.add(t + "p*z=[v+^p]", true, "z = (" + comps + ")");
        // pinned first component: z_0 = v+^p/p
        auto ring = dt.z[0].ring();
        bool pin = dt.z[0] == laurent::BElement(ring, {{static_cast<int>(p),
                                                        Rat(Int(1), Int(p))}});
        rep.add(t + "z0=v+^p/p", pin, dt.z[0].str());
        // second route: p z = F V(z) = F([v+] - y) = [v+^p]
        if (witt_len >= 1) {
            auto tab = dt.y.tables();
            laurent::BElement vp = laurent::vplus(ring);
            auto d = witt::teichmuller(tab, vp, witt_len + 1) - dt.y;
            auto fd = d.frobenius();
            bool route2 = fd == witt::teichmuller(tab, vp.pow(p), witt_len) &&
                          fd == dt.z.int_scalar(p);
            rep.add(t + "F([v+]-y)=[v+^p]", route2, "");
        }
    } catch (const Error& e) {
        rep.add(t + "construction", false, e.what());
    }
    rep.sort();
    return rep;
}

Report suite_bigwitt(long p, int order) {
    Report rep;
    const std::string t = "bigwitt/p=" + std::to_string(p) + "/";
    try {
        auto g = witt::bigwitt_pth_root(p, order);
        rep.add(t + "g^p=1-v+^p*x-to-order-" + std::to_string(order), true, "");
        rep.add(t + "coefficients-integral", true, "");
        if (p == 2) {
            rep.add(t + "c1=-v+^2/2",
                    g.c[0] == laurent::BElement(g.ring, {{2, Rat(-1, 2)}}), g.c[0].str());
            rep.add(t + "c2=-v+^4/8",
                    g.c[1] == laurent::BElement(g.ring, {{4, Rat(-1, 8)}}), g.c[1].str());
        }
    } catch (const Error& e) {
        rep.add(t + "construction", false, e.what());
    }
    rep.sort();
    return rep;
}

Report suite_psi_maz(long p, int witt_len, int window) {
    try {
        return witt::verify_psi_maz(p, witt_len, window);
    } catch (const Error& e) {
        Report rep;
        rep.add("psi-maz/p=" + std::to_string(p) + "/construction", false, e.what());
        return rep;
    }
}

Report suite_di_matrix(long p, int witt_len, int window) {
    try {
        return witt::verify_di_matrix(p, witt_len, window);
    } catch (const Error& e) {
        Report rep;
        rep.add("di-matrix/p=" + std::to_string(p) + "/construction", false, e.what());
        return rep;
    }
}

Report suite_effectivity(long p, int count, unsigned seed) {
    Report rep;
    auto ctx = PrimeContext::create(p, 3);
    std::mt19937 rng(seed);
    bool cmp_ok = true;
    int checked = 0;
    for (int it = 0; it < count; ++it) {
        GradedModule M = random_a_module(ctx, rng, 2, 3);
        auto bc = gmod::base_change_A_to_B(M, 0, static_cast<int>(p) - 1);
        for (bool c : bc.comparison) cmp_ok = cmp_ok && c;
        ++checked;
    }
    rep.add(tag("effectivity", p, "A-to-B-iso-in-degrees-below-p"), cmp_ok,
            std::to_string(checked) + " random effective modules");
    // strictness at degree p for the weight-0 unit
    {
        FPModule W = FPModule::free_module(ctx, 1);
        GradedModule unit{ctx, 0, {W}, {}, std::vector<ModuleMap>{}};
        auto bc = gmod::base_change_A_to_B(unit, 0, static_cast<int>(p));
        bool ok = true;
        for (long i = 0; i < p; ++i) ok = ok && bc.comparison[static_cast<size_t>(i)];
        ok = ok && !bc.comparison[static_cast<size_t>(p)];
        rep.add(tag("effectivity", p, "unit-strict-at-degree-p"), ok, "");
    }
    rep.sort();
    return rep;
}

Report suite_tor1(long p) {
    Report rep;
    auto ctx = PrimeContext::create(p, 3);
    bool ok = true;
    std::string detail;
    for (long i = 0; i <= 2 * p; ++i) {
        // (B/A)^i = W/p^(i-e(i)); the kernel of p on it must be k exactly for i >= p
        long m = laurent::a_to_b_index_valuation(p, i);
        FPModule piece = m == 0 ? FPModule::zero(ctx)
                                : FPModule::cyclic(ctx, static_cast<int>(std::min<long>(
                                                             m, ctx->N())));
        ModuleMap mul_p = ModuleMap::identity(piece).mul_int(Int(p));
        long ker_len = gmod::kernel(mul_p).ker.length();
        bool expect_k = i >= p;
        ok = ok && (expect_k ? ker_len == ctx->f() : ker_len == 0);
        detail += (i ? "," : "") + std::to_string(ker_len);
    }
    rep.add(tag("tor1", p, "ker-p-on-B/A-is-k-exactly-in-degrees>=p"), ok,
            "lengths by degree: " + detail);
    rep.sort();
    return rep;
}

Report suite_witt_identities(long p, int witt_len, int iterations, unsigned seed) {
    Report rep;
    auto tab = witt::structure_polynomials(p, witt_len);
    auto ctx = PrimeContext::create(p, 3);
    std::mt19937 rng(seed);
    auto rand_w = [&](int len) {
        std::vector<Zq> c;
        for (int i = 0; i < len; ++i) c.push_back(ctx->from_int(Int(rng())));
        return witt::WittVec<Zq>(tab, c);
    };
    const int n = witt_len;
    bool ring_ok = true, fv_ok = true, vrel_ok = true, teich_ok = true;
    witt::WittVec<Zq> zero(tab, std::vector<Zq>(static_cast<size_t>(n), ctx->zero()));
    auto one = witt::witt_one(tab, ctx->one(), n);
    for (int it = 0; it < iterations; ++it) {
        auto x = rand_w(n), y = rand_w(n), z = rand_w(n);
        ring_ok = ring_ok && (x + y) + z == x + (y + z) && x * y == y * x &&
                  (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z &&
                  x + (-x) == zero && x * one == x;
        auto fv = x.verschiebung().frobenius();
        auto px = x.int_scalar(p);
        std::vector<Zq> trunc(px.components().begin(), px.components().end() - 1);
        fv_ok = fv_ok && fv == witt::WittVec<Zq>(tab, trunc);
        // V(y F(x)) = x V(y)
        auto yy = rand_w(n - 1);
        auto prod = yy * x.frobenius();
        std::vector<Zq> lifted;
        lifted.push_back(ctx->zero());
        for (const auto& c : prod.components()) lifted.push_back(c);
        std::vector<Zq> vy;
        vy.push_back(ctx->zero());
        for (const auto& c : yy.components()) vy.push_back(c);
        vrel_ok = vrel_ok &&
                  witt::WittVec<Zq>(tab, lifted) == x * witt::WittVec<Zq>(tab, vy);
        auto r = ctx->from_int(Int(rng())), s = ctx->from_int(Int(rng()));
        teich_ok = teich_ok && witt::teichmuller(tab, r, n) * witt::teichmuller(tab, s, n) ==
                                   witt::teichmuller(tab, r * s, n);
    }
    const std::string t = "witt-identities/p=" + std::to_string(p) + "/";
    rep.add(t + "ring-axioms", ring_ok, std::to_string(iterations) + " random triples");
    rep.add(t + "FV=p", fv_ok, "");
    rep.add(t + "V(yF(x))=xV(y)", vrel_ok, "");
    rep.add(t + "teichmuller-multiplicative", teich_ok, "");
    rep.sort();
    return rep;
}

std::vector<std::string> suite_names() {
    return {"pd",   "divisibility", "bigwitt",    "psi-maz",
            "di-matrix", "effectivity",  "tor1", "witt-identities"};
}

Report run_suite(const std::string& name, long p, int witt_len, int window) {
    if (name == "pd") return suite_pd(p, 2, window);
    if (name == "divisibility") return suite_divisibility(p, witt_len, window);
    if (name == "bigwitt") return suite_bigwitt(p, 8);
    if (name == "psi-maz") return suite_psi_maz(p, witt_len, window);
    if (name == "di-matrix") return suite_di_matrix(p, witt_len, window);
    if (name == "effectivity") return suite_effectivity(p, 100, 1000u + static_cast<unsigned>(p));
    if (name == "tor1") return suite_tor1(p);
    if (name == "witt-identities") return suite_witt_identities(p, witt_len, 1000, 42);
    if (name == "all") {
        Report rep;
        for (const auto& s : suite_names()) rep.merge(run_suite(s, p, witt_len, window));
        rep.sort();
        return rep;
    }
    throw DomainError("unknown suite '" + name + "'");
}

int criterion_count() { return 11; }

std::string criterion_title(int index) {
    switch (index) {
        case 1: return "Mazur numbers vs the exact-factorial oracle";
        case 2: return "divided-power relations";
        case 3: return "divisibility of [v+^p] by p in W(B)";
        case 4: return "big-Witt p-th root of 1 - v+^p x";
        case 5: return "Psi-Maz identities";
        case 6: return "DI comparison matrix over B (x) F_p";
        case 7: return "effectivity: A -> B base change and Tor_1 shadow";
        case 8: return "Fontaine-Laffaille abelian-category suite";
        case 9: return "syntomic cohomology and the Hom/Ext crosscheck";
        case 10: return "Sen endofunctor and Ext-class vanishing";
        case 11: return "Witt vector core identities";
        default: throw DomainError("criterion index out of range");
    }
}

Report criterion(int index) {
    switch (index) {
        case 1: return criterion_mazur();
        case 2: return criterion_pd();
        case 3: return criterion_divisibility();
        case 4: return criterion_bigwitt();
        case 5: return criterion_psi_maz();
        case 6: return criterion_di_matrix();
        case 7: return criterion_effectivity();
        case 8: return criterion_fl_suite();
        case 9: return criterion_syntomic();
        case 10: return criterion_sen();
        case 11: return criterion_witt_core();
        default: throw DomainError("criterion index out of range");
    }
}

std::vector<SelftestCase> selftest() {
    std::vector<SelftestCase> out;
    for (int i = 1; i <= criterion_count(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Report rep = criterion(i);
        auto end = std::chrono::steady_clock::now();
        SelftestCase c;
        c.index = i;
        c.title = criterion_title(i);
        c.pass = rep.all_pass();
        c.seconds = std::chrono::duration<double>(end - start).count();
        for (const auto& cs : rep.cases)
            if (!cs.pass) c.failures.push_back(cs);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace flmod::suites
