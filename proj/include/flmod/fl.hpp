#pragma once

#include "flmod/gradmod.hpp"
#include "flmod/report.hpp"

#include <random>

namespace flmod::fl {

using gmod::AddMap;
using gmod::CtxPtr;
using gmod::FPModule;
using gmod::GradedModule;
using gmod::Mat;
using gmod::ModuleMap;

/*
 * Fontaine-Laffaille module: an effective graded module F^0..F^wmax with
 * sigma-semilinear divided Frobenii phi'_i: F^i -> F^0 (targets normalized to
 * F^0 = F^(-infinity) via effectivity) satisfying phi'_(i-1) v- = p phi'_i,
 * such that the assembled map from the fiber at v- = p to the fiber at
 * v- = 1 = F^0 is an isomorphism.
 */
struct FLModule {
    GradedModule base;
    std::vector<Mat> phi;  // phi[i]: F^i -> F^0, the matrix of x -> phi[i] sigma(x)

    const CtxPtr& ctx() const { return base.ctx; }
    int wmax() const { return base.wmax; }
    bool mod_p() const;
    FLModule direct_sum(const FLModule& o) const;
    /* Entrywise reduction of all data mod p (precision-1 context). */
    FLModule reduce_mod_p() const;
};

/* Graded maps per degree commuting with v- and with phi'. */
struct FLMorphism {
    FLModule src, dst;  // copies of the endpoints
    std::vector<Mat> f;  // f[i]: F^i_src -> F^i_dst, 0 <= i <= max window
};

struct Verdict {
    bool valid = false;
    bool certified = true;  // false: precision cannot decide ("not-N-determined")
    std::string detail;
};

/* Checks the compatibility relations, the fiber isomorphism (via SNF after
   restriction of scalars), and for p-torsion modules the equivalent pair:
   v- split injective and sum(im phi_i) = F^0; also reports vanishing of the
   derived-fiber H^-1 at a in {0, 1, p}. */
Verdict fl_validate(const FLModule& M);

/* Verifies an FLMorphism: shapes, v- and phi compatibility. */
Verdict fl_morphism_check(const FLMorphism& f);

struct FLKernel {
    FLModule ker;
    FLMorphism incl;
};
FLKernel fl_kernel(const FLMorphism& f);

struct FLCokernel {
    FLModule coker;
    FLMorphism proj;
};
FLCokernel fl_cokernel(const FLMorphism& f);

/*
 * Hom and Ext^1 for p-torsion modules via the twisted-difference map on fibers:
 * C0 = degree-0 graded Homs commuting with v-, C1 = Hom(F^*(fiber_p M), F^0_N),
 * delta(f) = i_1^*(f) phi_M - phi_N F^* i_p^*(f). Hom = ker delta, Ext1 =
 * coker delta (equivalently the mapping fiber against the torsion-free lift of
 * M, which is why plain graded Homs suffice for C0).
 */
struct HomExt {
    long hom_dim = 0;  // F_p-dimension of ker delta
    long ext_dim = 0;  // F_p-dimension of coker delta
    /* graded maps spanning Hom over F_p, over the residue context */
    std::vector<std::vector<Mat>> hom_basis;
};
HomExt fl_hom_ext1(const FLModule& M, const FLModule& N);

/* The Tate object W{j}: F^i = W for i <= j, identity transitions,
   phi'_j = u sigma, phi'_(j-m) = p^m u sigma. Requires 0 <= j. */
FLModule tate_module(const CtxPtr& ctx, int j, const arith::Zq& u);
FLModule unit_module(const CtxPtr& ctx);  // W{0} with u = 1

/* Window shift by i >= 0: F'^l = F^(l-i), phi' extended by p-powers at the
   bottom; twist(M, 0) = M. */
FLModule twist(const FLModule& M, int i);

/* Entrywise lift of a mod-p module to precision N (least non-negative
   residues); reduce_mod_p of the output equals the input. */
FLModule torsionfree_lift(const FLModule& M, int N);

/* Deterministic generator of valid mod-p FL modules: split line bundles with a
   random invertible Phi, conjugated by a random graded automorphism. */
FLModule random_flmodule(const CtxPtr& ctx, std::mt19937& rng, int max_weight, int max_dim);

/* Random element of Hom_FL(M, N) (possibly zero). */
FLMorphism random_morphism(const FLModule& M, const FLModule& N, std::mt19937& rng);

/* Fiber data of a mod-p module: gr^i = F^i / v- F^(i+1) and the assembled
   semilinear matrix Phi: F^*(+) gr^i) -> F^0 (invertible iff M is FL). */
struct GradedFiberData {
    std::vector<FPModule> gr;       // gr^i for 0 <= i <= wmax
    std::vector<Mat> gr_proj;       // F^i -> gr^i
    std::vector<Mat> gr_sect;       // gr^i -> F^i sections
    std::vector<int> offsets;       // column offset of gr^i inside Phi
    Mat Phi;                        // (dim F^0) x (sum dim gr^i)
};
GradedFiberData graded_fiber_data(const FLModule& M);

}  // namespace flmod::fl
