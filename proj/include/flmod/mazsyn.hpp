#pragma once

#include "flmod/fl.hpp"

namespace flmod::mazsyn {

using fl::FLModule;
using gmod::FPModule;
using gmod::Mat;

/*
 * Mazur module: effective graded module with sigma-semilinear phi_i: F^i -> F^0
 * satisfying p^([i+1]-[i]) phi_(i+1) = phi_i v-. The image of a Fontaine-
 * Laffaille module under phi_i = p^(i-[i]) phi'_i.
 */
struct MazurModule {
    gmod::GradedModule base;
    std::vector<Mat> phi;

    const gmod::CtxPtr& ctx() const { return base.ctx; }
    int wmax() const { return base.wmax; }
};

MazurModule fl_to_mazur(const FLModule& M);

struct MazurVerdict {
    bool valid = false;
    int failing_degree = -1;
    std::string detail;
};
MazurVerdict mazur_validate(const MazurModule& M);

/*
 * Syntomic cohomology in weight 0 <= i <= p-2: the two-term complex
 * F^i -> F^0 with differential phi_i - v-^i (v-^0 = id; F^i = 0 above the
 * window), with homology computed over the restricted-scalar context.
 */
struct SynResult {
    FPModule h0, h1;  // over the f = 1 context at precision N
};
SynResult syntomic_cohomology(const MazurModule& M, int weight);
SynResult syntomic_cohomology(const FLModule& M, int weight);

/*
 * Independent crosscheck for p-torsion modules: (dim H0, dim H1) must equal
 * (dim Hom_FL, dim Ext1_FL) of the pair (k{i}, M). The weight-i twist sits on
 * the unit source: with positive weights, cohomology in weight i is maps out
 * of the weight-i unit object.
 */
struct CrosscheckResult {
    bool pass = false;
    long syn_h0 = 0, syn_h1 = 0;
    long hom = 0, ext = 0;
};
CrosscheckResult syn_vs_ext_crosscheck(const FLModule& M, int weight);

}  // namespace flmod::mazsyn
