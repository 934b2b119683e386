#include "flmod/mazsyn.hpp"

#include "flmod/arith.hpp"

namespace flmod::mazsyn {

using arith::pd_exponent;
using gmod::AddMap;
using gmod::ModuleMap;

MazurModule fl_to_mazur(const FLModule& M) {
    MazurModule r;
    r.base = M.base;
    const long p = M.ctx()->p();
    for (int i = 0; i <= M.wmax(); ++i) {
        long e = i - pd_exponent(p, i);  // 0 for i < p
        if (e < 0) throw VerificationError("fl_to_mazur: negative rescaling exponent");
        r.phi.push_back(M.phi[static_cast<size_t>(i)].mul_int(pow_int(Int(p), e)));
    }
    return r;
}

MazurVerdict mazur_validate(const MazurModule& M) {
    MazurVerdict v;
    const long p = M.ctx()->p();
    if (M.phi.size() != static_cast<size_t>(M.wmax()) + 1) {
        v.detail = "phi count != wmax + 1";
        return v;
    }
    for (int i = 0; i + 1 <= M.wmax(); ++i) {
        // p^([i+1]-[i]) phi_(i+1) = phi_i v-
        long e = pd_exponent(p, i + 1) - pd_exponent(p, i);
        Mat lhs = M.phi[static_cast<size_t>(i + 1)].mul_int(pow_int(Int(p), e));
        Mat rhs = M.phi[static_cast<size_t>(i)] *
                  M.base.vminus[static_cast<size_t>(i)].A.frobenius();
        if (!ModuleMap(M.base.piece(i + 1), M.base.piece(0), lhs - rhs, false).is_zero()) {
            v.failing_degree = i;
            v.detail = "p^([i+1]-[i]) phi_(i+1) != phi_i v- at i = " + std::to_string(i);
            return v;
        }
    }
    v.valid = true;
    return v;
}

SynResult syntomic_cohomology(const MazurModule& M, int weight) {
    const long p = M.ctx()->p();
    if (weight < 0 || weight > p - 2)
        throw DomainError("syntomic_cohomology: weight must lie in [0, p-2]");
    FPModule src = M.base.piece_eff(weight);
    FPModule dst = M.base.piece(0);
    // v-^weight: the composite of transition maps (identity composite at 0)
    Mat vm = Mat::identity(M.ctx(), dst.ngens());
    if (weight > 0) {
        if (weight > M.wmax()) {
            vm = Mat(M.ctx(), dst.ngens(), 0);
        } else {
            vm = M.base.vminus[0].A;
            for (int i = 2; i <= weight; ++i) vm = vm * M.base.vminus[static_cast<size_t>(i - 1)].A;
        }
    }
    Mat phi = weight <= M.wmax() ? M.phi[static_cast<size_t>(weight)]
                                 : Mat(M.ctx(), dst.ngens(), 0);
    AddMap d{src, dst, {{phi, 1}, {vm.mul_int(-1), 0}}};
    auto h = gmod::additive_two_term_homology(d);
    return {h.first, h.second};
}

SynResult syntomic_cohomology(const FLModule& M, int weight) {
    return syntomic_cohomology(fl_to_mazur(M), weight);
}

CrosscheckResult syn_vs_ext_crosscheck(const FLModule& M, int weight) {
    if (!M.mod_p()) throw DomainError("syn_vs_ext_crosscheck: module must be killed by p");
    const long p = M.ctx()->p();
    if (weight < 0 || weight > p - 2)
        throw DomainError("syn_vs_ext_crosscheck: weight must lie in [0, p-2]");
    CrosscheckResult r;
    SynResult syn = syntomic_cohomology(M, weight);
    r.syn_h0 = syn.h0.length();
    r.syn_h1 = syn.h1.length();
    FLModule unit1 = fl::unit_module(M.ctx()->residue_ctx());
    fl::HomExt he = fl::fl_hom_ext1(fl::twist(unit1, weight), M);
    r.hom = he.hom_dim;
    r.ext = he.ext_dim;
    r.pass = r.syn_h0 == r.hom && r.syn_h1 == r.ext;
    return r;
}

}  // namespace flmod::mazsyn
