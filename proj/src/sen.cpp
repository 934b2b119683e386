#include "flmod/sen.hpp"

namespace flmod::sen {

using arith::Zq;
using fl::graded_fiber_data;
using fl::GradedFiberData;
using gmod::CtxPtr;
using gmod::FPModule;
using gmod::ModuleMap;

namespace {

void check_sen_input(const FLModule& M) {
    if (!M.mod_p()) throw DomainError("sen: module must be killed by p");
    if (M.wmax() > M.ctx()->p() - 1)
        throw DomainError("sen: window must lie inside [0, p-1]");
}

Mat invert(const Mat& m) {
    auto inv = gmod::solve(m, Mat::identity(m.ctx(), m.rows()));
    if (!inv) throw DomainError("sen: Phi is not invertible (module fails FL)");
    return *inv;
}

}  // namespace

Mat sen_theta(const FLModule& Ma) {
    check_sen_input(Ma);
    FLModule M = Ma.reduce_mod_p();
    GradedFiberData fd = graded_fiber_data(M);
    // Theta' = (+) (-i) Id in the gr-block coordinates; entries stay in F_p,
    // with 1 - p reduced at construction time (so -(p-1) enters as 1)
    int total = fd.Phi.cols();
    Mat thetap(M.ctx(), total, total);
    for (int i = 0; i <= M.wmax(); ++i)
        for (int c = 0; c < fd.gr[static_cast<size_t>(i)].ngens(); ++c) {
            int idx = fd.offsets[static_cast<size_t>(i)] + c;
            thetap.at(idx, idx) = M.ctx()->from_int(Int(-i));
        }
    Mat phi_inv = invert(fd.Phi);
    return fd.Phi * thetap * phi_inv;
}

AlphaResult alpha(const FLModule& Ma) {
    check_sen_input(Ma);
    FLModule M = Ma.reduce_mod_p();
    const long p = M.ctx()->p();
    GradedFiberData fd = graded_fiber_data(M);
    AlphaResult out;
    out.offsets = fd.offsets;
    int total = fd.Phi.cols();
    out.alpha = Mat(M.ctx(), total, total);
    FPModule top = M.base.piece_eff(static_cast<int>(p) - 1);
    if (top.is_zero()) {
        out.theta_bar = Mat(M.ctx(), fd.gr[0].ngens(), 0);
        return out;
    }
    Mat theta = sen_theta(Ma);
    // v-^(p-1): F^(p-1) -> F^0
    Mat vm = Mat::identity(M.ctx(), M.base.piece(0).ngens());
    for (int i = 1; i <= static_cast<int>(p) - 1 && i <= M.wmax(); ++i)
        vm = vm * M.base.vminus[static_cast<size_t>(i - 1)].A;
    // Theta-bar: project Theta(v-^(p-1) x) to gr^0 = F^0 / v- F^1
    out.theta_bar = fd.gr_proj[0] * theta * vm;
    out.zero = out.theta_bar.is_zero();
    // block gr^(p-1) -> gr^0; the F^*-pullback acts on the already-twisted
    // gr-coordinates, so the matrix is used as is
    int off_top = fd.offsets[static_cast<size_t>(p - 1)];
    for (int c = 0; c < out.theta_bar.cols(); ++c)
        for (int r = 0; r < out.theta_bar.rows(); ++r)
            out.alpha.at(fd.offsets[0] + r, off_top + c) = out.theta_bar.at(r, c);
    return out;
}

FLModule di_maz_endofunctor(const FLModule& Ma) {
    check_sen_input(Ma);
    AlphaResult al = alpha(Ma);
    if (al.zero) return Ma;  // fixes every module with F^(p-1) = 0 bitwise
    FLModule M = Ma.reduce_mod_p();
    GradedFiberData fd = graded_fiber_data(M);
    int total = fd.Phi.cols();
    Mat newPhi = fd.Phi * (Mat::identity(M.ctx(), total) - al.alpha);
    // reassemble phi'_i from the new Phi: phi'_i = Phi_new|gr^i o gr_proj_i,
    // twisted back to input coordinates
    FLModule out = M;
    for (int i = 0; i <= M.wmax(); ++i) {
        std::vector<int> cols;
        for (int c = 0; c < fd.gr[static_cast<size_t>(i)].ngens(); ++c)
            cols.push_back(fd.offsets[static_cast<size_t>(i)] + c);
        Mat block = newPhi.columns(cols);
        out.phi[static_cast<size_t>(i)] = block * fd.gr_proj[static_cast<size_t>(i)].frobenius();
    }
    auto v = fl::fl_validate(out);
    if (!v.valid)
        throw VerificationError("di_maz_endofunctor: output fails validation: " + v.detail);
    return out;
}

FLModule standard_extension(const CtxPtr& ctx, const Zq& t) {
    const long p = ctx->p();
    CtxPtr kx = ctx->residue_ctx();
    std::vector<Int> tc = t.coeffs();
    tc.resize(static_cast<size_t>(kx->f()), 0);
    Zq tk(kx, tc);
    FLModule M;
    M.base.ctx = kx;
    M.base.wmax = static_cast<int>(p) - 1;
    FPModule two{kx, {1, 1}};
    FPModule one{kx, {1}};
    M.base.pieces.push_back(two);
    for (int i = 1; i <= M.base.wmax; ++i) M.base.pieces.push_back(one);
    for (int i = 1; i <= M.base.wmax; ++i) {
        if (i == 1) {
            Mat v(kx, 2, 1);
            v.at(1, 0) = kx->one();  // x_1 -> e2
            M.base.vminus.emplace_back(one, two, std::move(v), false);
        } else {
            M.base.vminus.emplace_back(ModuleMap::identity(one));
        }
    }
    {
        Mat a0(kx, 2, 2);
        a0.at(0, 0) = kx->one();  // phi'_0: e1 -> e1, e2 -> 0
        M.phi.push_back(std::move(a0));
    }
    for (int i = 1; i <= M.base.wmax - 1; ++i) M.phi.push_back(Mat(kx, 2, 1));
    {
        Mat atop(kx, 2, 1);
        atop.at(0, 0) = tk;        // phi'_(p-1): x -> t e1 + e2
        atop.at(1, 0) = kx->one();
        M.phi.push_back(std::move(atop));
    }
    return M;
}

ExtClass extension_class(const FLModule& Ma) {
    check_sen_input(Ma);
    FLModule M = Ma.reduce_mod_p();
    const long p = M.ctx()->p();
    const int w = static_cast<int>(p) - 1;
    if (M.wmax() != w || M.base.piece(0).ngens() != 2)
        throw DomainError("extension_class: not a rank-2 extension of k{p-1} by k{0}");
    for (int i = 1; i <= w; ++i)
        if (M.base.piece(i).ngens() != 1)
            throw DomainError("extension_class: not a rank-2 extension of k{p-1} by k{0}");
    CtxPtr kx = M.ctx();
    // e2 = v-^(p-1)(x)
    Mat e2(kx, 2, 1);
    {
        Mat vm = Mat::identity(kx, 2);
        for (int i = 1; i <= w; ++i) vm = vm * M.base.vminus[static_cast<size_t>(i - 1)].A;
        e2 = vm;
    }
    // e1 spans im(phi'_0) and is fixed: solve (A0 sigma - id) e1 = 0
    Mat e1(kx, 2, 1);
    {
        const Mat& A0 = M.phi[0];
        // over F_p-coordinates: A0 sigma - id as a restricted-scalar matrix
        gmod::AddMap am{FPModule{kx, {1, 1}}, FPModule{kx, {1, 1}},
                        {{A0, 1}, {Mat::identity(kx, 2).mul_int(-1), 0}}};
        auto rm = gmod::restrict_scalars(am);
        Mat K = gmod::kernel_gens(rm.A);
        if (K.cols() == 0)
            throw DomainError("extension_class: sub-object unit is not 1 (non-standard shape)");
        // first kernel column, mapped back to k-coordinates
        const int f = kx->f();
        for (int r = 0; r < 2; ++r) {
            std::vector<Int> coeffs;
            for (int l = 0; l < f; ++l) coeffs.push_back(K.at(r * f + l, 0).coeffs()[0]);
            e1.at(r, 0) = Zq(kx, coeffs);
        }
        // normalize the F_p^* freedom when the leading entry is rational
        for (int r = 0; r < 2; ++r) {
            const Zq& c = e1.at(r, 0);
            if (c.is_zero()) continue;
            bool scalar = true;
            for (size_t l = 1; l < c.coeffs().size(); ++l) scalar = scalar && c.coeffs()[l] == 0;
            if (scalar) e1 = e1.mul_scalar(c.inverse());
            break;
        }
        // e1 must span im(phi'_0)
        Mat probe = e1.augment(A0);
        auto s = gmod::smith_normal_form(probe);
        int rank = 0;
        for (int v : s.divisor_vals) rank += v == 0 ? 1 : 0;
        if (rank != 1) throw DomainError("extension_class: im(phi'_0) is not the expected line");
    }
    // write phi'_(p-1)(x) = a e1 + b e2 and normalize by b
    Mat basis = e1.augment(e2);
    auto coords = gmod::solve(basis, M.phi[static_cast<size_t>(w)]);
    if (!coords) throw DomainError("extension_class: (e1, e2) is not a basis of F^0");
    Zq a = coords->at(0, 0), b = coords->at(1, 0);
    if (!b.is_unit()) throw DomainError("extension_class: quotient unit vanishes");
    ExtClass out{a * b.inverse(), false};

    // independent split check: a section s of the projection to k{p-1} with
    // s(x) = x and s0(e2-bar) = e2 + c e1 needs sigma(c) u_s = 0 and a = 0
    FLModule q = fl::twist(fl::unit_module(kx), w);
    fl::HomExt sections = fl::fl_hom_ext1(q, M);
    // any hom with top component nonzero is a splitting candidate
    for (const auto& h : sections.hom_basis) {
        if (!h[static_cast<size_t>(w)].is_zero()) {
            out.splits = true;
            break;
        }
    }
    return out;
}

bool fl_equal(const FLModule& a, const FLModule& b) {
    if (a.wmax() != b.wmax()) return false;
    for (int i = 0; i <= a.wmax(); ++i) {
        if (a.base.piece(i).exps != b.base.piece(i).exps) return false;
        if (!(a.phi[static_cast<size_t>(i)] == b.phi[static_cast<size_t>(i)])) return false;
    }
    for (int i = 1; i <= a.wmax(); ++i)
        if (!(a.base.vminus[static_cast<size_t>(i - 1)].A ==
              b.base.vminus[static_cast<size_t>(i - 1)].A))
            return false;
    return true;
}

}  // namespace flmod::sen
