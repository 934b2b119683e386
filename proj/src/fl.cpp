#include "flmod/fl.hpp"

#include <numeric>
#include <sstream>

namespace flmod::fl {

using arith::Zq;
using gmod::AddMap;
using gmod::FiberResult;
using gmod::KernelResult;

namespace {

/* phi'_(i-1) o v- and p phi'_i agree as semilinear maps F^i -> F^0. */
bool phi_compatible(const FLModule& M, std::string* why) {
    const Int p(M.ctx()->p());
    for (int i = 1; i <= M.wmax(); ++i) {
        Mat lhs = M.phi[static_cast<size_t>(i - 1)] *
                  M.base.vminus[static_cast<size_t>(i - 1)].A.frobenius();
        Mat rhs = M.phi[static_cast<size_t>(i)].mul_int(p);
        ModuleMap diff(M.base.piece(i), M.base.piece(0), lhs - rhs, false);
        if (!diff.is_zero()) {
            if (why) *why = "phi'_(i-1) v- != p phi'_i at i = " + std::to_string(i);
            return false;
        }
    }
    return true;
}

Mat assembled_phi(const FLModule& M, const std::vector<int>& offsets, int total) {
    Mat A(M.ctx(), M.base.piece(0).ngens(), total);
    for (int i = 0; i <= M.wmax(); ++i) {
        const Mat& Ai = M.phi[static_cast<size_t>(i)];
        for (int c = 0; c < Ai.cols(); ++c)
            for (int r = 0; r < Ai.rows(); ++r)
                A.at(r, offsets[static_cast<size_t>(i)] + c) = Ai.at(r, c);
    }
    return A;
}

FLModule pad_window(const FLModule& M, int W) {
    if (W <= M.wmax()) return M;
    FLModule r = M;
    for (int i = M.wmax() + 1; i <= W; ++i) {
        FPModule z = FPModule::zero(M.ctx());
        r.base.vminus.push_back(
            ModuleMap::zero_map(z, r.base.pieces[static_cast<size_t>(i - 1)]));
        r.base.pieces.push_back(z);
        r.phi.push_back(Mat(M.ctx(), M.base.piece(0).ngens(), 0));
    }
    r.base.wmax = W;
    return r;
}

Mat lift_entries(const Mat& m, const CtxPtr& ctx) {
    Mat r(ctx, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            std::vector<Int> c = m.at(i, j).coeffs();
            c.resize(static_cast<size_t>(ctx->f()), 0);
            r.at(i, j) = Zq(ctx, c);
        }
    return r;
}

}  // namespace

bool FLModule::mod_p() const {
    for (const auto& piece : base.pieces)
        if (!piece.mod_p()) return false;
    return true;
}

FLModule FLModule::direct_sum(const FLModule& o) const {
    FLModule a = pad_window(*this, std::max(wmax(), o.wmax()));
    FLModule b = pad_window(o, a.wmax());
    FLModule r;
    r.base = a.base.direct_sum(b.base);
    for (int i = 0; i <= a.wmax(); ++i) {
        // phi blocks share the target F^0 (+) F^0 but split over sources
        const Mat& A = a.phi[static_cast<size_t>(i)];
        const Mat& B = b.phi[static_cast<size_t>(i)];
        Mat m(ctx(), A.rows() + B.rows(), A.cols() + B.cols());
        for (int x = 0; x < A.rows(); ++x)
            for (int y = 0; y < A.cols(); ++y) m.at(x, y) = A.at(x, y);
        for (int x = 0; x < B.rows(); ++x)
            for (int y = 0; y < B.cols(); ++y) m.at(A.rows() + x, A.cols() + y) = B.at(x, y);
        r.phi.push_back(std::move(m));
    }
    return r;
}

FLModule FLModule::reduce_mod_p() const {
    CtxPtr ctx1 = ctx()->residue_ctx();
    FLModule r;
    r.base.ctx = ctx1;
    r.base.wmax = wmax();
    for (const auto& piece : base.pieces) {
        FPModule q{ctx1, {}};
        q.exps.assign(piece.exps.size(), 1);
        r.base.pieces.push_back(std::move(q));
    }
    for (int i = 1; i <= wmax(); ++i)
        r.base.vminus.emplace_back(r.base.piece(i), r.base.piece(i - 1),
                                   lift_entries(base.vminus[static_cast<size_t>(i - 1)].A, ctx1),
                                   false);
    for (const auto& A : phi) r.phi.push_back(lift_entries(A, ctx1));
    return r;
}

Verdict fl_validate(const FLModule& M) {
    Verdict v;
    try {
        M.base.validate();
    } catch (const Error& e) {
        v.detail = e.what();
        return v;
    }
    if (M.phi.size() != static_cast<size_t>(M.wmax()) + 1) {
        v.detail = "phi count != wmax + 1";
        return v;
    }
    for (int i = 0; i <= M.wmax(); ++i) {
        const Mat& A = M.phi[static_cast<size_t>(i)];
        if (A.rows() != M.base.piece(0).ngens() || A.cols() != M.base.piece(i).ngens()) {
            v.detail = "phi[" + std::to_string(i) + "] shape mismatch";
            return v;
        }
    }
    if (!phi_compatible(M, &v.detail)) return v;

    if (M.mod_p()) {
        // the equivalent torsion conditions first, for specific witnesses:
        // v- split injective and sum im(phi_i) = F^0
        for (int i = 1; i <= M.wmax(); ++i) {
            if (!gmod::kernel(M.base.vminus[static_cast<size_t>(i - 1)]).ker.is_zero()) {
                v.detail = "v- is not a split injection at degree " + std::to_string(i);
                return v;
            }
        }
        std::vector<int> off;
        int t = 0;
        FPModule big{M.ctx(), {}};
        for (int i = 0; i <= M.wmax(); ++i) {
            off.push_back(t);
            t += M.base.piece(i).ngens();
            big = big.direct_sum(M.base.piece(i));
        }
        Mat Asum = assembled_phi(M, off, t);
        ModuleMap sum_map(big, M.base.piece(0), Asum, false);
        if (!gmod::cokernel(sum_map).coker.is_zero()) {
            v.detail = "sum of im(phi_i) != F^0";
            return v;
        }
    }

    // fiber isomorphism F^*(M_{v-=p}) -> M_{v-=1} = F^0 via scalar restriction
    int total = 0;
    for (int i = 0; i <= M.wmax(); ++i) total += M.base.piece(i).ngens();
    FiberResult fib = gmod::graded_fiber(M.base, Int(M.ctx()->p()));
    Mat Aall = assembled_phi(M, fib.block_offsets, total);
    Mat H = Aall * fib.sect.frobenius();
    AddMap hmap{fib.h0, M.base.piece(0), {{H, 1}}};
    gmod::RestrictedMap rm = gmod::restrict_scalars(hmap);
    auto verdict = gmod::iso_check(ModuleMap(rm.src, rm.dst, rm.A, false));
    if (!verdict.iso) {
        v.detail = "fiber map is not an isomorphism: " + verdict.detail;
        return v;
    }
    if (!verdict.certified) {
        v.detail = "not-N-determined: " + verdict.detail;
        v.certified = false;
        return v;
    }

    // derived fibers stay in degree 0
    for (long a : {0L, 1L, static_cast<long>(M.ctx()->p())}) {
        auto fr = gmod::graded_fiber(M.base, Int(a));
        if (!fr.hminus1.is_zero()) {
            v.detail = "derived fiber at a = " + std::to_string(a) +
                       " has H^-1 = " + fr.hminus1.describe();
            return v;
        }
    }
    v.valid = true;
    return v;
}

Verdict fl_morphism_check(const FLMorphism& fm) {
    Verdict v;
    int W = std::max(fm.src.wmax(), fm.dst.wmax());
    FLModule M = pad_window(fm.src, W), N = pad_window(fm.dst, W);
    if (fm.f.size() != static_cast<size_t>(W) + 1) {
        v.detail = "component count != window + 1";
        return v;
    }
    for (int i = 0; i <= W; ++i) {
        const Mat& F = fm.f[static_cast<size_t>(i)];
        if (F.rows() != N.base.piece(i).ngens() || F.cols() != M.base.piece(i).ngens()) {
            v.detail = "component " + std::to_string(i) + " shape mismatch";
            return v;
        }
    }
    for (int i = 1; i <= W; ++i) {
        Mat lhs = fm.f[static_cast<size_t>(i - 1)] * M.base.vminus[static_cast<size_t>(i - 1)].A;
        Mat rhs = N.base.vminus[static_cast<size_t>(i - 1)].A * fm.f[static_cast<size_t>(i)];
        if (!ModuleMap(M.base.piece(i), N.base.piece(i - 1), lhs - rhs, false).is_zero()) {
            v.detail = "does not commute with v- at degree " + std::to_string(i);
            return v;
        }
    }
    for (int i = 0; i <= W; ++i) {
        Mat lhs = fm.f[0] * M.phi[static_cast<size_t>(i)];
        Mat rhs = N.phi[static_cast<size_t>(i)] * fm.f[static_cast<size_t>(i)].frobenius();
        if (!ModuleMap(M.base.piece(i), N.base.piece(0), lhs - rhs, false).is_zero()) {
            v.detail = "does not commute with phi at degree " + std::to_string(i);
            return v;
        }
    }
    v.valid = true;
    return v;
}

FLKernel fl_kernel(const FLMorphism& fm) {
    {
        Verdict mv = fl_morphism_check(fm);
        if (!mv.valid) throw DomainError("fl_kernel: invalid morphism: " + mv.detail);
    }
    int W = std::max(fm.src.wmax(), fm.dst.wmax());
    FLModule M = pad_window(fm.src, W), N = pad_window(fm.dst, W);
    std::vector<KernelResult> ks;
    for (int i = 0; i <= W; ++i)
        ks.push_back(gmod::kernel(
            ModuleMap(M.base.piece(i), N.base.piece(i), fm.f[static_cast<size_t>(i)], false)));
    FLModule K;
    K.base.ctx = M.ctx();
    K.base.wmax = W;
    for (auto& k : ks) K.base.pieces.push_back(k.ker);
    for (int i = 1; i <= W; ++i) {
        // v- restricts to the kernel: solve incl_(i-1) X = v- incl_i in M^(i-1)
        Mat rhs = M.base.vminus[static_cast<size_t>(i - 1)].A * ks[static_cast<size_t>(i)].incl.A;
        auto X = gmod::solve(
            ks[static_cast<size_t>(i - 1)].incl.A.augment(M.base.piece(i - 1).moduli()), rhs);
        if (!X) throw VerificationError("fl_kernel: v- does not restrict to the kernel");
        std::vector<int> top(static_cast<size_t>(ks[static_cast<size_t>(i - 1)].ker.ngens()));
        std::iota(top.begin(), top.end(), 0);
        K.base.vminus.emplace_back(K.base.pieces[static_cast<size_t>(i)],
                                   K.base.pieces[static_cast<size_t>(i - 1)], X->rows_of(top));
    }
    for (int i = 0; i <= W; ++i) {
        Mat rhs = M.phi[static_cast<size_t>(i)] * ks[static_cast<size_t>(i)].incl.A.frobenius();
        auto X = gmod::solve(ks[0].incl.A.augment(M.base.piece(0).moduli()), rhs);
        if (!X) throw VerificationError("fl_kernel: phi does not restrict to the kernel");
        std::vector<int> top(static_cast<size_t>(ks[0].ker.ngens()));
        std::iota(top.begin(), top.end(), 0);
        K.phi.push_back(X->rows_of(top));
    }
    Verdict kv = fl_validate(K);
    if (!kv.certified) throw DomainError("fl_kernel: " + kv.detail);
    if (!kv.valid) throw VerificationError("fl_kernel: kernel fails validation: " + kv.detail);
    FLMorphism incl;
    incl.src = K;
    incl.dst = M;
    for (int i = 0; i <= W; ++i) incl.f.push_back(ks[static_cast<size_t>(i)].incl.A);
    return {std::move(K), std::move(incl)};
}

FLCokernel fl_cokernel(const FLMorphism& fm) {
    {
        Verdict mv = fl_morphism_check(fm);
        if (!mv.valid) throw DomainError("fl_cokernel: invalid morphism: " + mv.detail);
    }
    int W = std::max(fm.src.wmax(), fm.dst.wmax());
    FLModule M = pad_window(fm.src, W), N = pad_window(fm.dst, W);
    std::vector<gmod::CokernelResult> cs;
    for (int i = 0; i <= W; ++i)
        cs.push_back(gmod::cokernel(
            ModuleMap(M.base.piece(i), N.base.piece(i), fm.f[static_cast<size_t>(i)], false)));
    FLModule C;
    C.base.ctx = N.ctx();
    C.base.wmax = W;
    for (auto& c : cs) C.base.pieces.push_back(c.coker);
    for (int i = 1; i <= W; ++i) {
        Mat A = cs[static_cast<size_t>(i - 1)].proj.A *
                N.base.vminus[static_cast<size_t>(i - 1)].A * cs[static_cast<size_t>(i)].sect;
        C.base.vminus.emplace_back(C.base.pieces[static_cast<size_t>(i)],
                                   C.base.pieces[static_cast<size_t>(i - 1)], std::move(A));
    }
    for (int i = 0; i <= W; ++i)
        C.phi.push_back(cs[0].proj.A * N.phi[static_cast<size_t>(i)] *
                        cs[static_cast<size_t>(i)].sect.frobenius());
    Verdict cv = fl_validate(C);
    if (!cv.certified) throw DomainError("fl_cokernel: " + cv.detail);
    if (!cv.valid)
        throw VerificationError("fl_cokernel: cokernel fails validation: " + cv.detail);
    FLMorphism proj;
    proj.src = N;
    proj.dst = C;
    for (int i = 0; i <= W; ++i) proj.f.push_back(cs[static_cast<size_t>(i)].proj.A);
    return {std::move(C), std::move(proj)};
}

GradedFiberData graded_fiber_data(const FLModule& M) {
    if (!M.mod_p()) throw DomainError("graded_fiber_data: module must be killed by p");
    GradedFiberData out;
    int total = 0;
    for (int i = 0; i <= M.wmax(); ++i) {
        auto ck = gmod::cokernel(M.base.vminus_eff(i + 1));
        out.offsets.push_back(total);
        total += ck.coker.ngens();
        out.gr.push_back(ck.coker);
        out.gr_proj.push_back(ck.proj.A);
        out.gr_sect.push_back(ck.sect);
    }
    Mat Phi(M.ctx(), M.base.piece(0).ngens(), total);
    for (int i = 0; i <= M.wmax(); ++i) {
        Mat block =
            M.phi[static_cast<size_t>(i)] * out.gr_sect[static_cast<size_t>(i)].frobenius();
        for (int c = 0; c < block.cols(); ++c)
            for (int r = 0; r < block.rows(); ++r)
                Phi.at(r, out.offsets[static_cast<size_t>(i)] + c) = block.at(r, c);
    }
    out.Phi = std::move(Phi);
    return out;
}

HomExt fl_hom_ext1(const FLModule& Ma, const FLModule& Nb) {
    if (!Ma.mod_p() || !Nb.mod_p())
        throw DomainError("fl_hom_ext1: both modules must be killed by p");
    FLModule M = Ma.reduce_mod_p();
    FLModule N = Nb.reduce_mod_p();
    int W = std::max(M.wmax(), N.wmax());
    M = pad_window(M, W);
    N = pad_window(N, W);
    CtxPtr kx = M.ctx();  // residue field context
    const int f = kx->f();
    const long p = kx->p();

    // unknown layout: entries of f_i, column-major per degree
    std::vector<int> var_off;
    int nvars = 0;
    for (int i = 0; i <= W; ++i) {
        var_off.push_back(nvars);
        nvars += N.base.piece(i).ngens() * M.base.piece(i).ngens();
    }
    auto var_index = [&](int i, int r, int c) {
        return var_off[static_cast<size_t>(i)] + c * N.base.piece(i).ngens() + r;
    };
    // v- commutation constraints, k-linear in the unknowns
    std::vector<std::vector<std::pair<int, Zq>>> rows;
    for (int i = 1; i <= W; ++i) {
        const Mat& VM = M.base.vminus[static_cast<size_t>(i - 1)].A;
        const Mat& VN = N.base.vminus[static_cast<size_t>(i - 1)].A;
        int rows_out = N.base.piece(i - 1).ngens();
        int cols_out = M.base.piece(i).ngens();
        for (int r = 0; r < rows_out; ++r)
            for (int c = 0; c < cols_out; ++c) {
                std::vector<std::pair<int, Zq>> row;
                for (int s = 0; s < VM.rows(); ++s)
                    if (!VM.at(s, c).is_zero())
                        row.emplace_back(var_index(i - 1, r, s), VM.at(s, c));
                for (int s = 0; s < VN.cols(); ++s)
                    if (!VN.at(r, s).is_zero())
                        row.emplace_back(var_index(i, s, c), -VN.at(r, s));
                rows.push_back(std::move(row));
            }
    }
    Mat constraint(kx, static_cast<int>(rows.size()), nvars);
    for (int r = 0; r < constraint.rows(); ++r)
        for (auto& [var, coeff] : rows[static_cast<size_t>(r)])
            constraint.at(r, var) = constraint.at(r, var) + coeff;
    Mat hom_k = gmod::kernel_gens(constraint);

    auto unpack = [&](const Mat& vec, int col) {
        std::vector<Mat> comps;
        for (int i = 0; i <= W; ++i) {
            Mat F(kx, N.base.piece(i).ngens(), M.base.piece(i).ngens());
            for (int c = 0; c < F.cols(); ++c)
                for (int r = 0; r < F.rows(); ++r) F.at(r, c) = vec.at(var_index(i, r, c), col);
            comps.push_back(std::move(F));
        }
        return comps;
    };

    GradedFiberData fm = graded_fiber_data(M);
    GradedFiberData fn = graded_fiber_data(N);
    int grM_total = fm.Phi.cols();
    int f0N = N.base.piece(0).ngens();

    // delta evaluated on the F_p-basis {a^l h^s} of C0
    CtxPtr fp = arith::PrimeContext::create(p, 1, 1);
    auto flatten = [&](const Mat& m) {
        Mat col(fp, m.rows() * m.cols() * f, 1);
        int idx = 0;
        for (int c = 0; c < m.cols(); ++c)
            for (int r = 0; r < m.rows(); ++r)
                for (int l = 0; l < f; ++l)
                    col.at(idx++, 0) = fp->from_int(m.at(r, c).coeffs()[static_cast<size_t>(l)]);
        return col;
    };
    std::vector<Mat> delta_cols;
    std::vector<std::vector<Mat>> basis_maps;
    Zq gen = f > 1 ? kx->generator() : kx->one();
    for (int s = 0; s < hom_k.cols(); ++s) {
        std::vector<Mat> comps = unpack(hom_k, s);
        for (int l = 0; l < f; ++l) {
            Zq scale = kx->one();
            for (int t = 0; t < l; ++t) scale = scale * gen;
            std::vector<Mat> scaled;
            for (auto& c : comps) scaled.push_back(c.mul_scalar(scale));
            Mat G(kx, fn.Phi.cols(), grM_total);
            for (int i = 0; i <= W; ++i) {
                Mat blk = fn.gr_proj[static_cast<size_t>(i)] * scaled[static_cast<size_t>(i)] *
                          fm.gr_sect[static_cast<size_t>(i)];
                for (int c = 0; c < blk.cols(); ++c)
                    for (int r = 0; r < blk.rows(); ++r)
                        G.at(fn.offsets[static_cast<size_t>(i)] + r,
                             fm.offsets[static_cast<size_t>(i)] + c) = blk.at(r, c);
            }
            Mat d = scaled[0] * fm.Phi - fn.Phi * G.frobenius();
            delta_cols.push_back(flatten(d));
            basis_maps.push_back(std::move(scaled));
        }
    }
    Mat delta(fp, f0N * grM_total * f, static_cast<int>(delta_cols.size()));
    for (int c = 0; c < delta.cols(); ++c)
        for (int r = 0; r < delta.rows(); ++r)
            delta.at(r, c) = delta_cols[static_cast<size_t>(c)].at(r, 0);

    HomExt out;
    FPModule c0{fp, std::vector<int>(static_cast<size_t>(delta.cols()), 1)};
    FPModule c1{fp, std::vector<int>(static_cast<size_t>(delta.rows()), 1)};
    ModuleMap dmap(c0, c1, delta, false);
    auto ker = gmod::kernel(dmap);
    auto cok = gmod::cokernel(dmap);
    out.hom_dim = ker.ker.length();
    out.ext_dim = cok.coker.length();
    for (int c = 0; c < ker.incl.A.cols(); ++c) {
        std::vector<Mat> comb;
        for (int i = 0; i <= W; ++i)
            comb.push_back(Mat(kx, N.base.piece(i).ngens(), M.base.piece(i).ngens()));
        for (int s = 0; s < ker.incl.A.rows(); ++s) {
            Int coeff = ker.incl.A.at(s, c).coeffs()[0];
            if (coeff == 0) continue;
            for (int i = 0; i <= W; ++i)
                comb[static_cast<size_t>(i)] =
                    comb[static_cast<size_t>(i)] +
                    basis_maps[static_cast<size_t>(s)][static_cast<size_t>(i)].mul_int(coeff);
        }
        out.hom_basis.push_back(std::move(comb));
    }
    return out;
}

FLModule tate_module(const CtxPtr& ctx, int j, const Zq& u) {
    if (j < 0 || j > ctx->p() - 2)
        throw DomainError("tate_module: weight must lie in [0, p-2]");
    if (!u.is_unit()) throw DomainError("tate_module: u must be a unit");
    FLModule M;
    M.base.ctx = ctx;
    M.base.wmax = j;
    FPModule W = FPModule::free_module(ctx, 1);
    for (int i = 0; i <= j; ++i) M.base.pieces.push_back(W);
    for (int i = 1; i <= j; ++i) M.base.vminus.push_back(ModuleMap::identity(W));
    for (int i = 0; i <= j; ++i) {
        Mat m(ctx, 1, 1);
        m.at(0, 0) = u.mul_int(pow_int(Int(ctx->p()), j - i));
        M.phi.push_back(std::move(m));
    }
    return M;
}

FLModule unit_module(const CtxPtr& ctx) { return tate_module(ctx, 0, ctx->one()); }

FLModule twist(const FLModule& M, int i) {
    if (i < 0) throw DomainError("twist: negative twists leave the effective range");
    if (i == 0) return M;
    FLModule r;
    r.base.ctx = M.ctx();
    r.base.wmax = M.wmax() + i;
    const FPModule& F0 = M.base.piece(0);
    for (int l = 0; l <= r.base.wmax; ++l)
        r.base.pieces.push_back(l >= i ? M.base.piece(l - i) : F0);
    for (int l = 1; l <= r.base.wmax; ++l) {
        if (l > i)
            r.base.vminus.push_back(M.base.vminus[static_cast<size_t>(l - i - 1)]);
        else
            r.base.vminus.push_back(ModuleMap::identity(F0));
    }
    for (int l = 0; l <= r.base.wmax; ++l) {
        if (l >= i)
            r.phi.push_back(M.phi[static_cast<size_t>(l - i)]);
        else
            r.phi.push_back(M.phi[0].mul_int(pow_int(Int(M.ctx()->p()), i - l)));
    }
    return r;
}

FLModule torsionfree_lift(const FLModule& M, int N) {
    if (!M.mod_p()) throw DomainError("torsionfree_lift: input must be killed by p");
    if (N < 2) throw DomainError("torsionfree_lift: target precision must be >= 2");
    CtxPtr big = M.ctx()->with_precision(N);
    FLModule r;
    r.base.ctx = big;
    r.base.wmax = M.wmax();
    for (const auto& piece : M.base.pieces)
        r.base.pieces.push_back(FPModule::free_module(big, piece.ngens()));
    for (int i = 1; i <= M.wmax(); ++i)
        r.base.vminus.emplace_back(
            r.base.piece(i), r.base.piece(i - 1),
            lift_entries(M.base.vminus[static_cast<size_t>(i - 1)].A, big), false);
    // phi: lift the top entrywise, then propagate downward so that
    // phi'_(i-1) v- = p phi'_i holds exactly, not just mod p. With L a left
    // inverse of the lifted v- (split injective), set
    //   phi'_(i-1) := p phi'_i L + C (Id - v- L),   C = entrywise lift,
    // whose reduction is C (Id - v- L) = phi'_(i-1) mod p since phi' kills im v-.
    r.phi.assign(static_cast<size_t>(M.wmax()) + 1, Mat(big, 0, 0));
    r.phi[static_cast<size_t>(M.wmax())] =
        lift_entries(M.phi[static_cast<size_t>(M.wmax())], big);
    for (int i = M.wmax(); i >= 1; --i) {
        const Mat& V = r.base.vminus[static_cast<size_t>(i - 1)].A;
        gmod::SnfResult s = gmod::smith_normal_form(V);
        for (int v : s.divisor_vals)
            if (v != 0)
                throw VerificationError("torsionfree_lift: v- is not split injective");
        // L = V_snf [I 0] U with L V = Id
        Mat sel(big, V.cols(), V.rows());
        for (int j = 0; j < V.cols(); ++j) sel.at(j, j) = big->one();
        Mat L = s.V * sel * s.U;
        Mat C = lift_entries(M.phi[static_cast<size_t>(i - 1)], big);
        Mat proj = Mat::identity(big, V.rows()) - V * L;
        r.phi[static_cast<size_t>(i - 1)] =
            r.phi[static_cast<size_t>(i)].mul_int(Int(big->p())) * L.frobenius() +
            C * proj.frobenius();
    }
    Verdict v = fl_validate(r);
    if (!v.valid)
        throw VerificationError("torsionfree_lift: lift fails validation: " + v.detail);
    FLModule back = r.reduce_mod_p();
    FLModule orig = M.reduce_mod_p();
    for (int i = 0; i <= M.wmax(); ++i)
        if (!(back.phi[static_cast<size_t>(i)] == orig.phi[static_cast<size_t>(i)]))
            throw VerificationError("torsionfree_lift: reduction does not round-trip");
    return r;
}

FLModule random_flmodule(const CtxPtr& ctx, std::mt19937& rng, int max_weight, int max_dim) {
    const long p = ctx->p();
    const int f = ctx->f();
    if (max_weight >= p) throw DomainError("random_flmodule: weights must stay below p");
    int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_dim));
    std::vector<int> weights;
    for (int m = 0; m < d; ++m)
        weights.push_back(static_cast<int>(rng() % static_cast<unsigned>(max_weight + 1)));
    std::sort(weights.rbegin(), weights.rend());
    int wmax = weights[0];
    auto rand_elt = [&] {
        std::vector<Int> c;
        for (int i = 0; i < f; ++i) c.emplace_back(rng() % static_cast<unsigned>(p));
        return Zq(ctx, c);
    };
    auto rand_invertible = [&](int n) {
        while (true) {
            Mat U(ctx, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) U.at(i, j) = rand_elt();
            auto s = gmod::smith_normal_form(U);
            bool unit = true;
            for (int v : s.divisor_vals) unit = unit && v == 0;
            if (unit) return U;
        }
    };
    FLModule M;
    M.base.ctx = ctx;
    M.base.wmax = wmax;
    // split skeleton: F^i spanned by the lines of weight >= i
    std::vector<std::vector<int>> lines_at(static_cast<size_t>(wmax) + 1);
    for (int i = 0; i <= wmax; ++i)
        for (int m = 0; m < d; ++m)
            if (weights[static_cast<size_t>(m)] >= i)
                lines_at[static_cast<size_t>(i)].push_back(m);
    for (int i = 0; i <= wmax; ++i) {
        FPModule piece{ctx, {}};
        piece.exps.assign(lines_at[static_cast<size_t>(i)].size(), 1);
        M.base.pieces.push_back(std::move(piece));
    }
    for (int i = 1; i <= wmax; ++i) {
        Mat V(ctx, M.base.piece(i - 1).ngens(), M.base.piece(i).ngens());
        for (int c = 0; c < V.cols(); ++c) {
            int line = lines_at[static_cast<size_t>(i)][static_cast<size_t>(c)];
            for (int r = 0; r < V.rows(); ++r)
                if (lines_at[static_cast<size_t>(i - 1)][static_cast<size_t>(r)] == line)
                    V.at(r, c) = ctx->one();
        }
        M.base.vminus.emplace_back(M.base.piece(i), M.base.piece(i - 1), std::move(V), false);
    }
    Mat Phi = rand_invertible(d);
    for (int i = 0; i <= wmax; ++i) {
        Mat A(ctx, d, M.base.piece(i).ngens());
        for (int c = 0; c < A.cols(); ++c) {
            int line = lines_at[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (weights[static_cast<size_t>(line)] != i) continue;  // dies in gr^i
            for (int r = 0; r < d; ++r) A.at(r, c) = Phi.at(r, line);
        }
        M.phi.push_back(std::move(A));
    }
    // conjugate by a random graded automorphism
    std::vector<Mat> U, Uinv;
    for (int i = 0; i <= wmax; ++i) {
        Mat u = rand_invertible(M.base.piece(i).ngens());
        auto inv = gmod::solve(u, Mat::identity(ctx, u.rows()));
        U.push_back(u);
        Uinv.push_back(*inv);
    }
    for (int i = 1; i <= wmax; ++i) {
        Mat A = U[static_cast<size_t>(i - 1)] * M.base.vminus[static_cast<size_t>(i - 1)].A *
                Uinv[static_cast<size_t>(i)];
        M.base.vminus[static_cast<size_t>(i - 1)] =
            ModuleMap(M.base.piece(i), M.base.piece(i - 1), std::move(A), false);
    }
    for (int i = 0; i <= wmax; ++i)
        M.phi[static_cast<size_t>(i)] =
            U[0] * M.phi[static_cast<size_t>(i)] * Uinv[static_cast<size_t>(i)].frobenius();
    return M;
}

FLMorphism random_morphism(const FLModule& M, const FLModule& N, std::mt19937& rng) {
    HomExt he = fl_hom_ext1(M, N);
    int W = std::max(M.wmax(), N.wmax());
    FLModule Mp = pad_window(M, W), Np = pad_window(N, W);
    FLMorphism out;
    out.src = Mp;
    out.dst = Np;
    CtxPtr ctx = M.ctx();
    for (int i = 0; i <= W; ++i)
        out.f.push_back(Mat(ctx, Np.base.piece(i).ngens(), Mp.base.piece(i).ngens()));
    for (const auto& basis : he.hom_basis) {
        Int c(rng() % static_cast<unsigned>(ctx->p()));
        if (c == 0) continue;
        for (int i = 0; i <= W; ++i)
            out.f[static_cast<size_t>(i)] =
                out.f[static_cast<size_t>(i)] +
                lift_entries(basis[static_cast<size_t>(i)], ctx).mul_int(c);
    }
    return out;
}

}  // namespace flmod::fl
