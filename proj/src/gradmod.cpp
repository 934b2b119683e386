#include "flmod/gradmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flmod::gmod {

using arith::PrimeContext;

Mat::Mat(CtxPtr ctx, int rows, int cols) : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DomainError("Mat: negative dimension");
    a_.assign(static_cast<size_t>(rows) * cols, ctx_->zero());
}

Mat Mat::identity(const CtxPtr& ctx, int n) {
    Mat m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ctx->one();
    return m;
}

Mat Mat::scalar(const CtxPtr& ctx, int n, const Zq& c) {
    Mat m(ctx, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw DomainError("Mat: dimension mismatch in product");
    Mat r(ctx_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Zq& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) += x * o.at(k, j);
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("Mat: dimension mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("Mat: dimension mismatch");
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
    return r;
}

Mat Mat::mul_scalar(const Zq& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x = x * c;
    return r;
}

Mat Mat::mul_int(const Int& n) const {
    Mat r = *this;
    for (auto& x : r.a_) x = x.mul_int(n);
    return r;
}

Mat Mat::frobenius(long k) const {
    Mat r = *this;
    for (auto& x : r.a_) x = x.frobenius_pow(k);
    return r;
}

Mat Mat::augment(const Mat& right) const {
    if (rows_ != right.rows_) throw DomainError("Mat: augment row mismatch");
    Mat r(ctx_, rows_, cols_ + right.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < right.cols_; ++j) r.at(i, cols_ + j) = right.at(i, j);
    }
    return r;
}

Mat Mat::stack(const Mat& below) const {
    if (cols_ != below.cols_) throw DomainError("Mat: stack column mismatch");
    Mat r(ctx_, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(rows_ + i, j) = below.at(i, j);
    return r;
}

Mat Mat::columns(const std::vector<int>& idx) const {
    Mat r(ctx_, rows_, static_cast<int>(idx.size()));
    for (int j = 0; j < static_cast<int>(idx.size()); ++j)
        for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
    return r;
}

Mat Mat::rows_of(const std::vector<int>& idx) const {
    Mat r(ctx_, static_cast<int>(idx.size()), cols_);
    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
    return r;
}

Mat Mat::block_diag(const Mat& o) const {
    Mat r(ctx_, rows_ + o.rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Zq& x) { return x.is_zero(); });
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

SnfResult smith_normal_form(const Mat& M) {
    const CtxPtr& ctx = M.ctx();
    const int N = ctx->N();
    SnfResult r{Mat::identity(ctx, M.rows()), Mat::identity(ctx, M.rows()), M,
                Mat::identity(ctx, M.cols()), Mat::identity(ctx, M.cols()), {}};
    Mat& D = r.D;
    int k = 0;
    const int bound = std::min(M.rows(), M.cols());
    while (k < bound) {
        // pivot: minimal valuation in the trailing submatrix
        int bi = -1, bj = -1, bv = N + 1;
        for (int i = k; i < D.rows(); ++i)
            for (int j = k; j < D.cols(); ++j) {
                int v = D.at(i, j).valuation();
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0 || bv >= N) break;  // trailing submatrix is zero
        if (bi != k) {  // swap rows k, bi
            for (int j = 0; j < D.cols(); ++j) std::swap(D.at(k, j), D.at(bi, j));
            for (int j = 0; j < r.U.cols(); ++j) std::swap(r.U.at(k, j), r.U.at(bi, j));
            for (int i = 0; i < r.Uinv.rows(); ++i) std::swap(r.Uinv.at(i, k), r.Uinv.at(i, bi));
        }
        if (bj != k) {  // swap cols k, bj
            for (int i = 0; i < D.rows(); ++i) std::swap(D.at(i, k), D.at(i, bj));
            for (int i = 0; i < r.V.rows(); ++i) std::swap(r.V.at(i, k), r.V.at(i, bj));
            for (int j = 0; j < r.Vinv.cols(); ++j) std::swap(r.Vinv.at(k, j), r.Vinv.at(bj, j));
        }
        // normalize the pivot to p^bv: scale row k by the inverse of its unit part
        Zq unit = D.at(k, k).divide_p(bv);
        Zq uinv = unit.inverse();
        for (int j = 0; j < D.cols(); ++j) D.at(k, j) = D.at(k, j) * uinv;
        for (int j = 0; j < r.U.cols(); ++j) r.U.at(k, j) = r.U.at(k, j) * uinv;
        for (int i = 0; i < r.Uinv.rows(); ++i) r.Uinv.at(i, k) = r.Uinv.at(i, k) * unit;
        // clear column k
        for (int i = 0; i < D.rows(); ++i) {
            if (i == k || D.at(i, k).is_zero()) continue;
            Zq q = D.at(i, k).divide_p(bv);  // entry = q * p^bv, exact
            for (int j = 0; j < D.cols(); ++j) D.at(i, j) = D.at(i, j) - q * D.at(k, j);
            for (int j = 0; j < r.U.cols(); ++j) r.U.at(i, j) = r.U.at(i, j) - q * r.U.at(k, j);
            for (int jj = 0; jj < r.Uinv.rows(); ++jj)
                r.Uinv.at(jj, k) = r.Uinv.at(jj, k) + q * r.Uinv.at(jj, i);
        }
        // clear row k
        for (int j = 0; j < D.cols(); ++j) {
            if (j == k || D.at(k, j).is_zero()) continue;
            Zq q = D.at(k, j).divide_p(bv);
            for (int i = 0; i < D.rows(); ++i) D.at(i, j) = D.at(i, j) - D.at(i, k) * q;
            for (int i = 0; i < r.V.rows(); ++i) r.V.at(i, j) = r.V.at(i, j) - r.V.at(i, k) * q;
            for (int jj = 0; jj < r.Vinv.cols(); ++jj)
                r.Vinv.at(k, jj) = r.Vinv.at(k, jj) + q * r.Vinv.at(j, jj);
        }
        ++k;
    }
    for (int i = 0; i < bound; ++i) r.divisor_vals.push_back(D.at(i, i).valuation());
    return r;
}

Mat kernel_gens(const Mat& A) {
    const CtxPtr& ctx = A.ctx();
    const int N = ctx->N();
    if (A.cols() == 0) return Mat(ctx, 0, 0);
    if (A.rows() == 0) return Mat::identity(ctx, A.cols());
    SnfResult s = smith_normal_form(A);
    std::vector<Mat> cols;
    int rank = static_cast<int>(s.divisor_vals.size());
    for (int j = 0; j < A.cols(); ++j) {
        int v = j < rank ? s.divisor_vals[j] : N;
        if (v == 0) continue;  // unit divisor: no kernel contribution
        Mat w(ctx, A.cols(), 1);
        w.at(j, 0) = v >= N ? ctx->one() : ctx->one().mul_int(pow_int(Int(ctx->p()), N - v));
        cols.push_back(s.V * w);
    }
    Mat out(ctx, A.cols(), static_cast<int>(cols.size()));
    for (int j = 0; j < out.cols(); ++j)
        for (int i = 0; i < out.rows(); ++i) out.at(i, j) = cols[j].at(i, 0);
    return out;
}

std::optional<Mat> solve(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows()) throw DomainError("solve: dimension mismatch");
    const CtxPtr& ctx = A.ctx();
    const int N = ctx->N();
    SnfResult s = smith_normal_form(A);
    Mat C = s.U * B;
    Mat Y(ctx, A.cols(), B.cols());
    int rank = static_cast<int>(s.divisor_vals.size());
    for (int i = 0; i < A.rows(); ++i) {
        int v = i < rank ? s.divisor_vals[i] : N;
        for (int j = 0; j < B.cols(); ++j) {
            const Zq& c = C.at(i, j);
            if (v >= N) {
                if (!c.is_zero()) return std::nullopt;
                continue;
            }
            if (c.valuation() < v) return std::nullopt;
            if (i < A.cols()) Y.at(i, j) = c.divide_p(v);
        }
    }
    return s.V * Y;
}

FPModule FPModule::free_module(CtxPtr c, int rank) {
    FPModule m{std::move(c), {}};
    m.exps.assign(static_cast<size_t>(rank), m.ctx->N());
    return m;
}

bool FPModule::n_determined() const {
    return std::all_of(exps.begin(), exps.end(), [&](int e) { return e < ctx->N(); });
}

bool FPModule::all_free() const {
    return std::all_of(exps.begin(), exps.end(), [&](int e) { return e == ctx->N(); });
}

bool FPModule::mod_p() const {
    return std::all_of(exps.begin(), exps.end(), [](int e) { return e <= 1; });
}

long FPModule::length() const {
    long s = 0;
    for (int e : exps) s += e;
    return s * ctx->f();
}

std::vector<int> FPModule::sorted_exps() const {
    std::vector<int> s = exps;
    std::sort(s.rbegin(), s.rend());
    return s;
}

bool FPModule::same_class(const FPModule& o) const {
    return ctx->same_field(*o.ctx) && ctx->N() == o.ctx->N() && sorted_exps() == o.sorted_exps();
}

FPModule FPModule::direct_sum(const FPModule& o) const {
    FPModule m{ctx, exps};
    m.exps.insert(m.exps.end(), o.exps.begin(), o.exps.end());
    return m;
}

Mat FPModule::moduli() const {
    Mat m(ctx, ngens(), ngens());
    for (int i = 0; i < ngens(); ++i)
        m.at(i, i) = ctx->one().mul_int(pow_int(Int(ctx->p()), exps[i]));
    return m;
}

std::string FPModule::describe() const {
    if (exps.empty()) return "0";
    std::ostringstream os;
    auto s = sorted_exps();
    bool first = true;
    for (int e : s) {
        os << (first ? "" : " + ");
        if (e == ctx->N())
            os << "R";
        else
            os << "R/p^" << e;
        first = false;
    }
    return os.str();
}

Presentation from_presentation(const CtxPtr& ctx, int gens, const Mat& relations) {
    if (relations.rows() != gens) throw DomainError("from_presentation: row count != generators");
    if (gens == 0) return {FPModule::zero(ctx), Mat(ctx, 0, 0), Mat(ctx, 0, 0)};
    SnfResult s = smith_normal_form(relations);
    const int N = ctx->N();
    std::vector<std::pair<int, int>> keep;  // (exponent, row index), exponent in [1, N]
    int rank = static_cast<int>(s.divisor_vals.size());
    for (int i = 0; i < gens; ++i) {
        int v = i < rank ? s.divisor_vals[i] : N;
        if (v == 0) continue;  // unit divisor: the generator dies
        keep.emplace_back(v, i);
    }
    std::sort(keep.begin(), keep.end(), [](auto& a, auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    FPModule mod{ctx, {}};
    std::vector<int> rows;
    for (auto& [e, i] : keep) {
        mod.exps.push_back(e);
        rows.push_back(i);
    }
    Mat proj = s.U.rows_of(rows);
    // section: matching columns of Uinv
    Mat sect(ctx, gens, static_cast<int>(rows.size()));
    for (int j = 0; j < static_cast<int>(rows.size()); ++j)
        for (int i = 0; i < gens; ++i) sect.at(i, j) = s.Uinv.at(i, rows[j]);
    return {std::move(mod), std::move(proj), std::move(sect)};
}

namespace {

void check_map_welldef(const FPModule& src, const FPModule& dst, const Mat& A) {
    if (A.rows() != dst.ngens() || A.cols() != src.ngens())
        throw DomainError("ModuleMap: matrix shape mismatch");
    const Int p(src.ctx->p());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            int need = dst.exps[i] - src.exps[j];
            if (need <= 0) continue;
            if (A.at(i, j).is_zero()) continue;
            if (A.at(i, j).valuation() < need)
                throw DomainError("ModuleMap: entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") violates well-definedness");
        }
}

}  // namespace

ModuleMap::ModuleMap(FPModule s, FPModule d, Mat m, bool check)
    : src(std::move(s)), dst(std::move(d)), A(std::move(m)) {
    if (check) check_map_welldef(src, dst, A);
}

ModuleMap ModuleMap::identity(const FPModule& m) {
    return {m, m, Mat::identity(m.ctx, m.ngens()), false};
}

ModuleMap ModuleMap::zero_map(const FPModule& s, const FPModule& d) {
    return {s, d, Mat(s.ctx, d.ngens(), s.ngens()), false};
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
    if (!src.same_class(inner.dst) || src.exps != inner.dst.exps)
        throw DomainError("ModuleMap: composition mismatch");
    return {inner.src, dst, A * inner.A, false};
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const { return {src, dst, A + o.A, false}; }
ModuleMap ModuleMap::operator-(const ModuleMap& o) const { return {src, dst, A - o.A, false}; }
ModuleMap ModuleMap::mul_int(const Int& n) const { return {src, dst, A.mul_int(n), false}; }

ModuleMap ModuleMap::direct_sum(const ModuleMap& o) const {
    return {src.direct_sum(o.src), dst.direct_sum(o.dst), A.block_diag(o.A), false};
}

bool ModuleMap::is_zero() const {
    // zero as a map: every column lands in the target's zero coset
    for (int j = 0; j < A.cols(); ++j)
        for (int i = 0; i < A.rows(); ++i) {
            const Zq& x = A.at(i, j);
            if (x.is_zero()) continue;
            if (x.valuation() < dst.exps[i]) return false;
        }
    return true;
}

bool ModuleMap::operator==(const ModuleMap& o) const {
    if (A.rows() != o.A.rows() || A.cols() != o.A.cols()) return false;
    return (*this - o).is_zero();
}

KernelResult kernel(const ModuleMap& f) {
    const CtxPtr& ctx = f.src.ctx;
    // lifted solutions of A x = 0 modulo the target moduli
    Mat C = f.A.augment(f.dst.moduli());
    Mat sols = kernel_gens(C);
    std::vector<int> top(static_cast<size_t>(f.src.ngens()));
    std::iota(top.begin(), top.end(), 0);
    Mat G = sols.rows_of(top);  // kernel generators as elements of src
    // relations among the columns of G inside src
    Mat R = kernel_gens(G.augment(f.src.moduli()));
    std::vector<int> gtop(static_cast<size_t>(G.cols()));
    std::iota(gtop.begin(), gtop.end(), 0);
    Mat rel = R.rows_of(gtop);
    Presentation pres = from_presentation(ctx, G.cols(), rel);
    Mat incl = G * pres.sect;
    return {pres.module, ModuleMap(pres.module, f.src, std::move(incl))};
}

CokernelResult cokernel(const ModuleMap& f) {
    const CtxPtr& ctx = f.dst.ctx;
    Presentation pres = from_presentation(ctx, f.dst.ngens(), f.A.augment(f.dst.moduli()));
    ModuleMap proj(f.dst, pres.module, pres.proj);
    return {pres.module, std::move(proj), pres.sect};
}

std::pair<FPModule, FPModule> two_term_homology(const ModuleMap& d) {
    return {kernel(d).ker, cokernel(d).coker};
}

IsoVerdict iso_check(const ModuleMap& f) {
    IsoVerdict v;
    FPModule ker = kernel(f).ker;
    FPModule cok = cokernel(f).coker;
    v.iso = ker.is_zero() && cok.is_zero();
    if (!v.iso) {
        v.detail = "kernel " + ker.describe() + ", cokernel " + cok.describe();
        v.certified = true;  // a nonzero obstruction at precision N is definitive
        return v;
    }
    // Exact certificate: torsion exponents all < N (N-determined), or all
    // generators free (invertibility mod p suffices by completeness), or N = 1
    // (field case). Mixed free/p^N-torsion cannot be told apart at precision N.
    const int N = f.src.ctx->N();
    auto pattern_ok = [&](const FPModule& m) { return m.n_determined() || m.all_free(); };
    v.certified = N == 1 || (pattern_ok(f.src) && pattern_ok(f.dst));
    if (!v.certified) v.detail = "not-N-determined: mixed free/p^N-torsion at this precision";
    return v;
}

RestrictedMap restrict_scalars(const AddMap& m) {
    const CtxPtr& ctx = m.src.ctx;
    const int f = ctx->f();
    CtxPtr ctx1 = f == 1 ? ctx : PrimeContext::create(ctx->p(), ctx->N(), 1);
    auto restrict_module = [&](const FPModule& mod) {
        FPModule r{ctx1, {}};
        for (int e : mod.exps) r.exps.insert(r.exps.end(), static_cast<size_t>(f), e);
        return r;
    };
    FPModule src1 = restrict_module(m.src);
    FPModule dst1 = restrict_module(m.dst);
    Mat A1(ctx1, dst1.ngens(), src1.ngens());
    // powers of the generator and the sigma^t images of the basis
    std::vector<Zq> basis;
    for (int j = 0; j < f; ++j) {
        std::vector<Int> c(static_cast<size_t>(f), 0);
        c[static_cast<size_t>(j)] = 1;
        basis.emplace_back(ctx, c);
    }
    for (const auto& term : m.terms) {
        if (term.A.rows() != m.dst.ngens() || term.A.cols() != m.src.ngens())
            throw DomainError("restrict_scalars: term shape mismatch");
        for (int i = 0; i < term.A.rows(); ++i)
            for (int j = 0; j < term.A.cols(); ++j) {
                const Zq& a = term.A.at(i, j);
                if (a.is_zero()) continue;
                for (int l = 0; l < f; ++l) {
                    Zq img = a * basis[static_cast<size_t>(l)].frobenius_pow(term.twist);
                    for (int r = 0; r < f; ++r) {
                        A1.at(i * f + r, j * f + l) =
                            A1.at(i * f + r, j * f + l) +
                            ctx1->from_int(img.coeffs()[static_cast<size_t>(r)]);
                    }
                }
            }
    }
    return {std::move(src1), std::move(dst1), std::move(A1)};
}

std::pair<FPModule, FPModule> additive_two_term_homology(const AddMap& d) {
    RestrictedMap r = restrict_scalars(d);
    ModuleMap f(r.src, r.dst, r.A);
    return two_term_homology(f);
}

void GradedModule::validate() const {
    if (wmax < 0) throw DomainError("GradedModule: negative window");
    if (pieces.size() != static_cast<size_t>(wmax) + 1)
        throw DomainError("GradedModule: piece count != wmax + 1");
    if (vminus.size() != static_cast<size_t>(wmax))
        throw DomainError("GradedModule: vminus count != wmax");
    for (int i = 1; i <= wmax; ++i) {
        const ModuleMap& f = vminus[static_cast<size_t>(i - 1)];
        if (f.src.exps != pieces[static_cast<size_t>(i)].exps ||
            f.dst.exps != pieces[static_cast<size_t>(i - 1)].exps)
            throw DomainError("GradedModule: vminus[" + std::to_string(i) + "] shape mismatch");
    }
    if (vplus) {
        if (vplus->size() != static_cast<size_t>(wmax))
            throw DomainError("GradedModule: vplus count != wmax");
        const Int p(ctx->p());
        for (int i = 0; i < wmax; ++i) {
            const ModuleMap& up = (*vplus)[static_cast<size_t>(i)];
            if (up.src.exps != pieces[static_cast<size_t>(i)].exps ||
                up.dst.exps != pieces[static_cast<size_t>(i + 1)].exps)
                throw DomainError("GradedModule: vplus[" + std::to_string(i) + "] shape mismatch");
            // v- v+ = p on F^i and v+ v- = p on F^(i+1)
            ModuleMap down = vminus[static_cast<size_t>(i)];
            if (!(down.compose(up) == ModuleMap::identity(pieces[static_cast<size_t>(i)]).mul_int(p)))
                throw DomainError("GradedModule: v- v+ != p at degree " + std::to_string(i));
            if (!(up.compose(down) ==
                  ModuleMap::identity(pieces[static_cast<size_t>(i + 1)]).mul_int(p)))
                throw DomainError("GradedModule: v+ v- != p at degree " + std::to_string(i + 1));
        }
    }
}

FPModule GradedModule::piece_eff(int i) const {
    if (i < 0) return pieces[0];
    if (i > wmax) return FPModule::zero(ctx);
    return pieces[static_cast<size_t>(i)];
}

ModuleMap GradedModule::vminus_eff(int i) const {
    if (i <= 0) return ModuleMap::identity(pieces[0]);
    if (i > wmax) return ModuleMap::zero_map(FPModule::zero(ctx), piece_eff(i - 1));
    return vminus[static_cast<size_t>(i - 1)];
}

FPModule GradedModule::piece_wt(int i) const {
    return pieces[static_cast<size_t>(std::clamp(i, 0, wmax))];
}

ModuleMap GradedModule::vminus_wt(int i) const {
    if (i >= 1 && i <= wmax) return vminus[static_cast<size_t>(i - 1)];
    if (i <= 0) return ModuleMap::identity(pieces[0]);
    return ModuleMap::identity(pieces[static_cast<size_t>(wmax)]).mul_int(Int(ctx->p()));
}

ModuleMap GradedModule::vplus_wt(int i) const {
    if (!vplus) throw DomainError("GradedModule: vplus data absent");
    if (i >= 0 && i < wmax) return (*vplus)[static_cast<size_t>(i)];
    if (i >= wmax) return ModuleMap::identity(pieces[static_cast<size_t>(wmax)]);
    return ModuleMap::identity(pieces[0]).mul_int(Int(ctx->p()));
}

GradedModule GradedModule::direct_sum(const GradedModule& o) const {
    if (wmax != o.wmax) throw DomainError("GradedModule: direct sum needs equal windows");
    GradedModule r{ctx, wmax, {}, {}, std::nullopt};
    for (int i = 0; i <= wmax; ++i)
        r.pieces.push_back(pieces[static_cast<size_t>(i)].direct_sum(o.pieces[static_cast<size_t>(i)]));
    for (int i = 0; i < wmax; ++i)
        r.vminus.push_back(vminus[static_cast<size_t>(i)].direct_sum(o.vminus[static_cast<size_t>(i)]));
    if (vplus && o.vplus) {
        std::vector<ModuleMap> vp;
        for (int i = 0; i < wmax; ++i)
            vp.push_back((*vplus)[static_cast<size_t>(i)].direct_sum((*o.vplus)[static_cast<size_t>(i)]));
        r.vplus = std::move(vp);
    }
    return r;
}

FiberResult graded_fiber(const GradedModule& M, const Int& a) {
    const CtxPtr& ctx = M.ctx;
    FPModule src = FPModule::zero(ctx);
    FPModule dst = FPModule::zero(ctx);
    std::vector<int> src_off, dst_off;
    for (int i = 1; i <= M.wmax; ++i) {
        src_off.push_back(src.ngens());
        src = src.direct_sum(M.piece(i));
    }
    for (int i = 0; i <= M.wmax; ++i) {
        dst_off.push_back(dst.ngens());
        dst = dst.direct_sum(M.piece(i));
    }
    Mat A(ctx, dst.ngens(), src.ngens());
    Zq am = ctx->from_int(a);
    for (int i = 1; i <= M.wmax; ++i) {
        const Mat& vm = M.vminus[static_cast<size_t>(i - 1)].A;
        int co = src_off[static_cast<size_t>(i - 1)];
        int ro_down = dst_off[static_cast<size_t>(i - 1)];
        int ro_same = dst_off[static_cast<size_t>(i)];
        for (int c = 0; c < vm.cols(); ++c) {
            for (int r = 0; r < vm.rows(); ++r) A.at(ro_down + r, co + c) = vm.at(r, c);
            A.at(ro_same + c, co + c) = A.at(ro_same + c, co + c) - am;
        }
    }
    ModuleMap d(src, dst, A);
    KernelResult k = kernel(d);
    CokernelResult c = cokernel(d);
    return {c.coker, k.ker, c.proj, c.sect, dst_off};
}

WeightWindow weight_window_check(const GradedModule& M) {
    WeightWindow w;
    int b = -1;
    for (int i = 0; i <= M.wmax; ++i)
        if (!M.piece(i).is_zero()) b = i;
    if (b < 0) {
        w.zero = true;
        return w;
    }
    int a = 0;
    for (int i = 1; i <= M.wmax; ++i) {
        if (!iso_check(M.vminus[static_cast<size_t>(i - 1)]).iso) break;
        a = i;
    }
    if (M.vplus) {
        // smallest b with v+ bijective from degree b up (identity above wmax)
        int bb = M.wmax;
        for (int i = M.wmax - 1; i >= 0; --i) {
            if (!iso_check((*M.vplus)[static_cast<size_t>(i)]).iso) break;
            bb = i;
        }
        w.a = std::min(a, bb);
        w.b = bb;
        return w;
    }
    w.a = std::min(a, b);
    w.b = b;
    return w;
}

GradedModule weight_truncate(const GradedModule& M, int b) {
    if (!M.vplus) throw DomainError("weight_truncate: A-graded (vplus) data required");
    GradedModule r{M.ctx, M.wmax, {}, {}, std::vector<ModuleMap>{}};
    for (int i = 0; i <= M.wmax; ++i) r.pieces.push_back(M.piece_wt(std::min(i, b)));
    const Int p(M.ctx->p());
    for (int i = 1; i <= M.wmax; ++i) {
        if (i <= b)
            r.vminus.push_back(M.vminus_wt(i));
        else
            r.vminus.push_back(ModuleMap::identity(r.pieces[static_cast<size_t>(i)]).mul_int(p));
    }
    for (int i = 0; i < M.wmax; ++i) {
        if (i < b)
            r.vplus->push_back(M.vplus_wt(i));
        else
            r.vplus->push_back(ModuleMap::identity(r.pieces[static_cast<size_t>(i)]));
    }
    return r;
}

BaseChangeResult base_change_A_to_B(const GradedModule& M, int lo, int hi) {
    if (!M.vplus) throw DomainError("base_change_A_to_B: A-graded (vplus) data required");
    const CtxPtr& ctx = M.ctx;
    const long p = ctx->p();
    BaseChangeResult out;
    out.lo = lo;
    out.hi = hi;
    const int margin = 2;
    for (int deg = lo; deg <= hi; ++deg) {
        // generators m (x) g_j, j running from the v+-stable tail to the
        // v--stable tail with a fold margin, always covering g_0
        int jmin = std::min(deg - M.wmax, 0) - margin;
        int jmax = std::max(deg, 0) + margin;
        std::vector<int> off;
        FPModule big = FPModule::zero(ctx);
        for (int j = jmin; j <= jmax; ++j) {
            off.push_back(big.ngens());
            big = big.direct_sum(M.piece_wt(deg - j));
        }
        std::vector<Mat> rel_cols;
        auto add_relation = [&](const Mat& col) { rel_cols.push_back(col); };
        for (int j = jmin; j <= jmax; ++j) {
            // (v+ m) (x) g_j = p^(e(j)+1-e(j+1)) m (x) g_(j+1), m in M^(deg-j-1)
            if (j + 1 <= jmax) {
                ModuleMap up = M.vplus_wt(deg - j - 1);
                long e = arith::pd_exponent(p, j) + 1 - arith::pd_exponent(p, j + 1);
                if (e < 0) throw VerificationError("base_change: negative v+ exponent");
                Int pe = pow_int(Int(p), e);
                for (int c = 0; c < up.src.ngens(); ++c) {
                    Mat col(ctx, big.ngens(), 1);
                    for (int r = 0; r < up.dst.ngens(); ++r)
                        col.at(off[static_cast<size_t>(j - jmin)] + r, 0) = up.A.at(r, c);
                    col.at(off[static_cast<size_t>(j + 1 - jmin)] + c, 0) =
                        col.at(off[static_cast<size_t>(j + 1 - jmin)] + c, 0) -
                        ctx->one().mul_int(pe);
                    add_relation(col);
                }
            }
            // (v- m) (x) g_j = p^(e(j)-e(j-1)) m (x) g_(j-1), m in M^(deg-j+1)
            if (j - 1 >= jmin) {
                ModuleMap down = M.vminus_wt(deg - j + 1);
                long e = arith::pd_exponent(p, j) - arith::pd_exponent(p, j - 1);
                if (e < 0) throw VerificationError("base_change: negative v- exponent");
                Int pe = pow_int(Int(p), e);
                for (int c = 0; c < down.src.ngens(); ++c) {
                    Mat col(ctx, big.ngens(), 1);
                    for (int r = 0; r < down.dst.ngens(); ++r)
                        col.at(off[static_cast<size_t>(j - jmin)] + r, 0) = down.A.at(r, c);
                    col.at(off[static_cast<size_t>(j - 1 - jmin)] + c, 0) =
                        col.at(off[static_cast<size_t>(j - 1 - jmin)] + c, 0) -
                        ctx->one().mul_int(pe);
                    add_relation(col);
                }
            }
        }
        Mat rel(ctx, big.ngens(), static_cast<int>(rel_cols.size()));
        for (int j = 0; j < rel.cols(); ++j)
            for (int i = 0; i < rel.rows(); ++i) rel.at(i, j) = rel_cols[static_cast<size_t>(j)].at(i, 0);
        rel = rel.augment(big.moduli());
        Presentation pres = from_presentation(ctx, big.ngens(), rel);
        // natural map M^deg -> (M (x) B)^deg, m -> m (x) g_0
        FPModule srcp = M.piece_wt(deg);
        Mat nat(ctx, big.ngens(), srcp.ngens());
        if (0 >= jmin && 0 <= jmax)
            for (int c = 0; c < srcp.ngens(); ++c)
                nat.at(off[static_cast<size_t>(0 - jmin)] + c, c) = ctx->one();
        ModuleMap natural(srcp, pres.module, pres.proj * nat);
        out.pieces.push_back(pres.module);
        out.comparison.push_back(iso_check(natural).iso);
    }
    return out;
}

}  // namespace flmod::gmod
