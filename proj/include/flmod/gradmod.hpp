#pragma once

#include "flmod/arith.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace flmod::gmod {

using arith::CtxPtr;
using arith::Zq;

/* Dense matrix over Zq/p^N; rows or cols may be zero. */
class Mat {
  public:
    Mat() = default;
    Mat(CtxPtr ctx, int rows, int cols);

    static Mat identity(const CtxPtr& ctx, int n);
    static Mat zero(const CtxPtr& ctx, int rows, int cols) { return Mat(ctx, rows, cols); }
    static Mat scalar(const CtxPtr& ctx, int n, const Zq& c);

    const CtxPtr& ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Zq& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Zq& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat mul_scalar(const Zq& c) const;
    Mat mul_int(const Int& n) const;

    /* sigma^k applied entrywise. */
    Mat frobenius(long k = 1) const;

    Mat augment(const Mat& right) const;   // [this | right]
    Mat stack(const Mat& below) const;     // [this; below]
    Mat columns(const std::vector<int>& idx) const;
    Mat rows_of(const std::vector<int>& idx) const;
    Mat block_diag(const Mat& o) const;

    bool operator==(const Mat& o) const;
    bool is_zero() const;

    std::string str() const;

  private:
    CtxPtr ctx_;
    int rows_ = 0, cols_ = 0;
    std::vector<Zq> a_;
};

/* U M V = D with U, V invertible; Uinv, Vinv their exact inverses.
   divisor_vals[k] = valuation of the k-th diagonal entry (ascending; the
   diagonal entries are unit-normalized p-powers, valuation N meaning zero). */
struct SnfResult {
    Mat U, Uinv, D, V, Vinv;
    std::vector<int> divisor_vals;
};

SnfResult smith_normal_form(const Mat& M);

/* Columns generating {x : A x = 0} over Zq/p^N. */
Mat kernel_gens(const Mat& A);

/* Any solution of A X = B over Zq/p^N, or nullopt. */
std::optional<Mat> solve(const Mat& A, const Mat& B);

/*
 * Finitely presented module in canonical elementary-divisor form: generator i
 * is killed by p^exps[i]. An exponent equal to N denotes a generator that is
 * free at this precision; the module is "N-determined" iff no torsion exponent
 * reaches N, and only then are isomorphism certificates exact.
 */
struct FPModule {
    CtxPtr ctx;
    std::vector<int> exps;

    static FPModule zero(CtxPtr c) { return {std::move(c), {}}; }
    static FPModule free_module(CtxPtr c, int rank);
    static FPModule cyclic(CtxPtr c, int e) { return {std::move(c), {e}}; }

    int ngens() const { return static_cast<int>(exps.size()); }
    bool is_zero() const { return exps.empty(); }
    bool n_determined() const;
    bool all_free() const;
    bool mod_p() const;  // killed by p
    long length() const;  // Z_p-length: f * sum of exponents
    std::vector<int> sorted_exps() const;
    bool same_class(const FPModule& o) const;  // isomorphic at this precision
    FPModule direct_sum(const FPModule& o) const;
    Mat moduli() const;  // diag(p^exps)
    std::string describe() const;
};

struct Presentation {
    FPModule module;
    Mat proj;  // canonical gens in terms of the presented ones: x -> proj * x
    Mat sect;  // a section: proj * sect = identity
};

/* Cokernel of `relations` on `gens` generators, canonicalized via SNF. */
Presentation from_presentation(const CtxPtr& ctx, int gens, const Mat& relations);

/* Zq-linear map between canonical modules, x -> A x on coordinates. */
struct ModuleMap {
    FPModule src, dst;
    Mat A;

    ModuleMap() = default;
    ModuleMap(FPModule s, FPModule d, Mat m, bool check = true);

    static ModuleMap identity(const FPModule& m);
    static ModuleMap zero_map(const FPModule& s, const FPModule& d);

    ModuleMap compose(const ModuleMap& inner) const;  // this after inner
    ModuleMap operator+(const ModuleMap& o) const;
    ModuleMap operator-(const ModuleMap& o) const;
    ModuleMap mul_int(const Int& n) const;
    ModuleMap direct_sum(const ModuleMap& o) const;
    bool is_zero() const;
    bool operator==(const ModuleMap& o) const;
};

struct KernelResult {
    FPModule ker;
    ModuleMap incl;  // ker -> src
};
KernelResult kernel(const ModuleMap& f);

struct CokernelResult {
    FPModule coker;
    ModuleMap proj;  // dst -> coker
    Mat sect;        // a section of proj on coordinates
};
CokernelResult cokernel(const ModuleMap& f);

/* d viewed as a complex in cohomological degrees 0 -> 1: (H0, H1) = (ker, coker). */
std::pair<FPModule, FPModule> two_term_homology(const ModuleMap& d);

struct IsoVerdict {
    bool iso = false;        // kernel and cokernel vanish at precision N
    bool certified = false;  // exps pattern allows an exact certificate
    std::string detail;
};
IsoVerdict iso_check(const ModuleMap& f);

/*
 * sigma-semilinear map x -> A sigma^twist(x). Purely linear when twist = 0.
 * An additive map is a finite sum of such terms with common source and target.
 */
struct SemiTerm {
    Mat A;
    long twist = 0;
};
struct AddMap {
    FPModule src, dst;
    std::vector<SemiTerm> terms;
};

/* Restriction of scalars to W(F_p) = Z/p^N: modules become f-fold, semilinear
   terms become matrices over the prime subring. Used for homology of additive maps. */
struct RestrictedMap {
    FPModule src, dst;  // over the f = 1 context
    Mat A;
};
RestrictedMap restrict_scalars(const AddMap& m);

/* (H0, H1) of an additive two-term complex, over the f = 1 context. */
std::pair<FPModule, FPModule> additive_two_term_homology(const AddMap& d);

/*
 * Graded module on the window [0, wmax]: pieces F^0..F^wmax and transition
 * maps vminus[i-1]: F^i -> F^(i-1). Two boundary conventions are used:
 *  - effective ("eff"): F^i = F^0 with identity transitions below 0, F^i = 0
 *    above wmax (the coherent-sheaf picture for effective modules);
 *  - weight-window ("wt", requires vplus): F^i clamps to the boundary pieces,
 *    v+ is the identity above wmax and p below 0, v- dually (an
 *    A-module with weights in [0, wmax]).
 */
struct GradedModule {
    CtxPtr ctx;
    int wmax = 0;
    std::vector<FPModule> pieces;
    std::vector<ModuleMap> vminus;                 // size wmax
    std::optional<std::vector<ModuleMap>> vplus;   // size wmax when present

    void validate() const;

    const FPModule& piece(int i) const { return pieces.at(static_cast<size_t>(i)); }
    FPModule piece_eff(int i) const;
    ModuleMap vminus_eff(int i) const;  // F^i -> F^(i-1), effective convention
    FPModule piece_wt(int i) const;
    ModuleMap vminus_wt(int i) const;
    ModuleMap vplus_wt(int i) const;    // F^i -> F^(i+1)

    GradedModule direct_sum(const GradedModule& o) const;
};

struct FiberResult {
    FPModule h0;       // L_0 i_a^*
    FPModule hminus1;  // L_1 i_a^*
    ModuleMap proj;    // (+) F^i -> h0 (block column index = degree)
    Mat sect;          // section of proj on coordinates
    std::vector<int> block_offsets;  // generator offset of each degree in the sum
};

/* Finite-window model of the derived fiber at v- = a: the two-term complex
   d(x_i) = vminus(x_i) - a x_i on (+)_(i=1..wmax) F^i -> (+)_(i=0..wmax) F^i. */
FiberResult graded_fiber(const GradedModule& M, const Int& a);

struct WeightWindow {
    bool zero = false;
    int a = 0, b = 0;
};

/* Smallest [a, b] with v- bijective at and below a and pieces vanishing above b
   (plain graded data), or with v+ bijective at and above b (A-graded data). */
WeightWindow weight_window_check(const GradedModule& M);

/* The right-adjoint truncation: M'^i = M^i for i < b and M^b for i >= b, with
   v+ = id and v- = p above b. Requires A-graded (vplus) data. */
GradedModule weight_truncate(const GradedModule& M, int b);

struct BaseChangeResult {
    std::vector<FPModule> pieces;      // (M (x)_A B)^i for i = lo..hi
    std::vector<bool> comparison;      // degree i: M^i -> (M (x) B)^i is an isomorphism
    int lo = 0, hi = 0;
};

/* Presents (M (x)_A B)^i from generators m (x) g_j with the relations
   v+ g_j = p^(e(j)+1-e(j+1)) g_(j+1) and v- g_j = p^(e(j)-e(j-1)) g_(j-1),
   and compares M^i -> (M (x) B)^i in degrees lo..hi. */
BaseChangeResult base_change_A_to_B(const GradedModule& M, int lo, int hi);

}  // namespace flmod::gmod
