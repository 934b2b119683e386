#pragma once

#include "flmod/fl.hpp"

namespace flmod::sen {

using fl::FLModule;
using gmod::Mat;

/* Sen operator on the mod-p fiber: Theta = Phi Theta' Phi^{-1} with
   Theta' = (+) (-i) Id on F^* gr^i; a k-linear matrix on F^0. Requires a valid
   p-torsion module with window inside [0, p-1]. */
Mat sen_theta(const FLModule& M);

/* The correction alpha on (+) F^* gr^i: zero except for the block
   F^* gr^(p-1) -> F^* gr^0 given by the composite
   Theta-bar: F^(p-1) --v-^(p-1)--> F^0 --Theta--> F^0 ->> F^0/v- F^1.
   Returned in the gr-block coordinates; alpha^2 = 0 by construction. */
struct AlphaResult {
    Mat alpha;                  // square matrix on (+) gr^i coordinates
    Mat theta_bar;              // gr^0-coordinates of Theta-bar on F^(p-1)
    std::vector<int> offsets;   // gr block offsets
    bool zero = true;
};
AlphaResult alpha(const FLModule& M);

/* The reduced-locus comparison endofunctor (F^., phi) -> (F^., phi (Id - alpha));
   identity whenever F^(p-1) = 0. Output is re-validated. */
FLModule di_maz_endofunctor(const FLModule& M);

/* For a rank-2 extension of k{p-1} by k{0} in standard presentation (sub unit
   and quotient unit both 1), the class t read in the basis (e1, v-^(p-1) x);
   0 iff the extension splits (cross-checked by solving for an FL splitting). */
struct ExtClass {
    arith::Zq value;
    bool splits = false;
};
ExtClass extension_class(const FLModule& M);

/* The standard extension of k{p-1} by k{0} with parameter t (mod-p module at
   the context's precision-1 reduction of t). */
FLModule standard_extension(const gmod::CtxPtr& ctx, const arith::Zq& t);

/* Bitwise equality of FL data (same window, pieces, v- and phi matrices). */
bool fl_equal(const FLModule& a, const FLModule& b);

}  // namespace flmod::sen
