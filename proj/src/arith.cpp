#include "flmod/arith.hpp"

#include <algorithm>
#include <sstream>

namespace flmod::arith {

namespace {

/* Polynomial helpers over F_p for the irreducibility check (f <= 6, brute force). */
using FpPoly = std::vector<long>;  // coefficients, constant first, no trailing zeros

FpPoly fp_trim(FpPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, long p) {
    a = fp_trim(a);
    const long lead_inv_src = b.back();
    long inv = 1;
    for (long x = 1; x < p; ++x)
        if (x * lead_inv_src % p == 1) { inv = x; break; }
    while (a.size() >= b.size() && !a.empty()) {
        long q = a.back() * inv % p;
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            a[i + shift] = ((a[i + shift] - q * b[i]) % p + p * p) % p;
        }
        a = fp_trim(a);
    }
    return a;
}

/* Enumerate monic polynomials of degree d over F_p in lexicographic order. */
bool next_poly(std::vector<long>& coeffs, long p) {
    for (auto& c : coeffs) {
        if (++c < p) return true;
        c = 0;
    }
    return false;
}

bool fp_irreducible(const std::vector<Int>& minpoly, long p) {
    int f = static_cast<int>(minpoly.size()) - 1;
    FpPoly m(f + 1);
    for (int i = 0; i <= f; ++i) m[i] = static_cast<long>(mod_reduce(minpoly[i], p));
    if (fp_trim(m).size() != static_cast<size_t>(f + 1)) return false;  // degree drop mod p
    for (int d = 1; 2 * d <= f; ++d) {
        std::vector<long> low(d, 0);
        do {
            FpPoly cand(low.begin(), low.end());
            cand.push_back(1);  // monic
            if (fp_rem(m, cand, p).empty()) return false;
        } while (next_poly(low, p));
    }
    return true;
}

std::vector<Int> poly_mul_mod(const std::vector<Int>& a, const std::vector<Int>& b,
                              const std::vector<Int>& minpoly, const Int& pN) {
    int f = static_cast<int>(minpoly.size()) - 1;
    std::vector<Int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    // reduce by the monic minpoly: a^f = -(m_0 + m_1 a + ... + m_{f-1} a^{f-1})
    for (int d = static_cast<int>(prod.size()) - 1; d >= f; --d) {
        Int top = prod[d];
        if (top == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < f; ++i) prod[d - f + i] -= top * minpoly[i];
    }
    prod.resize(f);
    for (auto& c : prod) c = mod_reduce(c, pN);
    return prod;
}

}  // namespace

CtxPtr PrimeContext::create(long p, int N, int f, std::vector<Int> minpoly) {
    if (!is_prime_small(p)) throw DomainError("PrimeContext: p = " + std::to_string(p) + " is not prime");
    if (N < 1) throw DomainError("PrimeContext: N must be >= 1");
    if (f < 1) throw DomainError("PrimeContext: f must be >= 1");
    auto ctx = std::shared_ptr<PrimeContext>(new PrimeContext());
    ctx->p_ = p;
    ctx->N_ = N;
    ctx->f_ = f;
    ctx->pN_ = pow_int(p, N);
    if (f == 1) {
        ctx->minpoly_ = {Int(0), Int(1)};  // a - 0, i.e. the generator is 0; unused
        ctx->frob_gen_ = {Int(0)};
        return ctx;
    }
    if (static_cast<int>(minpoly.size()) != f + 1)
        throw DomainError("PrimeContext: minpoly must have f+1 coefficients");
    if (minpoly[f] != 1) throw DomainError("PrimeContext: minpoly must be monic");
    if (!fp_irreducible(minpoly, p))
        throw DomainError("PrimeContext: minpoly is not irreducible mod p");
    for (auto& c : minpoly) c = mod_reduce(c, ctx->pN_);
    minpoly[f] = 1;
    ctx->minpoly_ = minpoly;

    // Hensel-lift the root of minpoly congruent to a^p mod p, inside Zq itself.
    // Newton iteration r <- r - m(r)/m'(r); m'(r) is a unit because m is separable mod p.
    std::vector<Int> r;
    {
        // r = a^p mod p^N as a starting point congruent to a^p mod p
        std::vector<Int> acc = {Int(1)};
        std::vector<Int> base = {Int(0), Int(1)};
        long e = p;
        while (e > 0) {
            if (e & 1) acc = poly_mul_mod(acc, base, minpoly, ctx->pN_);
            base = poly_mul_mod(base, base, minpoly, ctx->pN_);
            e >>= 1;
        }
        acc.resize(f, 0);
        r = acc;
    }
    auto eval_poly = [&](const std::vector<Int>& coeffs, const std::vector<Int>& x) {
        std::vector<Int> acc(f, 0);  // Horner
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
            acc = poly_mul_mod(acc, x, minpoly, ctx->pN_);
            acc[0] = mod_reduce(acc[0] + coeffs[i], ctx->pN_);
        }
        return acc;
    };
    std::vector<Int> deriv(f);
    for (int i = 1; i <= f; ++i) deriv[i - 1] = mod_reduce(Int(i) * minpoly[i], ctx->pN_);
    for (int iter = 0; iter < 2 * N + 2; ++iter) {
        std::vector<Int> val = eval_poly(minpoly, r);
        bool zero = std::all_of(val.begin(), val.end(), [](const Int& c) { return c == 0; });
        if (zero) break;
        std::vector<Int> dv = eval_poly(deriv, r);
        // invert dv mod (p^N, minpoly) by Newton from the mod-p inverse
        // mod-p inverse via Fermat in F_{p^f}: dv^{p^f - 2}
        std::vector<Int> inv = {Int(1)};
        {
            Int e = pow_int(p, f) - 2;
            std::vector<Int> base = dv;
            while (e > 0) {
                if (e % 2 == 1) inv = poly_mul_mod(inv, base, minpoly, ctx->pN_);
                base = poly_mul_mod(base, base, minpoly, ctx->pN_);
                e >>= 1;
            }
            for (int k = 0; k < N + 1; ++k) {  // Newton refinement: inv <- inv(2 - dv*inv)
                std::vector<Int> t = poly_mul_mod(dv, inv, minpoly, ctx->pN_);
                for (auto& c : t) c = mod_reduce(-c, ctx->pN_);
                t[0] = mod_reduce(t[0] + 2, ctx->pN_);
                inv = poly_mul_mod(inv, t, minpoly, ctx->pN_);
            }
        }
        std::vector<Int> corr = poly_mul_mod(val, inv, minpoly, ctx->pN_);
        for (int i = 0; i < f; ++i) r[i] = mod_reduce(r[i] - corr[i], ctx->pN_);
    }
    {
        std::vector<Int> val = eval_poly(minpoly, r);
        for (const auto& c : val)
            if (c != 0) throw VerificationError("PrimeContext: Hensel lift of Frobenius failed");
    }
    ctx->frob_gen_ = r;
    return ctx;
}

CtxPtr PrimeContext::residue_ctx() const { return with_precision(1); }

CtxPtr PrimeContext::with_precision(int M) const {
    if (M == N_) return shared_from_this();
    std::vector<Int> mp;
    if (f_ > 1) mp = minpoly_;
    return create(p_, M, f_, mp);
}

Zq PrimeContext::zero() const { return Zq(shared_from_this(), std::vector<Int>(f_, 0)); }
Zq PrimeContext::one() const {
    std::vector<Int> c(f_, 0);
    c[0] = 1;
    return Zq(shared_from_this(), c);
}
Zq PrimeContext::from_int(const Int& n) const {
    std::vector<Int> c(f_, 0);
    c[0] = mod_reduce(n, pN_);
    return Zq(shared_from_this(), c);
}
Zq PrimeContext::generator() const {
    if (f_ == 1) return zero();
    std::vector<Int> c(f_, 0);
    c[1] = 1;
    return Zq(shared_from_this(), c);
}

Zq::Zq(CtxPtr ctx, std::vector<Int> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != ctx_->f()) throw DomainError("Zq: wrong coefficient count");
    for (auto& x : c_) x = mod_reduce(x, ctx_->pN());
}

bool Zq::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

bool Zq::operator==(const Zq& o) const {
    return ctx_->same_field(*o.ctx_) && ctx_->N() == o.ctx_->N() && c_ == o.c_;
}

Zq Zq::operator+(const Zq& o) const {
    std::vector<Int> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_reduce(c_[i] + o.c_[i], ctx_->pN());
    return Zq(ctx_, std::move(r));
}

Zq Zq::operator-(const Zq& o) const {
    std::vector<Int> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_reduce(c_[i] - o.c_[i], ctx_->pN());
    return Zq(ctx_, std::move(r));
}

Zq Zq::operator-() const {
    std::vector<Int> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_reduce(-c_[i], ctx_->pN());
    return Zq(ctx_, std::move(r));
}

Zq Zq::operator*(const Zq& o) const {
    if (!ctx_->same_field(*o.ctx_)) throw DomainError("Zq: mixed contexts");
    return Zq(ctx_, poly_mul_mod(c_, o.c_, ctx_->minpoly(), ctx_->pN()));
}

Zq Zq::mul_int(const Int& n) const {
    std::vector<Int> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_reduce(c_[i] * n, ctx_->pN());
    return Zq(ctx_, std::move(r));
}

Zq Zq::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Zq acc = ctx_->one();
    Zq base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int Zq::valuation() const {
    if (is_zero()) return ctx_->N();
    long v = ctx_->N();
    for (const auto& x : c_) {
        if (x == 0) continue;
        v = std::min(v, val_p(x, Int(ctx_->p()), ctx_->N()));
    }
    return static_cast<int>(v);
}

Zq Zq::inverse() const {
    int v = valuation();
    if (v != 0)
        throw DomainError("Zq: non-unit of valuation " + std::to_string(v) + " has no inverse");
    if (ctx_->f() == 1) return Zq(ctx_, {inv_mod(c_[0], ctx_->pN())});
    // Fermat inverse mod p, then Newton to full precision.
    std::vector<Int> inv = {Int(1)};
    {
        Int e = pow_int(ctx_->p(), ctx_->f()) - 2;
        std::vector<Int> base = c_;
        while (e > 0) {
            if (e % 2 == 1) inv = poly_mul_mod(inv, base, ctx_->minpoly(), ctx_->pN());
            base = poly_mul_mod(base, base, ctx_->minpoly(), ctx_->pN());
            e >>= 1;
        }
    }
    for (int k = 0; k < ctx_->N() + 1; ++k) {
        std::vector<Int> t = poly_mul_mod(c_, inv, ctx_->minpoly(), ctx_->pN());
        for (auto& c : t) c = mod_reduce(-c, ctx_->pN());
        t[0] = mod_reduce(t[0] + 2, ctx_->pN());
        inv = poly_mul_mod(inv, t, ctx_->minpoly(), ctx_->pN());
    }
    Zq result(ctx_, inv);
    if (!((*this * result) == ctx_->one())) throw VerificationError("Zq: inverse check failed");
    return result;
}

Zq Zq::divide_p(int e) const {
    if (e == 0) return *this;
    Int pe = pow_int(ctx_->p(), e);
    std::vector<Int> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] % pe != 0) throw DomainError("Zq: divide_p of an element of smaller valuation");
        r[i] = c_[i] / pe;
    }
    return Zq(ctx_, std::move(r));
}

Zq Zq::frobenius() const {
    if (ctx_->f() == 1) return *this;
    Zq acc = ctx_->zero();
    Zq gen_image(ctx_, ctx_->frob_gen());
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        acc = acc * gen_image + ctx_->from_int(c_[i]);
    }
    return acc;
}

Zq Zq::frobenius_pow(long k) const {
    long f = ctx_->f();
    k = ((k % f) + f) % f;
    Zq r = *this;
    for (long i = 0; i < k; ++i) r = r.frobenius();
    return r;
}

std::string Zq::str() const {
    std::ostringstream os;
    if (ctx_->f() == 1) {
        os << c_[0];
        return os.str();
    }
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << "+";
        os << c_[i];
        if (i >= 1) os << "*a";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

long mazur_number(long p, long n) {
    if (!is_prime_small(p)) throw DomainError("mazur_number: p is not prime");
    if (n <= 0) throw DomainError("mazur_number: n must be >= 1");
    // ord_p(p^m/m!) = m - (m - s_p(m))/(p-1) = (m(p-2) + s_p(m))/(p-1) by Legendre.
    // For p >= 3 this grows at least like m(p-2)/(p-1), so the minimum over m >= n
    // is attained early; for p = 2 it equals s_2(m), minimized at the first power
    // of two >= n. The window below covers both.
    long hi = std::max(4 * n, 4 * p * (n + 1));
    long best = -1;
    for (long m = n; m <= hi; ++m) {
        long ord = (m * (p - 2) + digit_sum(m, p)) / (p - 1);
        if (best < 0 || ord < best) best = ord;
    }
    return best;
}

long pd_exponent(long p, long i) { return i <= 0 ? 0 : mazur_number(p, i); }

std::vector<long> mazur_table(long p, long max) {
    std::vector<long> t;
    t.reserve(static_cast<size_t>(max));
    for (long n = 1; n <= max; ++n) t.push_back(mazur_number(p, n));
    return t;
}

}  // namespace flmod::arith
