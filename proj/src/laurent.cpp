#include "flmod/laurent.hpp"

#include "flmod/arith.hpp"

#include <sstream>

namespace flmod::laurent {

using arith::pd_exponent;

std::shared_ptr<const RingDescriptor> RingDescriptor::make(RingKind kind, long p, int N, int D,
                                                           bool strict) {
    if (!is_prime_small(p)) throw DomainError("RingDescriptor: p is not prime");
    if (D < 1) throw DomainError("RingDescriptor: window bound must be >= 1");
    if (N < 1) throw DomainError("RingDescriptor: N must be >= 1");
    auto r = std::make_shared<RingDescriptor>();
    r->kind = kind;
    r->p = p;
    r->N = N;
    r->D = D;
    r->strict = strict;
    return r;
}

namespace {

bool degree_supported(const RingDescriptor& ring, int d) {
    switch (ring.kind) {
        case RingKind::Wkv_minus: return d <= 0;
        case RingKind::C2: return d <= 0 || (d >= static_cast<int>(ring.p) && d % ring.p == 0);
        default: return true;
    }
}

void check_same_ring(const RingPtr& a, const RingPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || a->kind != b->kind || a->p != b->p || a->N != b->N || a->D != b->D)
        throw DomainError("laurent: mixed ring descriptors");
}

}  // namespace

BElement::BElement(RingPtr ring, std::map<int, Rat> coeffs, bool truncated)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)), truncated_(truncated) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second == 0) {
            it = coeffs_.erase(it);
            continue;
        }
        if (std::abs(it->first) > ring_->D) {
            if (ring_->strict)
                throw TruncationError("laurent: degree " + std::to_string(it->first) +
                                      " outside window [-" + std::to_string(ring_->D) + ", " +
                                      std::to_string(ring_->D) + "]");
            truncated_ = true;
            it = coeffs_.erase(it);
            continue;
        }
        if (!degree_supported(*ring_, it->first))
            throw DomainError("laurent: degree " + std::to_string(it->first) +
                              " not supported by this ring kind");
        if (ring_->kind == RingKind::A && !is_p_integral(it->second, Int(ring_->p)))
            throw DomainError("laurent: non-p-integral coefficient in A at degree " +
                              std::to_string(it->first));
        ++it;
    }
}

Rat BElement::coeff(int degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

BElement BElement::operator+(const BElement& o) const {
    check_same_ring(ring_, o.ring_);
    std::map<int, Rat> r = coeffs_;
    for (const auto& [d, c] : o.coeffs_) r[d] += c;
    return BElement(ring_, std::move(r), truncated_ || o.truncated_);
}

BElement BElement::operator-(const BElement& o) const { return *this + (-o); }

BElement BElement::operator-() const {
    std::map<int, Rat> r;
    for (const auto& [d, c] : coeffs_) r[d] = -c;
    return BElement(ring_, std::move(r), truncated_);
}

BElement BElement::operator*(const BElement& o) const {
    check_same_ring(ring_, o.ring_);
    std::map<int, Rat> r;
    bool trunc = truncated_ || o.truncated_;
    for (const auto& [d1, c1] : coeffs_)
        for (const auto& [d2, c2] : o.coeffs_) {
            int d = d1 + d2;
            if (ring_->kind == RingKind::C2 && d1 > 0 && d2 < 0) continue;  // v+^p v- = 0
            if (ring_->kind == RingKind::C2 && d1 < 0 && d2 > 0) continue;
            r[d] += c1 * c2;
        }
    return BElement(ring_, std::move(r), trunc);
}

BElement BElement::scalar_mul(const Rat& c) const {
    if (c == 0) return zero();
    std::map<int, Rat> r;
    for (const auto& [d, x] : coeffs_) r[d] = c * x;
    return BElement(ring_, std::move(r), truncated_);
}

BElement BElement::pow(long e) const {
    if (e < 0) throw DomainError("BElement: negative power");
    BElement acc = one();
    BElement base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) > 0 ? base * base : base;
    }
    return acc;
}

BElement BElement::divide_p(long e) const {
    Rat scale = e >= 0 ? Rat(Int(1), pow_int(Int(ring_->p), e))
                       : Rat(pow_int(Int(ring_->p), -e));
    return scalar_mul(scale);
}

BElement BElement::truncate_above(int bound) const {
    std::map<int, Rat> r;
    for (const auto& [d, c] : coeffs_)
        if (d <= bound) r[d] = c;
    return BElement(ring_, std::move(r), truncated_);
}

bool BElement::homogeneous_of_degree(int d) const {
    for (const auto& [deg, c] : coeffs_)
        if (deg != d) return false;
    return true;
}

Rat BElement::evaluate(const Rat& vp) const {
    Rat acc = 0;
    for (const auto& [d, c] : coeffs_) {
        Rat t = c;
        if (d >= 0)
            for (int i = 0; i < d; ++i) t *= vp;
        else
            for (int i = 0; i < -d; ++i) t /= vp;
        acc += t;
    }
    return acc;
}

BElement BElement::one() const { return BElement(ring_, {{0, Rat(1)}}); }

std::string BElement::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : coeffs_) {
        if (!first) os << " + ";
        os << "(" << c << ")";
        if (d != 0) os << "*v+^" << d;
        first = false;
    }
    return os.str();
}

BElement vplus(const RingPtr& ring) { return BElement(ring, {{1, Rat(1)}}); }

BElement vminus(const RingPtr& ring) { return BElement(ring, {{-1, Rat(ring->p)}}); }

BElement g_basis(const RingPtr& ring, int i) {
    long e = pd_exponent(ring->p, i) - i;
    Rat c = e >= 0 ? Rat(pow_int(Int(ring->p), e)) : Rat(Int(1), pow_int(Int(ring->p), -e));
    return BElement(ring, {{i, c}});
}

BElement gamma(const RingPtr& ring, long n) {
    if (n < 0) throw DomainError("gamma: n must be >= 0");
    return BElement(ring, {{static_cast<int>(n), Rat(Int(1), factorial(n))}});
}

IntegralityWitness integrality_check(const BElement& x) {
    const Int p(x.ring()->p);
    for (const auto& [d, c] : x.coeffs()) {
        long need = pd_exponent(x.ring()->p, d) - d;
        long have = val_p(c, p);
        if (have < need) return {false, d, need - have};
    }
    return {};
}

Report verify_pd_relations(long p, int n_max, int D) {
    Report rep;
    auto ring = RingDescriptor::make(RingKind::B, p, 1, D, /*strict=*/true);
    for (int n = 1; n <= n_max; ++n) {
        long pn = 1, pn1 = 1;
        for (int i = 0; i < n; ++i) pn *= p;
        for (int i = 0; i + 1 < n; ++i) pn1 *= p;
        if (pn > D) throw DomainError("verify_pd_relations: p^n exceeds the window");
        {
            // p^n!/(p^{n-1}!)^p * gamma_{p^n}(v+) = gamma_{p^{n-1}}(v+)^p
            Rat scale(factorial(pn), pow_int(factorial(pn1), p));
            BElement lhs = gamma(ring, pn).scalar_mul(scale);
            BElement rhs = gamma(ring, pn1).pow(p);
            rep.add("pd/gamma-p-power/p=" + std::to_string(p) + "/n=" + std::to_string(n),
                    lhs == rhs, "lhs = " + lhs.str() + ", rhs = " + rhs.str());
        }
        {
            // v-^{p^n} * gamma_{p^n}(v+) = p^{p^n}/p^n!
            BElement lhs = vminus(ring).pow(pn) * gamma(ring, pn);
            BElement rhs(ring, {{0, Rat(pow_int(Int(p), pn), factorial(pn))}});
            rep.add("pd/vminus-gamma/p=" + std::to_string(p) + "/n=" + std::to_string(n),
                    lhs == rhs, "lhs = " + lhs.str() + ", rhs = " + rhs.str());
        }
    }
    rep.sort();
    return rep;
}

GElement::GElement(RingPtr ring, std::map<int, Int> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    Int pM = pow_int(Int(ring_->p), ring_->N);
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        it->second = mod_reduce(it->second, pM);
        if (it->second == 0) {
            it = coeffs_.erase(it);
            continue;
        }
        if (std::abs(it->first) > ring_->D) {
            if (ring_->strict) throw TruncationError("GElement: degree outside window");
            it = coeffs_.erase(it);
            continue;
        }
        if (!degree_supported(*ring_, it->first))
            throw DomainError("GElement: degree not supported by this ring kind");
        ++it;
    }
}

GElement GElement::operator+(const GElement& o) const {
    check_same_ring(ring_, o.ring_);
    std::map<int, Int> r = coeffs_;
    for (const auto& [d, c] : o.coeffs_) r[d] += c;
    return GElement(ring_, std::move(r));
}

GElement GElement::operator-(const GElement& o) const { return *this + (-o); }

GElement GElement::operator-() const {
    std::map<int, Int> r;
    for (const auto& [d, c] : coeffs_) r[d] = -c;
    return GElement(ring_, std::move(r));
}

GElement GElement::operator*(const GElement& o) const {
    check_same_ring(ring_, o.ring_);
    std::map<int, Int> r;
    for (const auto& [d1, c1] : coeffs_)
        for (const auto& [d2, c2] : o.coeffs_) {
            if (ring_->kind == RingKind::C2 && ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)))
                continue;  // v+^p v- = 0
            long exp = pd_exponent(ring_->p, d1) + pd_exponent(ring_->p, d2) -
                       pd_exponent(ring_->p, d1 + d2);
            if (exp < 0) throw VerificationError("GElement: negative structure-constant exponent");
            r[d1 + d2] += c1 * c2 * pow_int(Int(ring_->p), exp);
        }
    return GElement(ring_, std::move(r));
}

GElement GElement::mul_int(const Int& n) const {
    std::map<int, Int> r;
    for (const auto& [d, c] : coeffs_) r[d] = c * n;
    return GElement(ring_, std::move(r));
}

GElement GElement::truncate_above(int bound) const {
    std::map<int, Int> r;
    for (const auto& [d, c] : coeffs_)
        if (d <= bound) r[d] = c;
    return GElement(ring_, std::move(r));
}

GElement GElement::one() const { return GElement(ring_, {{0, Int(1)}}); }

GElement GElement::make_int(const Int& n) const { return GElement(ring_, {{0, n}}); }

std::string GElement::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : coeffs_) {
        if (!first) os << " + ";
        os << c << "*g[" << d << "]";
        first = false;
    }
    return os.str();
}

GElement reduce_mod(const BElement& x, int M) {
    auto w = integrality_check(x);
    if (!w.integral)
        throw DomainError("reduce_mod: non-integral input at degree " + std::to_string(w.degree));
    auto ring = RingDescriptor::make(RingKind::B_mod_p, x.ring()->p, M, x.ring()->D,
                                     x.ring()->strict);
    Int pM = pow_int(Int(x.ring()->p), M);
    std::map<int, Int> out;
    for (const auto& [d, c] : x.coeffs()) {
        // coefficient in the g_d basis: u = c * p^(d - e(d)), a p-integral rational
        long shift = d - pd_exponent(x.ring()->p, d);
        Rat u = c;
        if (shift >= 0)
            u *= Rat(pow_int(Int(x.ring()->p), shift));
        else
            u /= Rat(pow_int(Int(x.ring()->p), -shift));
        Int num = mod_reduce(numerator(u), pM);
        Int den_inv = inv_mod(denominator(u), pM);
        out[d] = mod_reduce(num * den_inv, pM);
    }
    return GElement(ring, std::move(out));
}

long a_to_b_index_valuation(long p, long i) {
    return i <= 0 ? 0 : i - pd_exponent(p, i);
}

}  // namespace flmod::laurent
