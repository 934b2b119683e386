#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace flmod {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* Base error for everything the library can reject. */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Arithmetic misuse: mixed contexts, inverting non-units, window overflow in strict mode. */
struct DomainError : Error {
    using Error::Error;
};

/* Raised when a verifier's internal integrality or identity assertion fails. */
struct VerificationError : Error {
    using Error::Error;
};

inline Int pow_int(const Int& b, long e) {
    if (e < 0) throw DomainError("pow_int: negative exponent");
    Int r = 1, base = b;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
    }
    return r;
}

/* p-adic valuation of a nonzero integer; `cap` bounds the search (use for reduced values). */
inline long val_p(const Int& x, const Int& p, long cap = -1) {
    if (x == 0) throw DomainError("val_p: zero has no finite valuation");
    Int y = abs(x);
    long v = 0;
    while (y % p == 0) {
        y /= p;
        ++v;
        if (cap >= 0 && v >= cap) return cap;
    }
    return v;
}

/* p-adic valuation of a nonzero rational (can be negative). */
inline long val_p(const Rat& x, const Int& p) {
    if (x == 0) throw DomainError("val_p: zero has no finite valuation");
    long v = 0;
    Int num = numerator(x), den = denominator(x);
    while (num % p == 0) { num /= p; ++v; }
    while (den % p == 0) { den /= p; --v; }
    return v;
}

inline bool is_p_integral(const Rat& x, const Int& p) {
    return x == 0 || denominator(x) % p != 0;
}

inline Int mod_reduce(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

/* Inverse of x mod m via extended Euclid; throws on non-units. */
inline Int inv_mod(const Int& x, const Int& m) {
    Int a = mod_reduce(x, m), b = m;
    Int u0 = 1, u1 = 0;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
    }
    if (a != 1) throw DomainError("inv_mod: non-unit");
    return mod_reduce(u0, m);
}

inline bool is_prime_small(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Int factorial(long n) {
    Int r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

/* Base-p digit sum. */
inline long digit_sum(long n, long p) {
    long s = 0;
    while (n > 0) {
        s += n % p;
        n /= p;
    }
    return s;
}

}  // namespace flmod
