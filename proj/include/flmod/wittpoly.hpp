#pragma once

#include "flmod/numeric.hpp"

#include <map>
#include <vector>

namespace flmod::witt {

/*
 * Sparse multivariate polynomials with big-integer coefficients, just enough
 * for Witt structure polynomials. Variables are indexed globally; a monomial
 * is its dense exponent vector (trailing zeros trimmed).
 */
class IntPoly {
  public:
    using Mono = std::vector<unsigned>;

    IntPoly() = default;
    static IntPoly constant(const Int& c);
    static IntPoly variable(unsigned idx);

    const std::map<Mono, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly mul_int(const Int& c) const;
    IntPoly pow(long e) const;

    /* Exact division by the integer d; VerificationError if any coefficient resists. */
    IntPoly divide_exact(const Int& d) const;

    void add_term(Mono m, const Int& c);

    bool operator==(const IntPoly& o) const { return terms_ == o.terms_; }

    std::string str(const std::vector<std::string>& var_names) const;

    /* Evaluate with ring elements; R needs +, *, mul_int, zero(), one(). */
    template <class R>
    R evaluate(const std::vector<R>& values, const R& model) const {
        R acc = model.zero();
        for (const auto& [mono, coeff] : terms_) {
            R term = model.one();
            for (size_t v = 0; v < mono.size(); ++v) {
                unsigned e = mono[v];
                if (e == 0) continue;
                R base = values.at(v);
                while (e > 0) {  // square-and-multiply on the ring
                    if (e & 1) term = term * base;
                    e >>= 1;
                    if (e) base = base * base;
                }
            }
            acc = acc + term.mul_int(coeff);
        }
        return acc;
    }

  private:
    std::map<Mono, Int> terms_;
    static void trim(Mono& m);
};

}  // namespace flmod::witt
