#include "flmod/wittpoly.hpp"

#include <sstream>

namespace flmod::witt {

void IntPoly::trim(Mono& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

IntPoly IntPoly::constant(const Int& c) {
    IntPoly r;
    if (c != 0) r.terms_[{}] = c;
    return r;
}

IntPoly IntPoly::variable(unsigned idx) {
    IntPoly r;
    Mono m(idx + 1, 0);
    m[idx] = 1;
    r.terms_[std::move(m)] = 1;
    return r;
}

void IntPoly::add_term(Mono m, const Int& c) {
    trim(m);
    Int& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    IntPoly r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            Mono m(std::max(m1.size(), m2.size()), 0);
            for (size_t i = 0; i < m1.size(); ++i) m[i] += m1[i];
            for (size_t i = 0; i < m2.size(); ++i) m[i] += m2[i];
            r.add_term(std::move(m), c1 * c2);
        }
    return r;
}

IntPoly IntPoly::mul_int(const Int& c) const {
    IntPoly r;
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_[m] = x * c;
    return r;
}

IntPoly IntPoly::pow(long e) const {
    if (e < 0) throw DomainError("IntPoly: negative power");
    IntPoly acc = constant(1);
    IntPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

IntPoly IntPoly::divide_exact(const Int& d) const {
    IntPoly r;
    for (const auto& [m, c] : terms_) {
        if (c % d != 0)
            throw VerificationError("IntPoly: ghost recursion produced a non-integral coefficient");
        r.terms_[m] = c / d;
    }
    return r;
}

std::string IntPoly::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        bool printed = false;
        if (c != 1 || m.empty()) {
            os << c;
            printed = true;
        }
        for (size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (printed) os << "*";
            os << var_names.at(v);
            if (m[v] > 1) os << "^" << m[v];
            printed = true;
        }
        first = false;
    }
    return os.str();
}

}  // namespace flmod::witt
