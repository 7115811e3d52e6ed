#include "qozeta/laurent.hpp"

#include <sstream>

namespace qozeta {

LaurentL LaurentL::constant(BigInt c) { return monomial(0, std::move(c)); }

LaurentL LaurentL::monomial(long exp, BigInt c) {
    LaurentL p;
    if (c != 0) p.terms_[exp] = std::move(c);
    return p;
}

LaurentL LaurentL::l_minus_one_pow(int k) {
    LaurentL p = constant(1);
    LaurentL lm1;
    lm1.terms_[1] = 1;
    lm1.terms_[0] = -1;
    for (int i = 0; i < k; ++i) p = p * lm1;
    return p;
}

long LaurentL::min_exp() const {
    if (zero()) throw std::logic_error("min_exp of zero polynomial");
    return terms_.begin()->first;
}

long LaurentL::max_exp() const {
    if (zero()) throw std::logic_error("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

BigInt LaurentL::coeff(long exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentL::set(long exp, BigInt c) {
    if (c == 0)
        terms_.erase(exp);
    else
        terms_[exp] = std::move(c);
}

void LaurentL::add_term(long exp, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentL LaurentL::operator-() const {
    LaurentL out;
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

LaurentL LaurentL::operator+(const LaurentL& o) const {
    LaurentL out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

LaurentL LaurentL::operator-(const LaurentL& o) const {
    LaurentL out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

LaurentL LaurentL::operator*(const LaurentL& o) const {
    LaurentL out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
    return out;
}

LaurentL LaurentL::shifted(long dexp) const {
    LaurentL out;
    for (const auto& [e, c] : terms_) out.terms_[e + dexp] = c;
    return out;
}

LaurentL LaurentL::truncated_below(long min_exp) const {
    LaurentL out;
    for (const auto& [e, c] : terms_)
        if (e >= min_exp) out.terms_[e] = c;
    return out;
}

std::optional<LaurentL> LaurentL::divided_exact(const LaurentL& divisor) const {
    if (divisor.zero()) throw std::invalid_argument("division by zero polynomial");
    if (zero()) return LaurentL();
    LaurentL rem = *this, quot;
    const long de = divisor.max_exp();
    const BigInt& dc = divisor.terms_.rbegin()->second;
    // An exact quotient cannot reach below this exponent.
    const long qe_min = min_exp() - divisor.min_exp();
    while (!rem.zero()) {
        long re = rem.max_exp();
        BigInt rc = rem.terms_.rbegin()->second;
        if (rc % dc != 0) return std::nullopt;
        BigInt q = rc / dc;
        long qe = re - de;
        if (qe < qe_min) return std::nullopt;
        quot.add_term(qe, q);
        for (const auto& [e, c] : divisor.terms_) rem.add_term(e + qe, -q * c);
    }
    return quot;
}

std::string LaurentL::str() const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (a != 1 || e == 0) os << a.str();
        if (e != 0) {
            if (a != 1) os << "*";
            os << "L";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace qozeta
