#include "qozeta/spectrum.hpp"

#include <numeric>
#include <sstream>

namespace qozeta {

FracPoly FracPoly::constant(BigInt c) { return monomial(Rational(0), std::move(c)); }

FracPoly FracPoly::monomial(const Rational& exp, BigInt c) {
    FracPoly p;
    if (c != 0) p.terms_[exp] = std::move(c);
    return p;
}

BigInt FracPoly::coeff(const Rational& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void FracPoly::add_term(const Rational& exp, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

FracPoly FracPoly::operator-() const {
    FracPoly out;
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

FracPoly FracPoly::operator+(const FracPoly& o) const {
    FracPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

FracPoly FracPoly::operator-(const FracPoly& o) const {
    FracPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

FracPoly FracPoly::operator*(const FracPoly& o) const {
    FracPoly out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
    return out;
}

FracPoly FracPoly::substituted_root(long e) const {
    FracPoly out;
    for (const auto& [exp, c] : terms_) out.terms_[exp / e] = c;
    return out;
}

FracPoly FracPoly::reciprocal_exponents() const {
    FracPoly out;
    for (const auto& [exp, c] : terms_) out.terms_[-exp] = c;
    return out;
}

FracPoly FracPoly::below(const Rational& threshold) const {
    FracPoly out;
    for (const auto& [exp, c] : terms_)
        if (exp < threshold) out.terms_[exp] = c;
    return out;
}

FracPoly FracPoly::above(const Rational& threshold) const {
    FracPoly out;
    for (const auto& [exp, c] : terms_)
        if (exp > threshold) out.terms_[exp] = c;
    return out;
}

std::string FracPoly::str() const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        BigInt a = c < 0 ? BigInt(-c) : c;
        if (a != 1 || e == 0) os << a.str();
        if (e != 0) {
            if (a != 1) os << "*";
            os << "t";
            if (e != 1) os << "^(" << format_rational(e) << ")";
        }
    }
    return os.str();
}

FracPoly p_r(long r) {
    if (r < 1) throw std::invalid_argument("p_r: order must be positive");
    FracPoly p;
    for (long i = 0; i < r; ++i) p.add_term(Rational(i, r), 1);
    return p;
}

FracPoly q_nr(long n, long r) {
    if (n < 1 || r < 1 || std::gcd(n, r) != 1)
        throw std::invalid_argument("q_nr: needs positive coprime arguments");
    FracPoly a, b;
    for (long i = 1; i < n; ++i) a.add_term(Rational(i, n), 1);
    for (long j = 1; j < r; ++j) b.add_term(Rational(j, r), 1);
    return a * b;
}

std::pair<FracPoly, FracPoly> q_split(long n, long r) {
    FracPoly q = q_nr(n, r);
    if (q.coeff(Rational(1)) != 0)
        throw consistency_error("q_split: exponent 1 cannot occur when gcd(n,r) = 1");
    return {q.below(Rational(1)), q.above(Rational(1))};
}

FracPoly p_nre(long n, long r, long e) {
    if (e < 1) throw std::invalid_argument("p_nre: e must be positive");
    auto [qlo, qhi] = q_split(n, r);
    FracPoly t = FracPoly::monomial(Rational(1));
    FracPoly inner = t - qlo.substituted_root(e) -
                     FracPoly::monomial(Rational(e - 1, e)) * qhi.substituted_root(e);
    return p_r(e) * inner - p_r(n * e) - p_r(r * e);
}

FracPoly sp_atom(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::Point: return FracPoly::constant(1);
        case Atom::Kind::Mu: return p_r(a.n);
        case Atom::Kind::Curve: return p_nre(a.n, a.r, a.e);
    }
    throw std::logic_error("unreachable");
}

FracPoly sp_of(const MotivicPoly& m) {
    FracPoly out;
    for (const auto& [atom, coeff] : m) {
        FracPoly c;
        for (const auto& [exp, v] : coeff.terms()) {
            if (exp < 0)
                throw validation_error("sp_of: negative power of L has no spectrum rule");
            c.add_term(Rational(exp), v);
        }
        out = out + sp_atom(atom) * c;
    }
    return out;
}

FracPoly spectrum_prime(const Invariants& inv, AtomOrientation orient) {
    const int g = inv.g(), d = inv.d();
    FracPoly one = FracPoly::constant(1);
    FracPoly one_minus_t = one - FracPoly::monomial(Rational(1));
    auto omt_pow = [&](int k) {
        FracPoly p = one;
        for (int i = 0; i < k; ++i) p = p * one_minus_t;
        return p;
    };
    FracPoly sum;
    for (int j = 1; j <= g; ++j) {
        long outer = inv.r[j] * inv.e[j], inner = inv.n[j] * inv.e[j];
        if (orient == AtomOrientation::AsPrinted) std::swap(outer, inner);
        sum = sum + omt_pow(inv.ell[j] - 1) * (p_nre(inv.n[j], inv.r[j], inv.e[j]) + p_r(outer));
        sum = sum + omt_pow(inv.ell[j - 1]) * p_r(inner);
    }
    sum = sum + omt_pow(inv.ell[g]) - one;
    if (d % 2 != 0) sum = -sum;
    return sum;
}

FracPoly spectrum_sp(const Invariants& inv, AtomOrientation orient) {
    FracPoly sp = spectrum_prime(inv, orient).reciprocal_exponents();
    return FracPoly::monomial(Rational(inv.d() + 1)) * sp;
}

}  // namespace qozeta
