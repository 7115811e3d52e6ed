#pragma once

#include <map>

#include "qozeta/motivic.hpp"

namespace qozeta {

// Element of Z[t^{1/Z}]: integer combination of rational powers of t.
class FracPoly {
  public:
    FracPoly() = default;
    static FracPoly constant(BigInt c);
    static FracPoly monomial(const Rational& exp, BigInt c = 1);

    bool zero() const { return terms_.empty(); }
    const std::map<Rational, BigInt>& terms() const { return terms_; }
    BigInt coeff(const Rational& exp) const;

    void add_term(const Rational& exp, const BigInt& c);

    FracPoly operator-() const;
    FracPoly operator+(const FracPoly& o) const;
    FracPoly operator-(const FracPoly& o) const;
    FracPoly operator*(const FracPoly& o) const;
    bool operator==(const FracPoly& o) const { return terms_ == o.terms_; }

    FracPoly substituted_root(long e) const;  // t -> t^{1/e}
    FracPoly reciprocal_exponents() const;    // t^a -> t^{-a}
    // Terms with exponent strictly below resp. above the threshold.
    FracPoly below(const Rational& threshold) const;
    FracPoly above(const Rational& threshold) const;

    std::string str() const;

  private:
    std::map<Rational, BigInt> terms_;
};

// P_r = 1 + t^{1/r} + ... + t^{(r-1)/r}, the spectrum of [mu_r].
FracPoly p_r(long r);

// Q_{n,r} = (sum_{0<i<n} t^{i/n}) (sum_{0<j<r} t^{j/r}); gcd(n,r) = 1.
FracPoly q_nr(long n, long r);
// Split strictly below / above exponent 1 (no term sits at 1).
std::pair<FracPoly, FracPoly> q_split(long n, long r);

// Spectrum of the curve class (y^n - x^r)^e = 1 in the two-torus.
FracPoly p_nre(long n, long r, long e);
inline FracPoly p_nr(long n, long r) { return p_nre(n, r, 1); }

FracPoly sp_atom(const Atom& a);
// Substitutes L -> t in each coefficient; rejects negative L-exponents.
FracPoly sp_of(const MotivicPoly& m);

FracPoly spectrum_prime(const Invariants& inv,
                        AtomOrientation orient = AtomOrientation::Corrected);
FracPoly spectrum_sp(const Invariants& inv,
                     AtomOrientation orient = AtomOrientation::Corrected);

}  // namespace qozeta
