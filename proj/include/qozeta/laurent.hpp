#pragma once

#include <map>
#include <optional>

#include "qozeta/numeric.hpp"

namespace qozeta {

// Laurent polynomial in the Lefschetz class L with integer coefficients.
class LaurentL {
  public:
    LaurentL() = default;
    static LaurentL constant(BigInt c);
    static LaurentL monomial(long exp, BigInt c = 1);
    // (L - 1)^k, k >= 0.
    static LaurentL l_minus_one_pow(int k);

    bool zero() const { return terms_.empty(); }
    const std::map<long, BigInt>& terms() const { return terms_; }
    long min_exp() const;
    long max_exp() const;
    BigInt coeff(long exp) const;

    void set(long exp, BigInt c);
    void add_term(long exp, const BigInt& c);

    LaurentL operator-() const;
    LaurentL operator+(const LaurentL& o) const;
    LaurentL operator-(const LaurentL& o) const;
    LaurentL operator*(const LaurentL& o) const;
    bool operator==(const LaurentL& o) const { return terms_ == o.terms_; }

    LaurentL shifted(long dexp) const;  // multiply by L^dexp
    LaurentL truncated_below(long min_exp) const;

    // Exact division; nullopt when the divisor does not divide.
    std::optional<LaurentL> divided_exact(const LaurentL& divisor) const;

    std::string str() const;  // for diagnostics, variable named L

  private:
    std::map<long, BigInt> terms_;
};

}  // namespace qozeta
