#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qozeta {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Input/validation problems (CLI exit code 1).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed formula disagreeing with its oracle, a failed internal
// assertion, or a broken invariant (CLI exit code 2).
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline BigInt floor_of(const Rational& q) { return floor_div(num(q), den(q)); }
inline BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

inline long to_long(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw consistency_error("integer too large for machine word: " + v.str());
    return static_cast<long>(static_cast<long long>(v));
}

// Parses "p/q" or "p" (used for all rational input; no floating point anywhere).
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

using RatVec = std::vector<Rational>;
using IntVec = std::vector<BigInt>;

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

}  // namespace qozeta
