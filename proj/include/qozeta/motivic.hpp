#pragma once

#include <map>

#include "qozeta/fan.hpp"
#include "qozeta/laurent.hpp"

namespace qozeta {

// Grothendieck-ring atoms the formulas produce: the point class, [mu_n],
// and the class of (y^n - x^r)^e = 1 inside the two-torus.
struct Atom {
    enum class Kind { Point, Mu, Curve };
    Kind kind = Kind::Point;
    long n = 0, r = 0, e = 0;

    static Atom point() { return Atom{}; }
    static Atom mu(long n);             // mu(1) collapses to the point class
    static Atom curve(long n, long r, long e);

    auto operator<=>(const Atom&) const = default;
    std::string str() const;
};

// Which mu-class is attached to sigma^+ and which to sigma^-.  Two
// orientations of the table circulate; Corrected is the one an independent
// jet computation confirms, AsPrinted keeps the other for auditing.
enum class AtomOrientation { Corrected, AsPrinted };
enum class ZetaVariant { Naive, Monodromic };

// A term sum(num_m T^m) / prod (1 - L^{-a} T^b) with factored denominator.
// Factor pairs (a, b) come from edges as (xi_level(v), eta(v)).
struct RatLT {
    std::map<long, LaurentL> num;                 // T-exponent -> coefficient
    std::vector<std::pair<long, long>> den;       // sorted multiset of (a, b)

    bool zero() const;
    void add_num_term(long t_exp, const LaurentL& c);
    long num_t_degree() const;  // -1 when zero
    std::string str() const;
};

RatLT rat_add(const RatLT& x, const RatLT& y);
RatLT rat_sub(const RatLT& x, const RatLT& y);
RatLT rat_scale(const RatLT& x, const LaurentL& s);
bool rat_equal(const RatLT& x, const RatLT& y);

// prod (1 - L^{-a} T^b) expanded as a polynomial in T.
std::map<long, LaurentL> expand_factors(const std::vector<std::pair<long, long>>& factors);

using MotivicPoly = std::map<Atom, LaurentL>;  // finite sum atom * Laurent coefficient
using MotivicRat = std::map<Atom, RatLT>;

void mp_add(MotivicPoly& into, const Atom& a, const LaurentL& c);
MotivicPoly mp_add(const MotivicPoly& x, const MotivicPoly& y);
MotivicPoly mp_scale(const MotivicPoly& x, const LaurentL& s);
// Product; rejects products of two non-point atoms (never needed here).
MotivicPoly mp_mul(const MotivicPoly& x, const MotivicPoly& y);
MotivicPoly mp_truncate(const MotivicPoly& x, long l_precision);

// Generating function S_theta of int(theta) under x^v -> L^{-xi_j(v)} T^{eta(v)};
// sigma_j^- always routes through the Lemma-minus three-term identity.
RatLT s_theta(const Fan& fan, ConeId id);
// Direct evaluation from edge data; requires a simplicial cone (test oracle
// for the sigma^- route when that cone happens to be simplicial).
RatLT s_theta_direct(const Fan& fan, ConeId id);

LaurentL c_naive(const Invariants& inv, ConeId id);
Atom c_mono(const Invariants& inv, ConeId id, AtomOrientation orient);

MotivicRat z_naive(const Fan& fan);
MotivicRat z_mono(const Fan& fan, AtomOrientation orient = AtomOrientation::Corrected);

// Motivic measure of { ord_t(F . phi) = k, ac(f . phi) = 1 } (monodromic)
// or of the plain order set (naive).
MotivicPoly mu_Hk(const Invariants& inv, const IntVec& k, ZetaVariant variant,
                  AtomOrientation orient = AtomOrientation::Corrected);

// Coefficient of T^n, truncated to L-exponents >= -l_precision.
MotivicPoly coefficient_of_T(const MotivicRat& z, long n, long l_precision);
// Same coefficient summed directly over enumerated order vectors.
MotivicPoly oracle_coefficient(const Invariants& inv, long n, long l_precision,
                               ZetaVariant variant,
                               AtomOrientation orient = AtomOrientation::Corrected);
std::vector<MotivicPoly> oracle_coefficients_upto(const Invariants& inv, long n_max,
                                                  long l_precision, ZetaVariant variant,
                                                  AtomOrientation orient);

// lim_{T->inf} (L-1)^{dim-1} S_theta, a signed power of (L-1).
LaurentL cone_limit(const Fan& fan, ConeId id);
// The same limit computed from the series-ring limit rule alone.
LaurentL sr_limit(const RatLT& x);

MotivicPoly milnor_fiber_closed(const Invariants& inv,
                                AtomOrientation orient = AtomOrientation::Corrected);
MotivicPoly milnor_fiber_via_limit(const Fan& fan,
                                   AtomOrientation orient = AtomOrientation::Corrected);

}  // namespace qozeta
