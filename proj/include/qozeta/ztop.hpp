#pragma once

#include "qozeta/motivic.hpp"

namespace qozeta {

// Rational function of s over Q with denominator kept as a multiset of
// linear factors (a + A*s); reduction cancels factors against exact roots
// of the numerator.
struct RatS {
    std::vector<Rational> num;                    // ascending coefficients
    std::vector<std::pair<BigInt, BigInt>> den;   // sorted multiset of (a, A)

    static RatS constant(const Rational& c);
    bool zero() const;
    void reduce();

    Rational eval(const Rational& s) const;  // requires s off the poles
    std::string str() const;
};

RatS rats_add(const RatS& x, const RatS& y);
RatS rats_sub(const RatS& x, const RatS& y);
bool rats_equal(const RatS& x, const RatS& y);

// J_theta = mult(theta) / prod (xi_j(v) + eta(v) s) for simplicial theta;
// sigma_j^- uses the recursion through J_{rho_{j-1}} - J_{sigma_j^+}.
RatS j_theta(const Fan& fan, ConeId id);

RatS z_top(const Fan& fan);

// Euler-characteristic specialization of z_naive at T = L^{-s0} followed by
// the exact limit L -> 1; must agree with z_top(s0).
Rational chi_top_oracle(const Fan& fan, long s0);
Rational chi_top_of_ratlt(const RatLT& x, long s0);

// Edges nu_i^(j) whose candidate pole is guaranteed to cancel.
std::vector<std::pair<int, int>> special_vectors(const Invariants& inv);  // (i, j), 1-based

// Deduplicated linear factors (a + A s) admissible in the reduced z_top
// denominator; includes (1 + s), excludes special and coordinate edges.
std::vector<std::pair<BigInt, BigInt>> candidate_poles(const Fan& fan);

// Newton-map bookkeeping: coprime pairs per level and coordinate.
struct NewtonData {
    std::vector<std::vector<std::pair<long, long>>> pq;  // [j-1][i-1] -> (p, q)
};
NewtonData newton_data(const Invariants& inv);

using CPList = std::vector<std::pair<BigInt, BigInt>>;  // (B, b) with multiplicity
CPList cp_list(const Invariants& inv);
CPList scp_list(const Invariants& inv);

bool check_cp_equals_fan(const Invariants& inv);

// Local contribution at level j to the naive zeta function.
RatLT lc_j(const Fan& fan, int j);
// Verifies that the special factor at level j cancels out of LC_j.
bool lc_identity_check(const Fan& fan, int j);

}  // namespace qozeta
