#pragma once

#include <cstdint>
#include <optional>

#include "qozeta/linalg.hpp"

namespace qozeta {

// Characteristic-exponent data of an irreducible quasi-ordinary branch:
// d base coordinates, exponents lambda_1 <= ... <= lambda_g componentwise,
// lambda_j outside the lattice generated by Z^d and the earlier exponents.
struct BranchData {
    int d = 0;
    std::vector<RatVec> lambda;

    int g() const { return static_cast<int>(lambda.size()); }
};

BranchData validate(const std::vector<RatVec>& raw, int d);

// Everything derived from the exponents.  Index 0 entries hold the
// conventional values (lattice M_0 = Z^d, gamma_0 = 0, ell_0 = 0).
struct Invariants {
    BranchData branch;
    std::vector<LatticeBasis> lattices;  // M_0..M_g
    std::vector<long> n;                 // n[j], j=1..g (n[0] = 1)
    std::vector<long> e;                 // e[0..g], e[0] = n_1...n_g, e[g] = 1
    std::vector<RatVec> gamma;           // gamma[0] = 0, gamma[1..g]
    std::vector<long> r;                 // r[j], j=1..g (r[0] unused = 0)
    std::vector<int> ell;                // ell[0] = 0, ell[1..g]

    int d() const { return branch.d; }
    int g() const { return branch.g(); }
    long n_product(int from, int to) const {  // n_from * ... * n_to, empty = 1
        long p = 1;
        for (int j = from; j <= to; ++j) p *= n[j];
        return p;
    }
};

Invariants derive_invariants(const BranchData& b);

struct NormalizationCheck {
    bool normalized = false;
    // 0-based coordinate permutation achieving normalization, when one exists.
    std::optional<std::vector<int>> permutation;
};
NormalizationCheck is_normalized(const BranchData& b);

BranchData permute_coordinates(const BranchData& b, const std::vector<int>& perm);

BranchData random_branch(std::uint64_t seed, int d_max, int g_max, long denominator_bound);

}  // namespace qozeta
