#pragma once

#include <optional>

#include "qozeta/numeric.hpp"

namespace qozeta {

using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

// Smith normal form of an integer matrix by gcd-pivot reduction.
// u * input * v == diag(divisors), u and v unimodular.  Divisors are
// nonnegative and each divides the next; trailing zeros pad to min(m,n).
struct SmithResult {
    std::vector<BigInt> divisors;
    IntMat u;  // rows x rows
    IntMat v;  // cols x cols
};
SmithResult smith_normal_form(const IntMat& a);

std::vector<BigInt> elementary_divisors(const IntMat& a);

// Row-style Hermite normal form of the lattice spanned by the rows:
// echelon rows with positive pivots and reduced entries above each pivot.
// Zero rows are dropped, so the result is a canonical basis.
IntMat hermite_basis(const IntMat& rows);

Rational determinant(const RatMat& a);
int rank_of(const RatMat& a);
inline int rank_of(const IntMat& a) {
    RatMat q(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) q[i].assign(a[i].begin(), a[i].end());
    return rank_of(q);
}

// Solves x * basis == v exactly; nullopt when v is outside the row span.
std::optional<RatVec> solve_left(const RatVec& v, const RatMat& basis);

// A full-rank lattice L in Q^d.  Rows are kept exactly as given (the
// coordinate operations below honor them); a Hermite-reduced form is kept
// alongside so equal lattices compare equal whatever basis they came with.
class LatticeBasis {
  public:
    explicit LatticeBasis(RatMat rows);
    static LatticeBasis standard(int dim);

    int dim() const { return static_cast<int>(rows_.size()); }
    const RatMat& rows() const { return rows_; }
    const RatMat& canonical_rows() const { return canonical_; }

    bool contains(const RatVec& v) const;
    // Lattice spanned by this basis together with extra generators,
    // returned with a canonical basis.
    LatticeBasis extend(const std::vector<RatVec>& generators) const;
    // Dual lattice {w : <w, m> integral for all m in L}.
    LatticeBasis dual() const;

    bool operator==(const LatticeBasis& o) const { return canonical_ == o.canonical_; }

  private:
    RatMat rows_;
    RatMat canonical_;
};

// Coordinates of v in the given basis (unique; the basis spans Q^d).
RatVec coordinates_in_basis(const RatVec& v, const LatticeBasis& basis);

// Index [fine : coarse] for coarse a sublattice of fine.
BigInt group_index(const LatticeBasis& coarse, const LatticeBasis& fine);

// Shortest positive multiple of `direction` lying in L.
RatVec primitive_on_ray(const RatVec& direction, const LatticeBasis& l);

// gcd of the coordinates of v in a basis of L; requires v in L.
BigInt integral_length(const RatVec& v, const LatticeBasis& l);

}  // namespace qozeta
