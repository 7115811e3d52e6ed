#pragma once

#include <optional>
#include <string>

#include "qozeta/branch.hpp"

namespace qozeta {

enum class ConeKind { Rho, SigmaPlus, SigmaMinus, SigmaTop };

struct ConeId {
    ConeKind kind;
    int level;  // j for Rho/Sigma+/Sigma-, g+1 for SigmaTop

    auto operator<=>(const ConeId&) const = default;
    std::string str() const;
};

struct Cone {
    ConeId id;
    int level = 0;                // index j of the linear form xi_j attached to the cone
    std::vector<IntVec> edges;    // primitive for Z^{d+g+1}
    int dim = 0;
    bool simplicial = false;
};

// The 3g+1 distinguished cones in Z^{d+g+1} together with the invariants
// they were built from.
struct Fan {
    Invariants inv;
    std::vector<Cone> cones;

    const Cone& cone(ConeId id) const;
};

// Linear forms on Z^{d+g+1}: eta reads the last coordinate (order of f),
// xi_j is the jacobian weight attached to level j.
BigInt xi(const Invariants& inv, int j, const IntVec& k);
BigInt eta(const IntVec& k);

// Primitive integral vector on the i-th edge of rho_j (1-based i, j).
IntVec nu_vector(const Invariants& inv, int i, int j);

Fan build_fan(const Invariants& inv);

// A simplicial cone with edges expressed both in an ambient Z^m and in
// coordinates of the rank-r sublattice the generating function lives in.
struct SimplicialConeGeom {
    std::vector<IntVec> edges_ambient;
    std::vector<IntVec> edges_lattice;        // coordinates w.r.t. lattice_rows
    std::vector<IntVec> lattice_rows;         // basis of the reference lattice in Z^m
};

SimplicialConeGeom geom_in_standard_lattice(const std::vector<IntVec>& edges, int ambient_dim);

// Index of the edge-generated sublattice inside the saturated span lattice.
BigInt multiplicity(const SimplicialConeGeom& geom);
BigInt multiplicity(const Fan& fan, ConeId id);

// Integer points of the half-open parallelepiped { sum a_i v_i : 0 < a_i <= 1 },
// enumerated through Smith-normal-form coset representatives.
std::vector<IntVec> d_theta(const SimplicialConeGeom& geom);
std::vector<IntVec> d_theta(const Fan& fan, ConeId id);

// Lemma-minus data for sigma_j^-: the images under Upsilon_j of the cones
// rho' = rho x R>=0, rho-bar_j and sigma-bar_j^+, realized in Z^{d+g+1}
// relative to the image lattice Upsilon_j(N'_{j-1}).
struct HatDecomposition {
    SimplicialConeGeom rho_prime;
    SimplicialConeGeom rho_bar;
    SimplicialConeGeom sigma_bar_plus;
    IntVec upsilon_last;  // Upsilon_j(0,1)
};
HatDecomposition hat_decomposition(const Invariants& inv, int j);

// Which cone interior (if any) contains the strictly positive vector k.
std::optional<ConeId> classify_vector(const Invariants& inv, const IntVec& k);

struct OrderPoint {
    IntVec k;
    ConeId cone;
};

// All k in the union of cone interiors with eta(k) == eta_target and
// xi_level(k) <= xi_bound, sorted lexicographically.
std::vector<OrderPoint> enumerate_orders(const Invariants& inv, long eta_target, long xi_bound);

// Batched variant covering every eta value from 1 to eta_max at once.
std::vector<std::vector<OrderPoint>> enumerate_orders_upto(const Invariants& inv, long eta_max,
                                                           long xi_bound);

}  // namespace qozeta
