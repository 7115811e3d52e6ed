#include "qozeta/fan.hpp"

#include <algorithm>

namespace qozeta {

std::string ConeId::str() const {
    switch (kind) {
        case ConeKind::Rho: return "rho_" + std::to_string(level);
        case ConeKind::SigmaPlus: return "sigma_" + std::to_string(level) + "^+";
        case ConeKind::SigmaMinus: return "sigma_" + std::to_string(level) + "^-";
        case ConeKind::SigmaTop: return "sigma_" + std::to_string(level);
    }
    return "?";
}

const Cone& Fan::cone(ConeId id) const {
    for (const auto& c : cones)
        if (c.id == id) return c;
    throw std::invalid_argument("no such cone: " + id.str());
}

BigInt xi(const Invariants& inv, int j, const IntVec& k) {
    const int d = inv.d(), g = inv.g();
    if (j < 1 || j > g + 1) throw std::invalid_argument("xi: level out of range");
    if (static_cast<int>(k.size()) != d + g + 1) throw std::invalid_argument("xi: bad length");
    BigInt s = 0;
    for (int i = 0; i < d; ++i) s += k[i];
    for (int i = 1; i <= j - 1; ++i) s += (1 - inv.n[i]) * k[d + i - 1];
    s += k[d + j - 1];
    return s;
}

BigInt eta(const IntVec& k) { return k.back(); }

namespace {

RatVec nu_raw(const Invariants& inv, int i, int j) {
    const int d = inv.d(), g = inv.g();
    RatVec v(d + g + 1, 0);
    v[i - 1] = 1;
    for (int r = 1; r <= j; ++r) v[d + r - 1] = inv.gamma[r][i - 1];
    for (int r = j + 1; r <= g + 1; ++r)
        v[d + r - 1] = Rational(inv.n_product(j, r - 1)) * inv.gamma[j][i - 1];
    return v;
}

IntVec to_int_vec(const RatVec& v, const char* what) {
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_integer(v[i])) throw consistency_error(std::string(what) + ": non-integral entry");
        out[i] = num(v[i]);
    }
    return out;
}

IntVec unit_vec(int len, int pos) {
    IntVec v(len, 0);
    v[pos] = 1;
    return v;
}

std::vector<IntVec> dedup(std::vector<IntVec> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

int rank_of_rows(const std::vector<IntVec>& rows) {
    IntMat m(rows.begin(), rows.end());
    return rank_of(m);
}

}  // namespace

IntVec nu_vector(const Invariants& inv, int i, int j) {
    if (i < 1 || i > inv.d() || j < 1 || j > inv.g())
        throw std::invalid_argument("nu_vector: index out of range");
    const int m = inv.d() + inv.g() + 1;
    return to_int_vec(primitive_on_ray(nu_raw(inv, i, j), LatticeBasis::standard(m)),
                      "nu_vector");
}

Fan build_fan(const Invariants& inv) {
    const int d = inv.d(), g = inv.g(), m = d + g + 1;
    Fan fan;
    fan.inv = inv;

    std::vector<std::vector<IntVec>> rho_edges(g + 1);
    for (int i = 1; i <= d; ++i) rho_edges[0].push_back(unit_vec(m, i - 1));
    for (int j = 1; j <= g; ++j)
        for (int i = 1; i <= d; ++i) rho_edges[j].push_back(nu_vector(inv, i, j));

    auto push = [&](ConeId id, int level, std::vector<IntVec> edges, int expected_dim) {
        Cone c;
        c.id = id;
        c.level = level;
        c.edges = dedup(std::move(edges));
        c.dim = rank_of_rows(c.edges);
        if (c.dim != expected_dim) throw consistency_error("cone dimension mismatch: " + id.str());
        c.simplicial = static_cast<int>(c.edges.size()) == c.dim;
        fan.cones.push_back(std::move(c));
    };

    for (int j = 1; j <= g; ++j) {
        push({ConeKind::Rho, j}, j, rho_edges[j], d);
        auto plus = rho_edges[j];
        plus.push_back(unit_vec(m, d + j - 1));
        push({ConeKind::SigmaPlus, j}, j, std::move(plus), d + 1);
        auto minus = rho_edges[j - 1];
        minus.insert(minus.end(), rho_edges[j].begin(), rho_edges[j].end());
        push({ConeKind::SigmaMinus, j}, j, std::move(minus), d + 1);
    }
    auto top = rho_edges[g];
    top.push_back(unit_vec(m, d + g));
    push({ConeKind::SigmaTop, g + 1}, g + 1, std::move(top), d + 1);
    return fan;
}

SimplicialConeGeom geom_in_standard_lattice(const std::vector<IntVec>& edges, int ambient_dim) {
    SimplicialConeGeom geom;
    geom.edges_ambient = edges;
    geom.edges_lattice = edges;
    for (int i = 0; i < ambient_dim; ++i) geom.lattice_rows.push_back(unit_vec(ambient_dim, i));
    return geom;
}

namespace {

SimplicialConeGeom fan_cone_geom(const Fan& fan, ConeId id) {
    const Cone& c = fan.cone(id);
    if (!c.simplicial) throw std::invalid_argument("use hat decomposition: " + id.str());
    return geom_in_standard_lattice(c.edges, fan.inv.d() + fan.inv.g() + 1);
}

std::vector<BigInt> positive_divisors(const SimplicialConeGeom& geom) {
    IntMat e(geom.edges_lattice.begin(), geom.edges_lattice.end());
    auto divisors = elementary_divisors(e);
    for (const auto& dv : divisors)
        if (dv == 0) throw consistency_error("parallelepiped: degenerate edge set");
    return divisors;
}

}  // namespace

BigInt multiplicity(const SimplicialConeGeom& geom) {
    BigInt m = 1;
    for (const auto& dv : positive_divisors(geom)) m *= dv;
    return m;
}

BigInt multiplicity(const Fan& fan, ConeId id) { return multiplicity(fan_cone_geom(fan, id)); }

std::vector<IntVec> d_theta(const SimplicialConeGeom& geom) {
    IntMat e(geom.edges_lattice.begin(), geom.edges_lattice.end());
    const std::size_t r = e.size();
    SmithResult snf = smith_normal_form(e);
    for (const auto& dv : snf.divisors)
        if (dv == 0) throw consistency_error("parallelepiped: degenerate edge set");

    // Cosets of the edge lattice inside the saturated span lattice are indexed
    // by c in prod Z/d_i; the edge-basis coefficients of a representative are
    // (c_i/d_i) * U, shifted into (0,1].
    std::vector<IntVec> points;
    std::vector<BigInt> c(r, 0);
    const std::size_t lat_dim = geom.edges_lattice[0].size();
    for (;;) {
        RatVec b(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            if (c[i] == 0) continue;
            Rational f(c[i], snf.divisors[i]);
            for (std::size_t t = 0; t < r; ++t) b[t] += f * Rational(snf.u[i][t]);
        }
        RatVec coeff(r);
        for (std::size_t i = 0; i < r; ++i) coeff[i] = b[i] - Rational(ceil_of(b[i])) + 1;
        RatVec pt_lat(lat_dim, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t t = 0; t < lat_dim; ++t)
                pt_lat[t] += coeff[i] * Rational(geom.edges_lattice[i][t]);
        IntVec lat = to_int_vec(pt_lat, "d_theta");
        IntVec ambient(geom.lattice_rows[0].size(), 0);
        for (std::size_t t = 0; t < lat_dim; ++t)
            for (std::size_t s = 0; s < ambient.size(); ++s)
                ambient[s] += lat[t] * geom.lattice_rows[t][s];
        points.push_back(std::move(ambient));

        std::size_t pos = 0;
        while (pos < r) {
            if (++c[pos] < snf.divisors[pos]) break;
            c[pos] = 0;
            ++pos;
        }
        if (pos == r) break;
    }
    std::sort(points.begin(), points.end());
    return points;
}

std::vector<IntVec> d_theta(const Fan& fan, ConeId id) { return d_theta(fan_cone_geom(fan, id)); }

namespace {

// Upsilon_j on Q^{d+1}: (nu, r) |-> nu + sum_{i<j} <nu,gamma_i> eps_{d+i}
//   + (r + n_{j-1}<nu,gamma_{j-1}>) (eps_{d+j} + sum_{i>j} n_j...n_{i-1} eps_{d+i}).
RatVec upsilon_apply(const Invariants& inv, int j, const RatVec& src) {
    const int d = inv.d(), g = inv.g();
    RatVec nu(src.begin(), src.begin() + d);
    Rational r = src[d];
    RatVec out(d + g + 1, 0);
    for (int i = 0; i < d; ++i) out[i] = nu[i];
    for (int i = 1; i <= j - 1; ++i) out[d + i - 1] = dot(nu, inv.gamma[i]);
    Rational base = r;
    if (j >= 2) base += Rational(inv.n[j - 1]) * dot(nu, inv.gamma[j - 1]);
    out[d + j - 1] = base;
    for (int i = j + 1; i <= g + 1; ++i)
        out[d + i - 1] = Rational(inv.n_product(j, i - 1)) * base;
    return out;
}

}  // namespace

HatDecomposition hat_decomposition(const Invariants& inv, int j) {
    const int d = inv.d(), g = inv.g();
    if (j < 1 || j > g) throw std::invalid_argument("hat_decomposition: level out of range");

    // Basis of N'_{j-1} = N_{j-1} x Z inside Q^{d+1}.
    LatticeBasis n_prev = inv.lattices[j - 1].dual();
    RatMat src_rows(d + 1, RatVec(d + 1, 0));
    for (int i = 0; i < d; ++i)
        for (int t = 0; t < d; ++t) src_rows[i][t] = n_prev.rows()[i][t];
    src_rows[d][d] = 1;
    LatticeBasis src_basis(src_rows);

    std::vector<IntVec> lattice_rows;
    for (const auto& row : src_basis.rows())
        lattice_rows.push_back(to_int_vec(upsilon_apply(inv, j, row), "hat lattice"));

    auto realize = [&](const std::vector<RatVec>& ray_dirs) {
        SimplicialConeGeom geom;
        geom.lattice_rows = lattice_rows;
        for (const auto& dir : ray_dirs) {
            RatVec prim = primitive_on_ray(dir, src_basis);
            geom.edges_lattice.push_back(
                to_int_vec(coordinates_in_basis(prim, src_basis), "hat edge coords"));
            geom.edges_ambient.push_back(to_int_vec(upsilon_apply(inv, j, prim), "hat edge"));
        }
        return geom;
    };

    std::vector<RatVec> graph_rays, vertical{RatVec(d + 1, 0)};
    vertical[0][d] = 1;
    for (int i = 0; i < d; ++i) {
        RatVec dir(d + 1, 0);
        dir[i] = 1;
        Rational prev = (j >= 2) ? inv.branch.lambda[j - 2][i] : Rational(0);
        dir[d] = inv.branch.lambda[j - 1][i] - prev;
        graph_rays.push_back(dir);
    }
    std::vector<RatVec> base_rays;
    for (int i = 0; i < d; ++i) {
        RatVec dir(d + 1, 0);
        dir[i] = 1;
        base_rays.push_back(dir);
    }

    HatDecomposition hat;
    auto rho_prime_rays = base_rays;
    rho_prime_rays.push_back(vertical[0]);
    hat.rho_prime = realize(rho_prime_rays);
    hat.rho_bar = realize(graph_rays);
    auto plus_rays = graph_rays;
    plus_rays.push_back(vertical[0]);
    hat.sigma_bar_plus = realize(plus_rays);
    hat.upsilon_last = to_int_vec(upsilon_apply(inv, j, vertical[0]), "upsilon");
    return hat;
}

namespace {

struct Pairings {
    IntVec nu;                 // first d entries of k
    std::vector<Rational> pv;  // pv[i] = <nu, gamma_i>, pv[0] = 0
    std::vector<bool> integral_upto;  // nu in N_l  <=>  pv[1..l] all integral
};

Pairings pairings_for(const Invariants& inv, const IntVec& nu) {
    const int g = inv.g();
    Pairings p;
    p.nu = nu;
    p.pv.assign(g + 1, Rational(0));
    p.integral_upto.assign(g + 1, true);
    for (int i = 1; i <= g; ++i) {
        p.pv[i] = dot(nu, inv.gamma[i]);
        p.integral_upto[i] = p.integral_upto[i - 1] && is_integer(p.pv[i]);
    }
    return p;
}

bool matches_rho(const Invariants& inv, const Pairings& p, const IntVec& k, int j) {
    const int d = inv.d(), g = inv.g();
    if (!p.integral_upto[j]) return false;
    for (int i = 1; i <= j; ++i)
        if (Rational(k[d + i - 1]) != p.pv[i]) return false;
    for (int i = j + 1; i <= g + 1; ++i)
        if (Rational(k[d + i - 1]) != Rational(inv.n_product(j, i - 1)) * p.pv[j]) return false;
    return true;
}

bool matches_sigma_plus(const Invariants& inv, const Pairings& p, const IntVec& k, int j) {
    const int d = inv.d(), g = inv.g();
    if (!p.integral_upto[j - 1]) return false;
    for (int i = 1; i < j; ++i)
        if (Rational(k[d + i - 1]) != p.pv[i]) return false;
    if (Rational(k[d + j - 1]) <= p.pv[j]) return false;
    Rational c = Rational(inv.n[j]) * p.pv[j];
    for (int i = j + 1; i <= g + 1; ++i)
        if (Rational(k[d + i - 1]) != Rational(inv.n_product(j + 1, i - 1)) * c) return false;
    return true;
}

bool matches_sigma_minus(const Invariants& inv, const Pairings& p, const IntVec& k, int j) {
    const int d = inv.d(), g = inv.g();
    if (!p.integral_upto[j - 1]) return false;
    for (int i = 1; i < j; ++i)
        if (Rational(k[d + i - 1]) != p.pv[i]) return false;
    Rational lower = (j >= 2) ? Rational(inv.n[j - 1]) * p.pv[j - 1] : Rational(0);
    Rational mid(k[d + j - 1]);
    if (mid <= lower || mid >= p.pv[j]) return false;
    for (int i = j + 1; i <= g + 1; ++i)
        if (k[d + i - 1] != inv.n_product(j, i - 1) * k[d + j - 1]) return false;
    return true;
}

bool matches_sigma_top(const Invariants& inv, const Pairings& p, const IntVec& k) {
    const int d = inv.d(), g = inv.g();
    if (!p.integral_upto[g]) return false;
    for (int i = 1; i <= g; ++i)
        if (Rational(k[d + i - 1]) != p.pv[i]) return false;
    return Rational(k[d + g]) > Rational(inv.n[g]) * p.pv[g];
}

}  // namespace

std::optional<ConeId> classify_vector(const Invariants& inv, const IntVec& k) {
    const int d = inv.d(), g = inv.g();
    if (static_cast<int>(k.size()) != d + g + 1)
        throw std::invalid_argument("classify_vector: bad length");
    for (const auto& entry : k)
        if (entry <= 0)
            throw validation_error("classify_vector: order vectors have strictly positive entries");
    IntVec nu(k.begin(), k.begin() + d);
    Pairings p = pairings_for(inv, nu);

    std::vector<ConeId> hits;
    for (int j = 1; j <= g; ++j) {
        if (matches_rho(inv, p, k, j)) hits.push_back({ConeKind::Rho, j});
        if (matches_sigma_plus(inv, p, k, j)) hits.push_back({ConeKind::SigmaPlus, j});
        if (matches_sigma_minus(inv, p, k, j)) hits.push_back({ConeKind::SigmaMinus, j});
    }
    if (matches_sigma_top(inv, p, k)) hits.push_back({ConeKind::SigmaTop, g + 1});
    if (hits.size() > 1) throw consistency_error("classify_vector: cone interiors overlap");
    if (hits.empty()) return std::nullopt;
    return hits[0];
}

std::vector<std::vector<OrderPoint>> enumerate_orders_upto(const Invariants& inv, long eta_max,
                                                           long xi_bound) {
    const int d = inv.d(), g = inv.g(), m = d + g + 1;
    if (eta_max < 1 || xi_bound < 1)
        throw std::invalid_argument("enumerate_orders: bounds must be positive");
    std::vector<std::vector<OrderPoint>> buckets(eta_max + 1);

    auto emit = [&](IntVec k, ConeId id) {
        BigInt xv = xi(inv, id.level, k);
        BigInt ev = eta(k);
        if (xv > xi_bound || ev > eta_max || ev < 1) return;
        buckets[to_long(ev)].push_back({std::move(k), id});
    };

    // Every interior point of a level-j cone has xi_j >= sum nu_i, so the
    // base vector nu ranges over the simplex sum nu_i <= xi_bound.
    IntVec nu(d, 1);
    for (;;) {
        BigInt nu_sum = 0;
        for (const auto& x : nu) nu_sum += x;
        if (nu_sum <= xi_bound) {
            Pairings p = pairings_for(inv, nu);
            auto base_k = [&](int upto) {  // k with k_{d+i} = pv[i] for i <= upto
                IntVec k(m, 0);
                for (int i = 0; i < d; ++i) k[i] = nu[i];
                for (int i = 1; i <= upto; ++i) k[d + i - 1] = num(p.pv[i]);
                return k;
            };
            for (int j = 1; j <= g; ++j) {
                if (!p.integral_upto[j - 1]) break;
                const long tail = inv.n_product(j, g);
                if (p.integral_upto[j]) {  // rho_j
                    IntVec k = base_k(j);
                    for (int i = j + 1; i <= g + 1; ++i)
                        k[d + i - 1] = inv.n_product(j, i - 1) * num(p.pv[j]);
                    emit(std::move(k), {ConeKind::Rho, j});
                }
                {  // sigma_j^+ : free coordinate at slot d+j above <nu,gamma_j>
                    Rational c = Rational(inv.n[j]) * p.pv[j];
                    if (is_integer(c) && Rational(tail) * p.pv[j] <= eta_max) {
                        IntVec k = base_k(j - 1);
                        for (int i = j + 1; i <= g + 1; ++i)
                            k[d + i - 1] = num(Rational(inv.n_product(j + 1, i - 1)) * c);
                        BigInt lo = floor_of(p.pv[j]) + 1;
                        for (BigInt v = lo;; ++v) {
                            k[d + j - 1] = v;
                            if (xi(inv, j, k) > xi_bound) break;
                            emit(k, {ConeKind::SigmaPlus, j});
                        }
                    }
                }
                {  // sigma_j^- : slot d+j strictly between the neighbors
                    Rational lower = (j >= 2) ? Rational(inv.n[j - 1]) * p.pv[j - 1] : Rational(0);
                    BigInt lo = floor_of(lower) + 1;
                    BigInt hi = ceil_of(p.pv[j]) - 1;
                    if (hi * tail > eta_max) hi = floor_div(BigInt(eta_max), BigInt(tail));
                    IntVec k = base_k(j - 1);
                    for (BigInt v = lo; v <= hi; ++v) {
                        if (Rational(v) <= lower || Rational(v) >= p.pv[j]) continue;
                        k[d + j - 1] = v;
                        for (int i = j + 1; i <= g + 1; ++i)
                            k[d + i - 1] = inv.n_product(j, i - 1) * v;
                        if (xi(inv, j, k) > xi_bound) continue;
                        emit(k, {ConeKind::SigmaMinus, j});
                    }
                }
            }
            if (p.integral_upto[g]) {  // sigma_{g+1}
                IntVec k = base_k(g);
                BigInt lo = num(Rational(inv.n[g]) * p.pv[g]) + 1;
                for (BigInt v = lo; v <= eta_max; ++v) {
                    k[d + g] = v;
                    if (xi(inv, g + 1, k) > xi_bound) break;
                    emit(k, {ConeKind::SigmaTop, g + 1});
                }
            }
        }
        // Odometer over the nu simplex.
        int pos = 0;
        while (pos < d) {
            nu[pos] += 1;
            BigInt s = 0;
            for (const auto& x : nu) s += x;
            if (s <= xi_bound) break;
            nu[pos] = 1;
            ++pos;
        }
        if (pos == d) break;
    }
    for (auto& bucket : buckets)
        std::sort(bucket.begin(), bucket.end(),
                  [](const OrderPoint& a, const OrderPoint& b) { return a.k < b.k; });
    return buckets;
}

std::vector<OrderPoint> enumerate_orders(const Invariants& inv, long eta_target, long xi_bound) {
    auto buckets = enumerate_orders_upto(inv, eta_target, xi_bound);
    return buckets[eta_target];
}

}  // namespace qozeta
