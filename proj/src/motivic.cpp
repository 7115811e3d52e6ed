#include "qozeta/motivic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qozeta {

Atom Atom::mu(long n) {
    if (n < 1) throw std::invalid_argument("mu: order must be positive");
    if (n == 1) return point();
    Atom a;
    a.kind = Kind::Mu;
    a.n = n;
    return a;
}

Atom Atom::curve(long n, long r, long e) {
    if (n < 2 || r < 1 || e < 1 || std::gcd(n, r) != 1)
        throw std::invalid_argument("curve: needs n >= 2, e >= 1, gcd(n, r) = 1");
    Atom a;
    a.kind = Kind::Curve;
    a.n = n;
    a.r = r;
    a.e = e;
    return a;
}

std::string Atom::str() const {
    switch (kind) {
        case Kind::Point: return "1";
        case Kind::Mu: return "[mu_" + std::to_string(n) + "]";
        case Kind::Curve: {
            std::string x = (r == 1) ? "x" : "x^" + std::to_string(r);
            std::string core = "y^" + std::to_string(n) + "-" + x;
            if (e == 1) return "[" + core + "=1]";
            return "[(" + core + ")^" + std::to_string(e) + "=1]";
        }
    }
    return "?";
}

bool RatLT::zero() const { return num.empty(); }

void RatLT::add_num_term(long t_exp, const LaurentL& c) {
    if (c.zero()) return;
    auto [it, inserted] = num.emplace(t_exp, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.zero()) num.erase(it);
    }
}

long RatLT::num_t_degree() const { return num.empty() ? -1 : num.rbegin()->first; }

std::string RatLT::str() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& [m, c] : num) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*T^" << m;
    }
    if (first) os << "0";
    os << ")";
    for (const auto& [a, b] : den) os << " / (1 - L^-" << a << " T^" << b << ")";
    return os.str();
}

namespace {

std::vector<std::pair<long, long>> multiset_union_max(std::vector<std::pair<long, long>> a,
                                                      std::vector<std::pair<long, long>> b) {
    std::map<std::pair<long, long>, int> count;
    std::map<std::pair<long, long>, int> tmp;
    for (const auto& f : a) count[f]++;
    for (const auto& f : b) tmp[f]++;
    for (const auto& [f, c] : tmp) count[f] = std::max(count[f], c);
    std::vector<std::pair<long, long>> out;
    for (const auto& [f, c] : count)
        for (int i = 0; i < c; ++i) out.push_back(f);
    return out;
}

std::vector<std::pair<long, long>> multiset_diff(const std::vector<std::pair<long, long>>& a,
                                                 const std::vector<std::pair<long, long>>& b) {
    std::map<std::pair<long, long>, int> count;
    for (const auto& f : a) count[f]++;
    for (const auto& f : b) {
        auto it = count.find(f);
        if (it == count.end() || it->second == 0)
            throw std::logic_error("multiset_diff: not a subset");
        it->second--;
    }
    std::vector<std::pair<long, long>> out;
    for (const auto& [f, c] : count)
        for (int i = 0; i < c; ++i) out.push_back(f);
    return out;
}

std::map<long, LaurentL> tpoly_mul(const std::map<long, LaurentL>& x,
                                   const std::map<long, LaurentL>& y) {
    std::map<long, LaurentL> out;
    for (const auto& [m1, c1] : x)
        for (const auto& [m2, c2] : y) {
            LaurentL prod = c1 * c2;
            if (prod.zero()) continue;
            auto [it, inserted] = out.emplace(m1 + m2, prod);
            if (!inserted) {
                it->second = it->second + prod;
                if (it->second.zero()) out.erase(it);
            }
        }
    return out;
}

std::map<long, LaurentL> tpoly_add(std::map<long, LaurentL> x, const std::map<long, LaurentL>& y,
                                   bool negate_y) {
    for (const auto& [m, c] : y) {
        LaurentL v = negate_y ? -c : c;
        auto [it, inserted] = x.emplace(m, v);
        if (!inserted) {
            it->second = it->second + v;
            if (it->second.zero()) x.erase(it);
        }
    }
    return x;
}

}  // namespace

std::map<long, LaurentL> expand_factors(const std::vector<std::pair<long, long>>& factors) {
    std::map<long, LaurentL> out;
    out[0] = LaurentL::constant(1);
    for (const auto& [a, b] : factors) {
        std::map<long, LaurentL> f;
        f[0] = LaurentL::constant(1);
        // 1 - L^{-a} T^b
        LaurentL neg = LaurentL::monomial(-a, -1);
        auto [it, inserted] = f.emplace(b, neg);
        if (!inserted) it->second = it->second + neg;
        out = tpoly_mul(out, f);
    }
    return out;
}

RatLT rat_add(const RatLT& x, const RatLT& y) {
    RatLT out;
    out.den = multiset_union_max(x.den, y.den);
    auto nx = tpoly_mul(x.num, expand_factors(multiset_diff(out.den, x.den)));
    auto ny = tpoly_mul(y.num, expand_factors(multiset_diff(out.den, y.den)));
    out.num = tpoly_add(std::move(nx), ny, false);
    return out;
}

RatLT rat_sub(const RatLT& x, const RatLT& y) {
    RatLT out;
    out.den = multiset_union_max(x.den, y.den);
    auto nx = tpoly_mul(x.num, expand_factors(multiset_diff(out.den, x.den)));
    auto ny = tpoly_mul(y.num, expand_factors(multiset_diff(out.den, y.den)));
    out.num = tpoly_add(std::move(nx), ny, true);
    return out;
}

RatLT rat_scale(const RatLT& x, const LaurentL& s) {
    RatLT out;
    out.den = x.den;
    if (s.zero()) return out;
    for (const auto& [m, c] : x.num) {
        LaurentL prod = c * s;
        if (!prod.zero()) out.num[m] = prod;
    }
    return out;
}

bool rat_equal(const RatLT& x, const RatLT& y) {
    auto lhs = tpoly_mul(x.num, expand_factors(y.den));
    auto rhs = tpoly_mul(y.num, expand_factors(x.den));
    return lhs == rhs;
}

void mp_add(MotivicPoly& into, const Atom& a, const LaurentL& c) {
    if (c.zero()) return;
    auto [it, inserted] = into.emplace(a, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.zero()) into.erase(it);
    }
}

MotivicPoly mp_add(const MotivicPoly& x, const MotivicPoly& y) {
    MotivicPoly out = x;
    for (const auto& [a, c] : y) mp_add(out, a, c);
    return out;
}

MotivicPoly mp_scale(const MotivicPoly& x, const LaurentL& s) {
    MotivicPoly out;
    for (const auto& [a, c] : x) {
        LaurentL prod = c * s;
        if (!prod.zero()) out[a] = prod;
    }
    return out;
}

MotivicPoly mp_mul(const MotivicPoly& x, const MotivicPoly& y) {
    MotivicPoly out;
    for (const auto& [ax, cx] : x)
        for (const auto& [ay, cy] : y) {
            Atom prod;
            if (ax.kind == Atom::Kind::Point)
                prod = ay;
            else if (ay.kind == Atom::Kind::Point)
                prod = ax;
            else
                throw std::logic_error("product of two non-point atoms is not defined");
            mp_add(out, prod, cx * cy);
        }
    return out;
}

MotivicPoly mp_truncate(const MotivicPoly& x, long l_precision) {
    MotivicPoly out;
    for (const auto& [a, c] : x) {
        LaurentL t = c.truncated_below(-l_precision);
        if (!t.zero()) out[a] = t;
    }
    return out;
}

namespace {

RatLT s_from_geom(const Invariants& inv, int level, const SimplicialConeGeom& geom) {
    RatLT s;
    for (const auto& v : geom.edges_ambient)
        s.den.emplace_back(to_long(xi(inv, level, v)), to_long(eta(v)));
    std::sort(s.den.begin(), s.den.end());
    for (const auto& pt : d_theta(geom))
        s.add_num_term(to_long(eta(pt)), LaurentL::monomial(-to_long(xi(inv, level, pt))));
    return s;
}

}  // namespace

RatLT s_theta_direct(const Fan& fan, ConeId id) {
    const Cone& c = fan.cone(id);
    if (!c.simplicial) throw std::invalid_argument("s_theta_direct: cone is not simplicial");
    return s_from_geom(fan.inv, c.level,
                       geom_in_standard_lattice(c.edges, fan.inv.d() + fan.inv.g() + 1));
}

RatLT s_theta(const Fan& fan, ConeId id) {
    if (id.kind != ConeKind::SigmaMinus) return s_theta_direct(fan, id);
    const int j = id.level;
    HatDecomposition hat = hat_decomposition(fan.inv, j);
    RatLT s = rat_sub(rat_sub(s_from_geom(fan.inv, j, hat.rho_prime),
                              s_from_geom(fan.inv, j, hat.rho_bar)),
                      s_from_geom(fan.inv, j, hat.sigma_bar_plus));
    return s;
}

LaurentL c_naive(const Invariants&, ConeId id) {
    if (id.kind == ConeKind::Rho) {
        // (L-1)(L-2)
        LaurentL p = LaurentL::l_minus_one_pow(1);
        LaurentL two;
        two.add_term(1, 1);
        two.add_term(0, -2);
        return p * two;
    }
    return LaurentL::l_minus_one_pow(1);
}

Atom c_mono(const Invariants& inv, ConeId id, AtomOrientation orient) {
    const int j = id.level;
    switch (id.kind) {
        case ConeKind::SigmaTop: return Atom::point();
        case ConeKind::Rho: return Atom::curve(inv.n[j], inv.r[j], inv.e[j]);
        case ConeKind::SigmaPlus:
            return Atom::mu((orient == AtomOrientation::Corrected ? inv.r[j] : inv.n[j]) *
                            inv.e[j]);
        case ConeKind::SigmaMinus:
            return Atom::mu((orient == AtomOrientation::Corrected ? inv.n[j] : inv.r[j]) *
                            inv.e[j]);
    }
    throw std::logic_error("unreachable");
}

namespace {

MotivicRat z_sum(const Fan& fan, ZetaVariant variant, AtomOrientation orient) {
    MotivicRat z;
    for (const auto& cone : fan.cones) {
        LaurentL weight = LaurentL::l_minus_one_pow(cone.dim - 1);
        Atom atom = Atom::point();
        if (variant == ZetaVariant::Naive)
            weight = weight * c_naive(fan.inv, cone.id);
        else
            atom = c_mono(fan.inv, cone.id, orient);
        RatLT term = rat_scale(s_theta(fan, cone.id), weight);
        auto [it, inserted] = z.emplace(atom, term);
        if (!inserted) it->second = rat_add(it->second, term);
    }
    return z;
}

}  // namespace

MotivicRat z_naive(const Fan& fan) { return z_sum(fan, ZetaVariant::Naive, AtomOrientation::Corrected); }

MotivicRat z_mono(const Fan& fan, AtomOrientation orient) {
    return z_sum(fan, ZetaVariant::Monodromic, orient);
}

MotivicPoly mu_Hk(const Invariants& inv, const IntVec& k, ZetaVariant variant,
                  AtomOrientation orient) {
    auto id = classify_vector(inv, k);
    if (!id) throw validation_error("mu_Hk: k not realizable as an order vector");
    const int dim = (id->kind == ConeKind::Rho) ? inv.d() : inv.d() + 1;
    LaurentL weight = LaurentL::l_minus_one_pow(dim - 1);
    Atom atom = Atom::point();
    if (variant == ZetaVariant::Naive)
        weight = weight * c_naive(inv, *id);
    else
        atom = c_mono(inv, *id, orient);
    weight = weight * LaurentL::monomial(-to_long(xi(inv, id->level, k)));
    MotivicPoly out;
    mp_add(out, atom, weight);
    return out;
}

MotivicPoly coefficient_of_T(const MotivicRat& z, long n, long l_precision) {
    if (n < 1) throw std::invalid_argument("coefficient_of_T: n must be positive");
    MotivicPoly out;
    for (const auto& [atom, rat] : z) {
        // Split denominator factors by whether they carry a power of T.
        std::vector<std::pair<long, long>> tfac;
        std::vector<long> lfac;
        for (const auto& [a, b] : rat.den) {
            if (b > 0)
                tfac.emplace_back(a, b);
            else
                lfac.push_back(a);  // (1 - L^{-a}), a >= 1
        }
        // T-series DP up to degree n.  All multiplications only lower
        // L-exponents, so truncation below -l_precision is exact.
        std::map<long, LaurentL> cur;
        for (const auto& [m, c] : rat.num)
            if (m <= n) {
                LaurentL t = c.truncated_below(-l_precision);
                if (!t.zero()) cur[m] = t;
            }
        for (const auto& [a, b] : tfac) {
            std::map<long, LaurentL> geo;
            for (long k = 0; k * b <= n; ++k)
                geo[k * b] = LaurentL::monomial(-a * k);
            std::map<long, LaurentL> next;
            for (const auto& [m1, c1] : cur)
                for (const auto& [m2, c2] : geo) {
                    if (m1 + m2 > n) continue;
                    LaurentL prod = (c1 * c2).truncated_below(-l_precision);
                    if (prod.zero()) continue;
                    auto [it, inserted] = next.emplace(m1 + m2, prod);
                    if (!inserted) {
                        it->second = (it->second + prod).truncated_below(-l_precision);
                        if (it->second.zero()) next.erase(it);
                    }
                }
            cur = std::move(next);
        }
        auto it = cur.find(n);
        if (it == cur.end()) continue;
        LaurentL c = it->second;
        for (long a : lfac) {
            if (c.zero()) break;
            // multiply by sum_k L^{-ak} far enough below the cutoff
            long kmax = (l_precision + std::max(0L, c.max_exp())) / a + 1;
            LaurentL geo;
            for (long k = 0; k <= kmax; ++k) geo.add_term(-a * k, 1);
            c = (c * geo).truncated_below(-l_precision);
        }
        mp_add(out, atom, c.truncated_below(-l_precision));
    }
    return out;
}

std::vector<MotivicPoly> oracle_coefficients_upto(const Invariants& inv, long n_max,
                                                  long l_precision, ZetaVariant variant,
                                                  AtomOrientation orient) {
    // Points with xi beyond l_precision + d + 2 cannot touch exponents
    // above the truncation cutoff (coefficients carry L-degree <= d + 2).
    const long xi_bound = l_precision + inv.d() + 3;
    auto buckets = enumerate_orders_upto(inv, n_max, xi_bound);
    std::vector<MotivicPoly> out(n_max + 1);
    for (long n = 1; n <= n_max; ++n) {
        MotivicPoly sum;
        for (const auto& pt : buckets[n]) sum = mp_add(sum, mu_Hk(inv, pt.k, variant, orient));
        out[n] = mp_truncate(sum, l_precision);
    }
    return out;
}

MotivicPoly oracle_coefficient(const Invariants& inv, long n, long l_precision,
                               ZetaVariant variant, AtomOrientation orient) {
    return oracle_coefficients_upto(inv, n, l_precision, variant, orient)[n];
}

LaurentL cone_limit(const Fan& fan, ConeId id) {
    const Invariants& inv = fan.inv;
    const int j = id.level;
    auto signed_power = [](int sign_exp, int pow) {
        LaurentL p = LaurentL::l_minus_one_pow(pow);
        return (sign_exp % 2 != 0) ? -p : p;
    };
    switch (id.kind) {
        case ConeKind::Rho: return signed_power(inv.ell[j], inv.ell[j] - 1);
        case ConeKind::SigmaPlus: return signed_power(inv.ell[j], inv.ell[j] - 1);
        case ConeKind::SigmaMinus: return signed_power(inv.ell[j - 1] + 1, inv.ell[j - 1]);
        case ConeKind::SigmaTop: return signed_power(inv.ell[inv.g()] + 1, inv.ell[inv.g()]);
    }
    throw std::logic_error("unreachable");
}

LaurentL sr_limit(const RatLT& x) {
    if (x.zero()) return LaurentL();
    long t_deg = 0, a_sum = 0;
    int t_factors = 0;
    std::vector<long> lfac;
    for (const auto& [a, b] : x.den) {
        if (b > 0) {
            t_deg += b;
            a_sum += a;
            ++t_factors;
        } else {
            lfac.push_back(a);
        }
    }
    if (x.num_t_degree() > t_deg)
        throw consistency_error("sr_limit: numerator T-degree exceeds denominator T-degree");
    auto it = x.num.find(t_deg);
    LaurentL top = (it == x.num.end()) ? LaurentL() : it->second;
    LaurentL val = top.shifted(a_sum);
    if (t_factors % 2 != 0) val = -val;
    for (long a : lfac) {
        // divide by 1 - L^{-a}
        LaurentL divisor;
        divisor.add_term(0, 1);
        divisor.add_term(-a, -1);
        auto q = val.divided_exact(divisor);
        if (!q) throw consistency_error("sr_limit: limit is not a Laurent polynomial");
        val = *q;
    }
    return val;
}

MotivicPoly milnor_fiber_closed(const Invariants& inv, AtomOrientation orient) {
    const int g = inv.g();
    auto one_minus_l_pow = [](int k) {
        LaurentL p = LaurentL::l_minus_one_pow(k);
        return (k % 2 != 0) ? -p : p;
    };
    MotivicPoly s;
    mp_add(s, Atom::point(), one_minus_l_pow(inv.ell[g]));
    for (int j = 1; j <= g; ++j) {
        LaurentL inner = one_minus_l_pow(inv.ell[j] - 1);
        mp_add(s, c_mono(inv, {ConeKind::Rho, j}, orient), inner);
        mp_add(s, c_mono(inv, {ConeKind::SigmaPlus, j}, orient), inner);
        mp_add(s, c_mono(inv, {ConeKind::SigmaMinus, j}, orient),
               one_minus_l_pow(inv.ell[j - 1]));
    }
    return s;
}

MotivicPoly milnor_fiber_via_limit(const Fan& fan, AtomOrientation orient) {
    MotivicPoly out;
    for (const auto& [atom, rat] : z_mono(fan, orient)) mp_add(out, atom, -sr_limit(rat));
    return out;
}

}  // namespace qozeta
