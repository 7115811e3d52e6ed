#include "qozeta/ztop.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qozeta {

namespace {

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Rational> poly_linear(const BigInt& a, const BigInt& aa) {
    return {Rational(a), Rational(aa)};
}

void poly_trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational poly_eval(const std::vector<Rational>& p, const Rational& s) {
    Rational v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * s + *it;
    return v;
}

// Exact division of p by (a + A s); p(-a/A) must vanish.
std::vector<Rational> poly_div_linear(const std::vector<Rational>& p, const BigInt& a,
                                      const BigInt& aa) {
    std::vector<Rational> q(p.size() - 1, Rational(0));
    Rational carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
        Rational coeff = (p[i] - carry) / Rational(aa);
        q[i - 1] = coeff;
        carry = coeff * Rational(a);
    }
    return q;
}

std::vector<std::pair<BigInt, BigInt>> den_union_max(std::vector<std::pair<BigInt, BigInt>> a,
                                                     std::vector<std::pair<BigInt, BigInt>> b) {
    std::map<std::pair<BigInt, BigInt>, int> count, tmp;
    for (const auto& f : a) count[f]++;
    for (const auto& f : b) tmp[f]++;
    for (const auto& [f, c] : tmp) count[f] = std::max(count[f], c);
    std::vector<std::pair<BigInt, BigInt>> out;
    for (const auto& [f, c] : count)
        for (int i = 0; i < c; ++i) out.push_back(f);
    return out;
}

std::vector<std::pair<BigInt, BigInt>> den_diff(const std::vector<std::pair<BigInt, BigInt>>& a,
                                                const std::vector<std::pair<BigInt, BigInt>>& b) {
    std::map<std::pair<BigInt, BigInt>, int> count;
    for (const auto& f : a) count[f]++;
    for (const auto& f : b) {
        auto it = count.find(f);
        if (it == count.end() || it->second == 0)
            throw std::logic_error("den_diff: not a subset");
        it->second--;
    }
    std::vector<std::pair<BigInt, BigInt>> out;
    for (const auto& [f, c] : count)
        for (int i = 0; i < c; ++i) out.push_back(f);
    return out;
}

}  // namespace

RatS RatS::constant(const Rational& c) {
    RatS r;
    if (c != 0) r.num = {c};
    return r;
}

bool RatS::zero() const { return num.empty(); }

void RatS::reduce() {
    poly_trim(num);
    if (num.empty()) {
        den.clear();
        return;
    }
    std::vector<std::pair<BigInt, BigInt>> kept;
    for (auto& [a, aa] : den) {
        if (aa == 0) {
            // constant factor
            for (auto& c : num) c /= Rational(a);
            continue;
        }
        Rational root = Rational(-a, aa);
        if (num.size() >= 2 && poly_eval(num, root) == 0)
            num = poly_div_linear(num, a, aa);
        else
            kept.emplace_back(a, aa);
    }
    den = std::move(kept);
    std::sort(den.begin(), den.end());
}

Rational RatS::eval(const Rational& s) const {
    Rational v = poly_eval(num, s);
    for (const auto& [a, aa] : den) {
        Rational f = Rational(a) + Rational(aa) * s;
        if (f == 0) throw std::invalid_argument("RatS::eval at a pole");
        v /= f;
    }
    return v;
}

std::string RatS::str() const {
    auto poly_str = [](const std::vector<Rational>& p) {
        if (p.empty()) return std::string("0");
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            Rational c = p[i];
            if (!first) {
                os << (c > 0 ? "+" : "-");
                if (c < 0) c = -c;
            }
            first = false;
            bool unit = (c == 1 && i > 0);
            if (!unit) os << format_rational(c);
            if (i >= 1) os << "s";
            if (i >= 2) os << "^" << i;
        }
        if (first) os << "0";
        return os.str();
    };
    std::ostringstream os;
    std::string n = poly_str(num);
    int nterms = 0;
    for (const auto& c : num)
        if (c != 0) ++nterms;
    if (den.empty()) return n;
    if (nterms > 1) n = "(" + n + ")";
    std::string d;
    for (const auto& [a, aa] : den) {
        d += "(" + a.str();
        if (aa != 0) {
            d += "+";
            if (aa != 1) d += aa.str();
            d += "s";
        }
        d += ")";
    }
    if (den.size() > 1) d = "(" + d + ")";
    os << n << "/" << d;
    return os.str();
}

RatS rats_add(const RatS& x, const RatS& y) {
    RatS out;
    out.den = den_union_max(x.den, y.den);
    std::vector<Rational> nx = x.num, ny = y.num;
    for (const auto& [a, aa] : den_diff(out.den, x.den)) nx = poly_mul(nx, poly_linear(a, aa));
    for (const auto& [a, aa] : den_diff(out.den, y.den)) ny = poly_mul(ny, poly_linear(a, aa));
    out.num.assign(std::max(nx.size(), ny.size()), Rational(0));
    for (std::size_t i = 0; i < nx.size(); ++i) out.num[i] += nx[i];
    for (std::size_t i = 0; i < ny.size(); ++i) out.num[i] += ny[i];
    out.reduce();
    return out;
}

RatS rats_sub(const RatS& x, const RatS& y) {
    RatS neg = y;
    for (auto& c : neg.num) c = -c;
    return rats_add(x, neg);
}

bool rats_equal(const RatS& x, const RatS& y) {
    std::vector<Rational> lhs = x.num, rhs = y.num;
    for (const auto& [a, aa] : y.den) lhs = poly_mul(lhs, poly_linear(a, aa));
    for (const auto& [a, aa] : x.den) rhs = poly_mul(rhs, poly_linear(a, aa));
    poly_trim(lhs);
    poly_trim(rhs);
    return lhs == rhs;
}

RatS j_theta(const Fan& fan, ConeId id) {
    const Invariants& inv = fan.inv;
    if (id.kind == ConeKind::SigmaMinus) {
        const int j = id.level;
        RatS prev = (j == 1) ? RatS::constant(1) : j_theta(fan, {ConeKind::Rho, j - 1});
        RatS diff = rats_sub(prev, j_theta(fan, {ConeKind::SigmaPlus, j}));
        diff.den.emplace_back(BigInt(1), BigInt(inv.n_product(j, inv.g())));
        diff.reduce();
        return diff;
    }
    const Cone& cone = fan.cone(id);
    RatS out = RatS::constant(Rational(multiplicity(fan, id)));
    for (const auto& v : cone.edges) out.den.emplace_back(xi(inv, cone.level, v), eta(v));
    out.reduce();
    return out;
}

RatS z_top(const Fan& fan) {
    const int g = fan.inv.g();
    RatS total = j_theta(fan, {ConeKind::SigmaTop, g + 1});
    for (int j = 1; j <= g; ++j) {
        total = rats_add(total, j_theta(fan, {ConeKind::SigmaPlus, j}));
        total = rats_sub(total, j_theta(fan, {ConeKind::Rho, j}));
        total = rats_add(total, j_theta(fan, {ConeKind::SigmaMinus, j}));
    }
    total.reduce();
    return total;
}

Rational chi_top_of_ratlt(const RatLT& x, long s0) {
    if (s0 < 1) throw std::invalid_argument("chi_top: sample point must be a positive integer");
    if (x.zero()) return 0;
    // Substitute T = L^{-s0}: factors become 1 - L^{-c}, c = a + s0 b >= 1.
    std::vector<long> cs;
    for (const auto& [a, b] : x.den) {
        long c = a + s0 * b;
        if (c < 1) throw consistency_error("chi_top: non-positive factor exponent");
        cs.push_back(c);
    }
    const int f = static_cast<int>(cs.size());
    // L = 1 + eps; work modulo eps^{f+1}.  The numerator times prod L^{c_i}
    // must vanish to order f, the denominator prod (L^{c_i} - 1) has exact
    // order f with leading coefficient prod c_i.  The coefficient of eps^k
    // in (1+eps)^p is ff_k(p)/k!, so the k! division can wait until the end
    // and the accumulation stays in the integers.
    const int order = f + 1;
    long shift = 0;
    for (long c : cs) shift += c;
    std::vector<BigInt> acc(order, 0);
    std::vector<BigInt> ff(order);
    for (const auto& [t_exp, coeff] : x.num)
        for (const auto& [l_exp, c] : coeff.terms()) {
            BigInt p = BigInt(l_exp) - BigInt(s0) * t_exp + shift;
            ff[0] = 1;
            for (int k = 1; k < order; ++k) ff[k] = ff[k - 1] * (p - (k - 1));
            for (int k = 0; k < order; ++k) acc[k] += c * ff[k];
        }
    for (int k = 0; k < f; ++k)
        if (acc[k] != 0)
            throw consistency_error("chi_top: unexpected pole at L = 1");
    BigInt lead = 1;
    for (int k = 2; k <= f; ++k) lead *= k;  // f!
    for (long c : cs) lead *= c;
    return Rational(acc[f], lead);
}

Rational chi_top_oracle(const Fan& fan, long s0) {
    MotivicRat zn = z_naive(fan);
    Rational total = 0;
    for (const auto& [atom, rat] : zn) {
        if (atom != Atom::point())
            throw consistency_error("chi_top: naive zeta must be atom-free");
        total += chi_top_of_ratlt(rat, s0);
    }
    return total;
}

std::vector<std::pair<int, int>> special_vectors(const Invariants& inv) {
    const int d = inv.d(), g = inv.g();
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= g; ++j) {
        auto satisfies = [&](int i) {
            for (int jp = 1; jp < j; ++jp)
                if (inv.branch.lambda[jp - 1][i - 1] != 0) return false;
            return inv.branch.lambda[j - 1][i - 1] == Rational(1, inv.n[j]);
        };
        for (int i = 1; i <= d; ++i) {
            bool unique = satisfies(i);
            for (int ip = 1; ip <= d && unique; ++ip)
                if (ip != i && satisfies(ip)) unique = false;
            if (!unique) continue;
            if (j < g && inv.branch.lambda[j][i - 1] <= inv.branch.lambda[j - 1][i - 1]) continue;
            out.emplace_back(i, j);
            // The pole data of a special edge is pinned by the definition.
            IntVec nu = nu_vector(inv, i, j);
            if (xi(inv, j, nu) != inv.n[j] + 1 || eta(nu) != inv.n_product(j, g))
                throw consistency_error("special vector with unexpected (xi, eta)");
        }
    }
    return out;
}

std::vector<std::pair<BigInt, BigInt>> candidate_poles(const Fan& fan) {
    const Invariants& inv = fan.inv;
    const int d = inv.d(), g = inv.g();
    auto special = special_vectors(inv);
    auto is_special = [&](int i, int j) {
        return std::find(special.begin(), special.end(), std::make_pair(i, j)) != special.end();
    };
    std::set<std::pair<BigInt, BigInt>> repeat;
    std::vector<std::pair<BigInt, BigInt>> out;
    std::vector<std::pair<BigInt, BigInt>> with_multiplicity;
    auto push = [&](BigInt a, BigInt aa) {
        with_multiplicity.emplace_back(a, aa);
        if (repeat.insert({a, aa}).second) out.emplace_back(a, aa);
    };
    push(1, 1);
    for (int j = 1; j <= g; ++j)
        for (int i = 1; i <= d; ++i) {
            if (is_special(i, j)) continue;
            IntVec nu = nu_vector(inv, i, j);
            if (eta(nu) == 0) continue;  // nu = eps_i contributes no pole
            push(xi(inv, j, nu), eta(nu));
        }
    std::sort(out.begin(), out.end());

    // Divisibility: the reduced z_top denominator must divide the product
    // over all non-special edges.  Distinct edges may carry equal pole data,
    // so the check runs over the multiset, not the deduplicated list.
    RatS zt = z_top(fan);
    std::vector<bool> used(with_multiplicity.size(), false);
    for (const auto& [a, aa] : zt.den) {
        bool matched = false;
        for (std::size_t t = 0; t < with_multiplicity.size() && !matched; ++t) {
            if (used[t]) continue;
            if (with_multiplicity[t].first * aa == with_multiplicity[t].second * a &&
                !(aa == 0 && with_multiplicity[t].second != 0)) {  // proportional factors
                used[t] = true;
                matched = true;
            }
        }
        if (!matched)
            throw consistency_error("z_top denominator factor outside the candidate-pole set");
    }
    return out;
}

NewtonData newton_data(const Invariants& inv) {
    const int d = inv.d(), g = inv.g();
    NewtonData nd;
    nd.pq.assign(g, std::vector<std::pair<long, long>>(d));
    std::vector<BigInt> p_product(d, 1);
    for (int j = 1; j <= g; ++j) {
        for (int i = 0; i < d; ++i) {
            Rational prev = (j >= 2) ? inv.branch.lambda[j - 2][i] : Rational(0);
            Rational coord = (inv.branch.lambda[j - 1][i] - prev) * Rational(p_product[i]);
            long p = to_long(den(coord));
            long q = to_long(num(coord));
            nd.pq[j - 1][i] = {p, q};
            p_product[i] *= p;
        }
    }
    return nd;
}

namespace {

// (B, b) tables from the Newton-map recursion, indexed [j-1][i-1].
std::vector<std::vector<std::pair<BigInt, BigInt>>> bb_table(const Invariants& inv) {
    const int d = inv.d(), g = inv.g();
    NewtonData nd = newton_data(inv);
    std::vector<std::vector<std::pair<BigInt, BigInt>>> bb(
        g, std::vector<std::pair<BigInt, BigInt>>(d));
    for (int i = 0; i < d; ++i) {
        auto [p1, q1] = nd.pq[0][i];
        bb[0][i] = {BigInt(inv.e[0]) * q1, BigInt(p1) + q1};
        for (int j = 2; j <= g; ++j) {
            auto [p, q] = nd.pq[j - 1][i];
            bb[j - 1][i] = {BigInt(p) * bb[j - 2][i].first + BigInt(inv.e[j - 1]) * q,
                            BigInt(p) * bb[j - 2][i].second + q};
        }
    }
    return bb;
}

}  // namespace

CPList cp_list(const Invariants& inv) {
    CPList out;
    out.emplace_back(1, 1);
    auto bb = bb_table(inv);
    for (int j = 1; j <= inv.g(); ++j)
        for (int i = 1; i <= inv.d(); ++i) out.push_back(bb[j - 1][i - 1]);
    std::sort(out.begin(), out.end());
    return out;
}

CPList scp_list(const Invariants& inv) {
    auto special = special_vectors(inv);
    auto is_special = [&](int i, int j) {
        return std::find(special.begin(), special.end(), std::make_pair(i, j)) != special.end();
    };
    CPList out;
    out.emplace_back(1, 1);
    auto bb = bb_table(inv);
    for (int j = 1; j <= inv.g(); ++j)
        for (int i = 1; i <= inv.d(); ++i)
            if (!is_special(i, j)) out.push_back(bb[j - 1][i - 1]);
    std::sort(out.begin(), out.end());
    return out;
}

bool check_cp_equals_fan(const Invariants& inv) {
    auto bb = bb_table(inv);
    for (int j = 1; j <= inv.g(); ++j)
        for (int i = 1; i <= inv.d(); ++i) {
            IntVec nu = nu_vector(inv, i, j);
            if (bb[j - 1][i - 1].first != eta(nu)) return false;
            if (bb[j - 1][i - 1].second != xi(inv, j, nu)) return false;
        }
    return true;
}

RatLT lc_j(const Fan& fan, int j) {
    const Invariants& inv = fan.inv;
    const int d = inv.d(), g = inv.g();
    if (j < 1 || j > g) throw std::invalid_argument("lc_j: level out of range");
    ConeId next = (j == g) ? ConeId{ConeKind::SigmaTop, g + 1} : ConeId{ConeKind::SigmaMinus, j + 1};
    RatLT sum = rat_add(rat_add(s_theta(fan, {ConeKind::SigmaPlus, j}),
                                s_theta(fan, {ConeKind::SigmaMinus, j})),
                        s_theta(fan, next));
    RatLT out = rat_scale(sum, LaurentL::l_minus_one_pow(d + 1));
    LaurentL lm2 = LaurentL::l_minus_one_pow(d);
    LaurentL two;
    two.add_term(1, 1);
    two.add_term(0, -2);
    out = rat_add(out, rat_scale(s_theta(fan, {ConeKind::Rho, j}), lm2 * two));
    return out;
}

bool lc_identity_check(const Fan& fan, int j) {
    const Invariants& inv = fan.inv;
    const int g = inv.g();
    auto special = special_vectors(inv);
    bool has = std::any_of(special.begin(), special.end(),
                           [&](const auto& p) { return p.second == j; });
    if (!has) throw validation_error("lc_identity_check: not applicable (no special vector)");

    const std::pair<long, long> phi{inv.n[j] + 1, inv.n_product(j, inv.g())};
    RatLT lc = lc_j(fan, j);
    const int in_den = static_cast<int>(std::count(lc.den.begin(), lc.den.end(), phi));
    if (in_den == 0) throw consistency_error("lc_identity_check: special factor not present");

    // Distinct non-special edges may carry the same pole data; their factors
    // legitimately remain.  Only the copy of the special edge must cancel,
    // so the residual pole order is bounded by the count of such edges.
    const IntVec special_edge = [&] {
        for (const auto& [i, jj] : special_vectors(inv))
            if (jj == j) return nu_vector(inv, i, j);
        throw std::logic_error("unreachable");
    }();
    std::set<IntVec> others;
    ConeId next = (j == g) ? ConeId{ConeKind::SigmaTop, g + 1} : ConeId{ConeKind::SigmaMinus, j + 1};
    for (ConeId id : {ConeId{ConeKind::Rho, j}, ConeId{ConeKind::SigmaPlus, j},
                      ConeId{ConeKind::SigmaMinus, j}, next}) {
        const Cone& cone = fan.cone(id);
        for (const auto& v : cone.edges)
            if (v != special_edge && xi(inv, cone.level, v) == phi.first &&
                eta(v) == phi.second)
                others.insert(v);
    }
    const int allowed = static_cast<int>(others.size());

    // Divide the numerator by (1 - L^{-a} T^b) while the division is exact;
    // division in T over the Laurent ring in L (the leading coefficient is
    // a unit).
    const long b = phi.second;
    const LaurentL lead = LaurentL::monomial(-phi.first, -1);  // coefficient of T^b
    int cancelled = 0;
    for (; cancelled < in_den; ++cancelled) {
        std::map<long, LaurentL> quot;
        std::map<long, LaurentL> rem = lc.num;
        while (!rem.empty() && rem.rbegin()->first >= b) {
            long m = rem.rbegin()->first;
            LaurentL c = rem.rbegin()->second;
            LaurentL qc = c * LaurentL::monomial(phi.first, -1);  // c / lead
            quot[m - b] = qc;
            // rem -= quotient-term * (1 - L^{-a} T^b)
            auto sub_at = [&](long t_exp, const LaurentL& v) {
                auto [it, inserted] = rem.emplace(t_exp, -v);
                if (!inserted) {
                    it->second = it->second - v;
                    if (it->second.zero()) rem.erase(it);
                }
            };
            sub_at(m - b, qc);
            sub_at(m, qc * lead);
        }
        if (!rem.empty()) break;
        lc.num = std::move(quot);
    }
    return in_den - cancelled <= allowed;
}

}  // namespace qozeta
