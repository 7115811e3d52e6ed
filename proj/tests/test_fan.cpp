#include <algorithm>
#include <random>

#include "doctest.h"
#include "qozeta/fan.hpp"
#include "qozeta/verify.hpp"

using namespace qozeta;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Independent parallelepiped oracle: every point sum a_i v_i with integer
// entries has a_i in (1/s)Z for s a nonsingular minor, by Cramer's rule.
std::vector<IntVec> d_theta_bruteforce(const std::vector<IntVec>& edges) {
    const std::size_t r = edges.size(), m = edges[0].size();
    long step = 0;
    std::vector<std::size_t> pick(r);
    auto choose = [&](auto&& self, std::size_t idx, std::size_t from) -> bool {
        if (idx == r) {
            RatMat sub(r, RatVec(r));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) sub[i][j] = Rational(edges[i][pick[j]]);
            Rational dd = determinant(sub);
            if (dd == 0) return false;
            BigInt a = num(dd);
            step = to_long(a < 0 ? BigInt(-a) : a);
            return true;
        }
        for (std::size_t c = from; c < m; ++c) {
            pick[idx] = c;
            if (self(self, idx + 1, c + 1)) return true;
        }
        return false;
    };
    REQUIRE(choose(choose, 0, 0));

    std::vector<IntVec> points;
    std::vector<long> a(r, 1);
    for (;;) {
        RatVec pt(m, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t t = 0; t < m; ++t)
                pt[t] += Rational(a[i], step) * Rational(edges[i][t]);
        if (std::all_of(pt.begin(), pt.end(), [](const Rational& x) { return is_integer(x); })) {
            IntVec out(m);
            for (std::size_t t = 0; t < m; ++t) out[t] = num(pt[t]);
            points.push_back(out);
        }
        std::size_t pos = 0;
        while (pos < r) {
            if (++a[pos] <= step) break;
            a[pos] = 1;
            ++pos;
        }
        if (pos == r) break;
    }
    std::sort(points.begin(), points.end());
    return points;
}

}  // namespace

TEST_CASE("nu vectors of the worked examples") {
    Invariants paper = derive_invariants(example_paper());
    CHECK(nu_vector(paper, 1, 1) == iv({2, 0, 1, 2, 8}));
    CHECK(nu_vector(paper, 2, 2) == iv({0, 4, 6, 13, 52}));
    CHECK(nu_vector(paper, 1, 2) == iv({2, 0, 1, 2, 8}));  // shared edge of rho_1 and rho_2
    CHECK(nu_vector(paper, 2, 1) == iv({0, 2, 3, 6, 24}));

    Invariants cusp = derive_invariants(example_cusp());
    CHECK(nu_vector(cusp, 1, 1) == iv({2, 3, 6}));
}

TEST_CASE("linear forms xi and eta") {
    Invariants paper = derive_invariants(example_paper());
    CHECK(xi(paper, 2, iv({0, 4, 6, 13, 52})) == 11);
    CHECK(eta(iv({0, 4, 6, 13, 52})) == 52);
    // xi_j(eps_{d+j}) = 1, eta = 0
    CHECK(xi(paper, 1, iv({0, 0, 1, 0, 0})) == 1);
    CHECK(eta(iv({0, 0, 1, 0, 0})) == 0);
    CHECK(xi(paper, 2, iv({0, 0, 0, 1, 0})) == 1);

    Invariants cusp = derive_invariants(example_cusp());
    CHECK(xi(cusp, 2, iv({2, 3, 6})) == 5);
    CHECK(xi(cusp, 1, iv({2, 3, 6})) == 5);
}

TEST_CASE("build_fan: cone counts, dedup, simpliciality") {
    Fan paper = build_fan(derive_invariants(example_paper()));
    CHECK(paper.cones.size() == 7);
    const Cone& s2m = paper.cone({ConeKind::SigmaMinus, 2});
    CHECK(s2m.edges == std::vector<IntVec>{iv({0, 2, 3, 6, 24}), iv({0, 4, 6, 13, 52}),
                                           iv({2, 0, 1, 2, 8})});
    CHECK(s2m.simplicial);
    const Cone& s1m = paper.cone({ConeKind::SigmaMinus, 1});
    CHECK(s1m.edges.size() == 4);
    CHECK(s1m.dim == 3);
    CHECK_FALSE(s1m.simplicial);

    Fan cusp = build_fan(derive_invariants(example_cusp()));
    CHECK(cusp.cones.size() == 4);
    for (ConeKind kind : {ConeKind::Rho, ConeKind::SigmaPlus, ConeKind::SigmaMinus})
        CHECK_NOTHROW(cusp.cone({kind, 1}));
    CHECK_NOTHROW(cusp.cone({ConeKind::SigmaTop, 2}));
}

TEST_CASE("multiplicities of the surface example match the published table") {
    Fan fan = build_fan(derive_invariants(example_paper()));
    CHECK(multiplicity(fan, {ConeKind::Rho, 1}) == 2);
    CHECK(multiplicity(fan, {ConeKind::SigmaMinus, 2}) == 2);
    CHECK(multiplicity(fan, {ConeKind::SigmaPlus, 1}) == 4);
    CHECK(multiplicity(fan, {ConeKind::SigmaPlus, 2}) == 4);
    CHECK(multiplicity(fan, {ConeKind::Rho, 2}) == 1);
    CHECK(multiplicity(fan, {ConeKind::SigmaTop, 3}) == 1);
    CHECK_THROWS(multiplicity(fan, {ConeKind::SigmaMinus, 1}));  // not simplicial
}

TEST_CASE("cusp multiplicities and parallelepiped points") {
    Fan fan = build_fan(derive_invariants(example_cusp()));
    CHECK(multiplicity(fan, {ConeKind::SigmaPlus, 1}) == 2);
    CHECK(d_theta(fan, {ConeKind::SigmaPlus, 1}) ==
          std::vector<IntVec>{iv({1, 2, 3}), iv({2, 4, 6})});
    CHECK(d_theta(fan, {ConeKind::Rho, 1}) == std::vector<IntVec>{iv({2, 3, 6})});
    // regular cone: single point, the sum of the edges
    Fan smooth = build_fan(derive_invariants(example_smooth()));
    CHECK(multiplicity(smooth, {ConeKind::Rho, 1}) == 1);
    CHECK(d_theta(smooth, {ConeKind::Rho, 1}) == std::vector<IntVec>{iv({2, 1, 2})});
}

TEST_CASE("d_theta agrees with brute force on random simplicial cones") {
    std::mt19937_64 rng(991);
    std::uniform_int_distribution<int> entry(0, 2), dim(2, 4);
    int done = 0;
    while (done < 50) {
        const int m = dim(rng);
        const int r = 1 + static_cast<int>(rng() % std::min(3u, static_cast<unsigned>(m)));
        std::vector<IntVec> edges(r, IntVec(m));
        for (auto& v : edges) {
            bool nonzero = false;
            for (auto& x : v) {
                x = entry(rng);
                if (x != 0) nonzero = true;
            }
            if (!nonzero) v[0] = 1;
        }
        if (rank_of(IntMat(edges.begin(), edges.end())) != r) continue;
        auto geom = geom_in_standard_lattice(edges, m);
        if (multiplicity(geom) > 16) continue;  // keep the grid oracle cheap
        auto closed = d_theta(geom);
        CHECK(closed == d_theta_bruteforce(edges));
        CHECK(BigInt(closed.size()) == multiplicity(geom));
        ++done;
    }
}

TEST_CASE("hat decomposition data") {
    Invariants cusp = derive_invariants(example_cusp());
    HatDecomposition hat = hat_decomposition(cusp, 1);
    CHECK(hat.upsilon_last == iv({0, 1, 2}));
    CHECK(hat.rho_prime.edges_ambient == std::vector<IntVec>{iv({1, 0, 0}), iv({0, 1, 2})});
    CHECK(hat.rho_bar.edges_ambient == std::vector<IntVec>{iv({2, 3, 6})});
    CHECK(hat.sigma_bar_plus.edges_ambient ==
          std::vector<IntVec>{iv({2, 3, 6}), iv({0, 1, 2})});

    // level-2 hats of the surface example live on rho_1 edges
    Invariants paper = derive_invariants(example_paper());
    HatDecomposition hat2 = hat_decomposition(paper, 2);
    CHECK(hat2.upsilon_last == iv({0, 0, 0, 1, 4}));
    CHECK(hat2.rho_bar.edges_ambient ==
          std::vector<IntVec>{iv({2, 0, 1, 2, 8}), iv({0, 4, 6, 13, 52})});
    std::vector<IntVec> rho1{iv({2, 0, 1, 2, 8}), iv({0, 2, 3, 6, 24}), iv({0, 0, 0, 1, 4})};
    CHECK(hat2.rho_prime.edges_ambient == rho1);
}

TEST_CASE("classify_vector on cusp fixtures") {
    Invariants cusp = derive_invariants(example_cusp());
    CHECK(classify_vector(cusp, iv({2, 3, 6})) == ConeId{ConeKind::Rho, 1});
    CHECK(classify_vector(cusp, iv({1, 1, 2})) == ConeId{ConeKind::SigmaMinus, 1});
    CHECK(classify_vector(cusp, iv({1, 2, 3})) == ConeId{ConeKind::SigmaPlus, 1});
    CHECK(classify_vector(cusp, iv({1, 1, 3})) == std::nullopt);
    CHECK(classify_vector(cusp, iv({2, 3, 7})) == ConeId{ConeKind::SigmaTop, 2});
    CHECK_THROWS_AS(classify_vector(cusp, iv({0, 1, 2})), validation_error);
}

TEST_CASE("enumerate_orders on the cusp") {
    Invariants cusp = derive_invariants(example_cusp());
    auto pts = enumerate_orders(cusp, 2, 4);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].k == iv({1, 1, 2}));
    CHECK(pts[1].k == iv({2, 1, 2}));
    CHECK(pts[2].k == iv({3, 1, 2}));
    for (const auto& p : pts) CHECK(p.cone == ConeId{ConeKind::SigmaMinus, 1});

    CHECK(enumerate_orders(cusp, 1, 50).empty());  // eta minimum over the support is 2

    auto pts3 = enumerate_orders(cusp, 3, 10);
    REQUIRE(pts3.size() == 8);  // (1, m, 3) for m = 2..9
    for (const auto& p : pts3) {
        CHECK(p.cone == ConeId{ConeKind::SigmaPlus, 1});
        CHECK(p.k[0] == 1);
        CHECK(xi(cusp, 1, p.k) <= 10);
    }
}

TEST_CASE("enumerated points classify back to their cone, disjointly") {
    for (std::uint64_t seed : {3ULL, 11ULL, 19ULL}) {
        Invariants inv = derive_invariants(random_branch(seed, 3, 3, 4));
        auto buckets = enumerate_orders_upto(inv, 10, 12);
        std::vector<IntVec> all;
        for (const auto& bucket : buckets)
            for (const auto& pt : bucket) {
                CHECK(classify_vector(inv, pt.k) == pt.cone);
                all.push_back(pt.k);
            }
        std::sort(all.begin(), all.end());
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    }
}

TEST_CASE("enumeration is complete against a raw box scan") {
    Invariants cusp = derive_invariants(example_cusp());
    // every classified vector with eta = n, xi <= P must be enumerated
    const long n = 6, P = 9;
    auto pts = enumerate_orders(cusp, n, P);
    std::vector<IntVec> expect;
    for (long a = 1; a <= 12; ++a)
        for (long b = 1; b <= 12; ++b) {
            IntVec k = iv({a, b, n});
            auto id = classify_vector(cusp, k);
            if (!id) continue;
            if (xi(cusp, id->level, k) <= P) expect.push_back(k);
        }
    std::sort(expect.begin(), expect.end());
    std::vector<IntVec> got;
    for (const auto& p : pts) got.push_back(p.k);
    CHECK(got == expect);
}
