#include "doctest.h"
#include "qozeta/branch.hpp"
#include "qozeta/verify.hpp"

using namespace qozeta;

namespace {

Rational q(long p, long s = 1) { return Rational(p, s); }

}  // namespace

TEST_CASE("validate accepts the surface example and rejects bad input") {
    CHECK_NOTHROW(validate({{q(1, 2), q(3, 2)}, {q(1, 2), q(7, 4)}}, 2));
    // repeated exponent lies in M_1
    CHECK_THROWS_WITH_AS(validate({{q(1, 2), q(3, 2)}, {q(1, 2), q(3, 2)}}, 2),
                         "lambda_2 lies in M_1", validation_error);
    // componentwise ordering violated in coordinate 1
    CHECK_THROWS_WITH_AS(validate({{q(1), q(1)}, {q(1, 2), q(2)}}, 2),
                         "ordering violated at (2, 1)", validation_error);
    CHECK_THROWS_AS(validate({}, 2), validation_error);
    CHECK_THROWS_AS(validate({{q(0), q(0)}}, 2), validation_error);      // lambda_1 = 0
    CHECK_THROWS_AS(validate({{q(1), q(2)}}, 2), validation_error);      // integral lambda_1
    CHECK_THROWS_AS(validate({{q(1, 2)}}, 2), validation_error);         // ragged
    CHECK_THROWS_AS(validate({{q(-1, 2), q(1)}}, 2), validation_error);  // negative
}

TEST_CASE("derived invariants of the surface example") {
    Invariants inv = derive_invariants(example_paper());
    CHECK(inv.n == std::vector<long>{1, 2, 4});
    CHECK(inv.e == std::vector<long>{8, 4, 1});
    CHECK(inv.gamma[1] == RatVec{q(1, 2), q(3, 2)});
    CHECK(inv.gamma[2] == RatVec{q(1), q(13, 4)});
    CHECK(inv.r == std::vector<long>{0, 1, 1});
    CHECK(inv.ell == std::vector<int>{0, 2, 2});
}

TEST_CASE("derived invariants of the cusp and the smooth germ") {
    Invariants cusp = derive_invariants(example_cusp());
    CHECK(cusp.n == std::vector<long>{1, 2});
    CHECK(cusp.e == std::vector<long>{2, 1});
    CHECK(cusp.gamma[1] == RatVec{q(3, 2)});
    CHECK(cusp.r == std::vector<long>{0, 3});
    CHECK(cusp.ell == std::vector<int>{0, 1});

    Invariants smooth = derive_invariants(example_smooth());
    CHECK(smooth.n == std::vector<long>{1, 2});
    CHECK(smooth.gamma[1] == RatVec{q(1, 2)});
    CHECK(smooth.r == std::vector<long>{0, 1});
    CHECK(smooth.ell == std::vector<int>{0, 1});
}

TEST_CASE("is_normalized") {
    auto paper = is_normalized(example_paper());
    CHECK_FALSE(paper.normalized);
    REQUIRE(paper.permutation.has_value());
    CHECK(*paper.permutation == std::vector<int>{1, 0});
    BranchData swapped = permute_coordinates(example_paper(), *paper.permutation);
    CHECK(is_normalized(swapped).normalized);

    CHECK(is_normalized(example_cusp()).normalized);

    auto smooth = is_normalized(example_smooth());
    CHECK_FALSE(smooth.normalized);  // excluded shape (x, 0, ..., 0), x < 1
    CHECK_FALSE(smooth.permutation.has_value());
}

TEST_CASE("random_branch is deterministic and always valid") {
    BranchData a = random_branch(42, 3, 3, 6);
    BranchData b = random_branch(42, 3, 3, 6);
    CHECK(a.d == b.d);
    CHECK(a.lambda == b.lambda);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        BranchData r = random_branch(seed, 3, 3, 6);
        Invariants inv = derive_invariants(r);  // throws if any invariant fails
        for (int j = 1; j <= inv.g(); ++j) CHECK(std::gcd(inv.r[j], inv.n[j]) == 1);
    }
}

TEST_CASE("coordinate permutation commutes with derivation") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        BranchData b = random_branch(seed, 3, 3, 6);
        if (b.d < 2) continue;
        std::vector<int> perm(b.d);
        for (int i = 0; i < b.d; ++i) perm[i] = (i + 1) % b.d;
        Invariants base = derive_invariants(b);
        Invariants rot = derive_invariants(permute_coordinates(b, perm));
        CHECK(rot.n == base.n);
        CHECK(rot.e == base.e);
        CHECK(rot.r == base.r);
        CHECK(rot.ell == base.ell);
        for (int j = 1; j <= base.g(); ++j)
            for (int i = 0; i < b.d; ++i) CHECK(rot.gamma[j][i] == base.gamma[j][perm[i]]);
    }
}

TEST_CASE("order of gamma_j in M_j / M_{j-1} is n_j") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Invariants inv = derive_invariants(random_branch(seed, 3, 3, 5));
        for (int j = 1; j <= inv.g(); ++j) {
            long order = 0;
            for (long k = 1; k <= inv.n[j]; ++k) {
                RatVec kg(inv.d());
                for (int i = 0; i < inv.d(); ++i) kg[i] = Rational(k) * inv.gamma[j][i];
                if (inv.lattices[j - 1].contains(kg)) {
                    order = k;
                    break;
                }
            }
            CHECK(order == inv.n[j]);
        }
    }
}
