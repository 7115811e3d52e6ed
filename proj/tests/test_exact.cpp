#include <random>

#include "doctest.h"
#include "qozeta/linalg.hpp"

using namespace qozeta;

namespace {

RatVec rv(std::initializer_list<Rational> xs) { return RatVec(xs); }

LatticeBasis basis(std::initializer_list<RatVec> rows) { return LatticeBasis(RatMat(rows)); }

IntMat im(std::initializer_list<IntVec> rows) { return IntMat(rows); }

}  // namespace

TEST_CASE("smith normal form on small matrices") {
    CHECK(elementary_divisors(im({{1, 0}, {0, 1}})) == std::vector<BigInt>{1, 1});
    CHECK(elementary_divisors(im({{2, 0}, {0, 3}})) == std::vector<BigInt>{1, 6});
    CHECK(elementary_divisors(im({{2, 4}, {6, 8}})) == std::vector<BigInt>{2, 4});
}

TEST_CASE("smith transforms diagonalize and divisors multiply to |det|") {
    std::mt19937_64 rng(20240901);
    std::uniform_int_distribution<int> entry(-6, 6), size(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = size(rng), cols = size(rng);
        IntMat a(rows, IntVec(cols));
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        SmithResult snf = smith_normal_form(a);
        // u * a * v must be the diagonal of divisors
        IntMat ua(rows, IntVec(cols, 0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                for (int t = 0; t < rows; ++t) ua[i][j] += snf.u[i][t] * a[t][j];
        IntMat uav(rows, IntVec(cols, 0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                for (int t = 0; t < cols; ++t) uav[i][j] += ua[i][t] * snf.v[t][j];
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                CHECK(uav[i][j] == (i == j && i < static_cast<int>(snf.divisors.size())
                                        ? snf.divisors[i]
                                        : BigInt(0)));
        for (std::size_t t = 0; t + 1 < snf.divisors.size(); ++t)
            if (snf.divisors[t + 1] != 0)
                CHECK(snf.divisors[t + 1] % (snf.divisors[t] == 0 ? BigInt(1) : snf.divisors[t]) ==
                      0);
        if (rows == cols) {
            RatMat q(rows, RatVec(cols));
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) q[i][j] = Rational(a[i][j]);
            Rational det = determinant(q);
            BigInt prod = 1;
            for (const auto& dv : snf.divisors) prod *= dv;
            BigInt expect = num(det) < 0 ? BigInt(-num(det)) : num(det);
            CHECK(prod == expect);
        }
    }
}

TEST_CASE("group_index on nested lattices") {
    LatticeBasis z2 = LatticeBasis::standard(2);
    CHECK(group_index(z2, z2) == 1);
    LatticeBasis m1 = z2.extend({rv({Rational(1, 2), Rational(3, 2)})});
    CHECK(group_index(z2, m1) == 2);
    LatticeBasis m2 = m1.extend({rv({Rational(1, 2), Rational(7, 4)})});
    CHECK(group_index(m1, m2) == 4);
    CHECK_THROWS_AS(group_index(m1, z2), validation_error);  // containment violated
}

TEST_CASE("group_index is multiplicative over nested lattices") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> entry(-3, 3), diag(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        // fine lattice C, then B = T1 * C, A = T2 * B with integer
        // upper-triangular transforms of positive diagonal.
        RatMat c(d, RatVec(d, 0));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) c[i][j] = Rational(entry(rng), 1 + (i + j) % 3);
            c[i][i] += Rational(7);  // keep rows independent
        }
        auto apply = [&](const RatMat& rows) {
            RatMat out(d, RatVec(d, 0));
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    Rational f = (i == j) ? Rational(diag(rng)) : Rational(i < j ? entry(rng) : 0);
                    for (int t = 0; t < d; ++t) out[i][t] += f * rows[j][t];
                }
            }
            return out;
        };
        LatticeBasis fine{c};
        RatMat mid_rows = apply(fine.rows());
        LatticeBasis mid{mid_rows};
        LatticeBasis coarse{apply(mid.rows())};
        CHECK(group_index(coarse, fine) == group_index(coarse, mid) * group_index(mid, fine));
    }
}

TEST_CASE("coordinates_in_basis") {
    LatticeBasis b = basis({rv({Rational(1, 2), Rational(3, 2)}), rv({Rational(0), Rational(1)})});
    CHECK(coordinates_in_basis(rv({Rational(4), Rational(13)}), b) ==
          rv({Rational(8), Rational(1)}));
    CHECK(coordinates_in_basis(rv({Rational(1, 2), Rational(3, 2)}), b) ==
          rv({Rational(1), Rational(0)}));
    CHECK(coordinates_in_basis(rv({Rational(1), Rational(3)}), LatticeBasis::standard(2)) ==
          rv({Rational(1), Rational(3)}));
}

TEST_CASE("primitive_on_ray") {
    LatticeBasis z3 = LatticeBasis::standard(3);
    CHECK(primitive_on_ray(rv({Rational(1), Rational(3, 2), Rational(3)}), z3) ==
          rv({Rational(2), Rational(3), Rational(6)}));
    CHECK(primitive_on_ray(rv({Rational(0), Rational(0), Rational(1)}), z3) ==
          rv({Rational(0), Rational(0), Rational(1)}));
    // cusp: N_1 = 2Z in Q^1
    LatticeBasis n1 = basis({rv({Rational(2)})});
    CHECK(primitive_on_ray(rv({Rational(1)}), n1) == rv({Rational(2)}));
    CHECK_THROWS_AS(primitive_on_ray(rv({Rational(0)}), n1), validation_error);
}

TEST_CASE("primitive_on_ray output is primitive in the lattice") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> entry(-4, 4), q(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        RatMat rows(d, RatVec(d, 0));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) rows[i][j] = Rational(entry(rng), q(rng));
            rows[i][i] += 5;
        }
        LatticeBasis l{rows};
        RatVec dir(d, 0);
        bool zero = true;
        for (int i = 0; i < d; ++i) {
            dir[i] = Rational(entry(rng), q(rng));
            if (dir[i] != 0) zero = false;
        }
        if (zero) dir[0] = 1;
        RatVec p = primitive_on_ray(dir, l);
        CHECK(l.contains(p));
        for (int k = 2; k <= 20; ++k) {
            RatVec frac(d);
            for (int i = 0; i < d; ++i) frac[i] = p[i] / k;
            CHECK_FALSE(l.contains(frac));
        }
    }
}

TEST_CASE("integral_length") {
    CHECK(integral_length(rv({Rational(1), Rational(3)}), LatticeBasis::standard(2)) == 1);
    CHECK(integral_length(rv({Rational(3)}), LatticeBasis::standard(1)) == 3);
    LatticeBasis m1 = basis({rv({Rational(1, 2), Rational(3, 2)}), rv({Rational(0), Rational(1)})});
    CHECK(integral_length(rv({Rational(4), Rational(13)}), m1) == 1);
    CHECK_THROWS_AS(integral_length(rv({Rational(1, 3), Rational(0)}), m1), validation_error);
}

TEST_CASE("lattice basis canonical form and dual") {
    LatticeBasis a = basis({rv({Rational(1, 2), Rational(3, 2)}), rv({Rational(0), Rational(1)})});
    LatticeBasis b =
        basis({rv({Rational(1, 2), Rational(1, 2)}), rv({Rational(0), Rational(1)})});
    CHECK(a == b);  // same lattice, different generators
    LatticeBasis dual = a.dual();
    for (const auto& w : dual.rows())
        for (const auto& m : a.rows()) CHECK(is_integer(dot(w, m)));
    CHECK(group_index(LatticeBasis::standard(2), a) * 1 == 2);
    // dual of M_1 for the cusp is 2Z
    LatticeBasis m1 = basis({rv({Rational(1, 2)})});
    CHECK(m1.dual() == basis({rv({Rational(2)})}));
}
