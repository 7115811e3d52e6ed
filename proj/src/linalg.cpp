#include "qozeta/linalg.hpp"

#include <algorithm>

namespace qozeta {

namespace {

IntMat identity(std::size_t n) {
    IntMat id(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

void add_row(IntMat& m, std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += f * m[src][j];
}

void add_col(IntMat& m, std::size_t dst, std::size_t src, const BigInt& f) {
    for (auto& row : m) row[dst] += f * row[src];
}

void swap_col(IntMat& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

BigInt abs_of(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    IntMat s = a, u = identity(m), v = identity(n);
    for (auto& row : s)
        if (row.size() != n) throw std::invalid_argument("smith_normal_form: ragged matrix");

    const std::size_t rmax = std::min(m, n);
    for (std::size_t t = 0; t < rmax; ++t) {
        for (;;) {
            // Pivot: nonzero entry of least absolute value in the trailing block.
            std::size_t pi = t, pj = t;
            bool found = false;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (s[i][j] != 0 &&
                        (!found || abs_of(s[i][j]) < abs_of(s[pi][pj]))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
            if (!found) goto done;
            if (pi != t) { std::swap(s[pi], s[t]); std::swap(u[pi], u[t]); }
            if (pj != t) { swap_col(s, pj, t); swap_col(v, pj, t); }

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (s[i][t] != 0) {
                    BigInt q = floor_div(s[i][t], s[t][t]);
                    add_row(s, i, t, -q);
                    add_row(u, i, t, -q);
                    if (s[i][t] != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (s[t][j] != 0) {
                    BigInt q = floor_div(s[t][j], s[t][t]);
                    add_col(s, j, t, -q);
                    add_col(v, j, t, -q);
                    if (s[t][j] != 0) clean = false;
                }
            if (!clean) continue;

            // Divisibility: every trailing entry must be a multiple of the pivot.
            bool divisible = true;
            for (std::size_t i = t + 1; i < m && divisible; ++i)
                for (std::size_t j = t + 1; j < n && divisible; ++j)
                    if (s[i][j] % s[t][t] != 0) {
                        add_row(s, t, i, 1);
                        add_row(u, t, i, 1);
                        divisible = false;
                    }
            if (divisible) break;
        }
        if (s[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j) s[t][j] = -s[t][j];
            for (std::size_t j = 0; j < m; ++j) u[t][j] = -u[t][j];
        }
    }
done:
    SmithResult res;
    res.divisors.resize(rmax, 0);
    for (std::size_t t = 0; t < rmax; ++t) res.divisors[t] = s[t][t];
    res.u = std::move(u);
    res.v = std::move(v);
    return res;
}

std::vector<BigInt> elementary_divisors(const IntMat& a) {
    return smith_normal_form(a).divisors;
}

IntMat hermite_basis(const IntMat& rows) {
    IntMat h = rows;
    const std::size_t n = h.empty() ? 0 : h[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < n && pivot_row < h.size(); ++col) {
        // Euclid on the column below pivot_row.
        for (;;) {
            std::size_t best = h.size();
            for (std::size_t i = pivot_row; i < h.size(); ++i)
                if (h[i][col] != 0 && (best == h.size() || abs_of(h[i][col]) < abs_of(h[best][col])))
                    best = i;
            if (best == h.size()) break;
            std::swap(h[pivot_row], h[best]);
            bool clean = true;
            for (std::size_t i = pivot_row + 1; i < h.size(); ++i)
                if (h[i][col] != 0) {
                    BigInt q = floor_div(h[i][col], h[pivot_row][col]);
                    add_row(h, i, pivot_row, -q);
                    if (h[i][col] != 0) clean = false;
                }
            if (clean) break;
        }
        if (pivot_row < h.size() && h[pivot_row][col] != 0) {
            if (h[pivot_row][col] < 0)
                for (auto& x : h[pivot_row]) x = -x;
            for (std::size_t i = 0; i < pivot_row; ++i) {
                BigInt q = floor_div(h[i][col], h[pivot_row][col]);
                if (q != 0) add_row(h, i, pivot_row, -q);
            }
            ++pivot_row;
        }
    }
    h.resize(pivot_row);
    return h;
}

Rational determinant(const RatMat& a) {
    RatMat m = a;
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) { std::swap(m[p], m[c]); det = -det; }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

int rank_of(const RatMat& a) {
    RatMat m = a;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    int rank = 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

std::optional<RatVec> solve_left(const RatVec& v, const RatMat& basis) {
    // Gaussian elimination on the transposed system basis^T x^T = v^T.
    const std::size_t k = basis.size();
    const std::size_t n = basis.empty() ? v.size() : basis[0].size();
    if (v.size() != n) throw std::invalid_argument("solve_left: length mismatch");
    RatMat aug(n, RatVec(k + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = basis[j][i];
        aug[i][k] = v[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < n; ++c) {
        std::size_t p = r;
        while (p < n && aug[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(aug[p], aug[r]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || aug[i][c] == 0) continue;
            Rational f = aug[i][c] / aug[r][c];
            for (std::size_t j = c; j <= k; ++j) aug[i][j] -= f * aug[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (aug[i][k] != 0) return std::nullopt;  // inconsistent: v outside the span
    RatVec x(k, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        x[pivot_col[i]] = aug[i][k] / aug[i][pivot_col[i]];
    return x;
}

LatticeBasis::LatticeBasis(RatMat rows) {
    if (rows.empty()) throw std::invalid_argument("lattice basis: empty");
    const std::size_t d = rows[0].size();
    if (rows.size() != d) throw std::invalid_argument("lattice basis: must be square full rank");
    // Clear denominators, Hermite-reduce, scale back.
    BigInt scale = 1;
    for (const auto& row : rows)
        for (const auto& q : row) scale = lcm(scale, den(q));
    IntMat scaled(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) scaled[i][j] = num(rows[i][j] * scale);
    IntMat h = hermite_basis(scaled);
    if (h.size() != d) throw std::invalid_argument("lattice basis: rows not independent");
    canonical_.assign(d, RatVec(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) canonical_[i][j] = Rational(h[i][j], scale);
    rows_ = std::move(rows);
}

LatticeBasis LatticeBasis::standard(int dim) {
    RatMat rows(dim, RatVec(dim, 0));
    for (int i = 0; i < dim; ++i) rows[i][i] = 1;
    return LatticeBasis(std::move(rows));
}

bool LatticeBasis::contains(const RatVec& v) const {
    RatVec x = coordinates_in_basis(v, *this);
    for (const auto& c : x)
        if (!is_integer(c)) return false;
    return true;
}

LatticeBasis LatticeBasis::extend(const std::vector<RatVec>& generators) const {
    RatMat all = canonical_;
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != dim())
            throw std::invalid_argument("lattice extend: dimension mismatch");
        all.push_back(g);
    }
    BigInt scale = 1;
    for (const auto& row : all)
        for (const auto& q : row) scale = lcm(scale, den(q));
    IntMat scaled(all.size(), IntVec(dim()));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (int j = 0; j < dim(); ++j) scaled[i][j] = num(all[i][j] * scale);
    IntMat h = hermite_basis(scaled);
    RatMat out(h.size(), RatVec(dim()));
    for (std::size_t i = 0; i < h.size(); ++i)
        for (int j = 0; j < dim(); ++j) out[i][j] = Rational(h[i][j], scale);
    return LatticeBasis(std::move(out));
}

LatticeBasis LatticeBasis::dual() const {
    // Rows of the dual basis are the columns of rows_^{-1}.
    const int d = dim();
    RatMat aug(d, RatVec(2 * d, 0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) aug[i][j] = rows_[i][j];
        aug[i][d + i] = 1;
    }
    for (int c = 0; c < d; ++c) {
        int p = c;
        while (p < d && aug[p][c] == 0) ++p;
        if (p == d) throw consistency_error("dual: singular basis");
        std::swap(aug[p], aug[c]);
        Rational inv = Rational(1) / aug[c][c];
        for (int j = 0; j < 2 * d; ++j) aug[c][j] *= inv;
        for (int i = 0; i < d; ++i) {
            if (i == c || aug[i][c] == 0) continue;
            Rational f = aug[i][c];
            for (int j = 0; j < 2 * d; ++j) aug[i][j] -= f * aug[c][j];
        }
    }
    RatMat dualRows(d, RatVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) dualRows[j][i] = aug[i][d + j];
    return LatticeBasis(std::move(dualRows));
}

RatVec coordinates_in_basis(const RatVec& v, const LatticeBasis& basis) {
    auto x = solve_left(v, basis.rows());
    if (!x) throw consistency_error("coordinates_in_basis: basis does not span");
    return *x;
}

BigInt group_index(const LatticeBasis& coarse, const LatticeBasis& fine) {
    if (coarse.dim() != fine.dim()) throw std::invalid_argument("group_index: dimension mismatch");
    RatMat coords(coarse.dim());
    for (int i = 0; i < coarse.dim(); ++i) {
        coords[i] = coordinates_in_basis(coarse.rows()[i], fine);
        for (const auto& c : coords[i])
            if (!is_integer(c)) throw validation_error("group_index: not a sublattice");
    }
    Rational d = determinant(coords);
    if (!is_integer(d) || d == 0) throw consistency_error("group_index: degenerate determinant");
    BigInt r = num(d);
    return r < 0 ? BigInt(-r) : r;
}

RatVec primitive_on_ray(const RatVec& direction, const LatticeBasis& l) {
    bool zero = true;
    for (const auto& c : direction)
        if (c != 0) zero = false;
    if (zero) throw validation_error("primitive_on_ray: zero direction");
    RatVec x = coordinates_in_basis(direction, l);
    // Write x_i = a_i / D over a common denominator with g = gcd_i a_i; the
    // rational c with c*x integral form the group (D/g) Z, so the smallest
    // positive choice is c = D/g.
    BigInt d = 1;
    for (const auto& c : x) d = lcm(d, den(c));
    BigInt g = 0;
    for (const auto& c : x) g = gcd(g, num(c * d));
    Rational mult(d, g);
    RatVec out(direction.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = direction[i] * mult;
    return out;
}

BigInt integral_length(const RatVec& v, const LatticeBasis& l) {
    RatVec x = coordinates_in_basis(v, l);
    BigInt g = 0;
    for (const auto& c : x) {
        if (!is_integer(c)) throw validation_error("integral_length: vector not in lattice");
        g = gcd(g, num(c));
    }
    if (g == 0) throw validation_error("integral_length: zero vector");
    return g;
}

}  // namespace qozeta
