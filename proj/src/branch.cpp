#include "qozeta/branch.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace qozeta {

namespace {

bool leq_componentwise(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace

BranchData validate(const std::vector<RatVec>& raw, int d) {
    if (raw.empty()) throw validation_error("empty exponent list");
    if (d < 1) throw validation_error("dimension d must be at least 1");
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (static_cast<int>(raw[j].size()) != d)
            throw validation_error("exponent " + std::to_string(j + 1) + " has wrong length");
        for (const auto& q : raw[j])
            if (q < 0) throw validation_error("negative exponent entry");
    }
    if (is_zero(raw[0])) throw validation_error("lambda_1 must be nonzero");
    for (std::size_t j = 0; j + 1 < raw.size(); ++j)
        for (int i = 0; i < d; ++i)
            if (raw[j][i] > raw[j + 1][i])
                throw validation_error("ordering violated at (" + std::to_string(j + 2) + ", " +
                                       std::to_string(i + 1) + ")");
    LatticeBasis m = LatticeBasis::standard(d);
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (m.contains(raw[j]))
            throw validation_error("lambda_" + std::to_string(j + 1) +
                                   " lies in M_" + std::to_string(j));
        m = m.extend({raw[j]});
    }
    return BranchData{d, raw};
}

Invariants derive_invariants(const BranchData& b) {
    const int d = b.d, g = b.g();
    Invariants inv;
    inv.branch = b;
    inv.lattices.push_back(LatticeBasis::standard(d));
    for (int j = 1; j <= g; ++j)
        inv.lattices.push_back(inv.lattices.back().extend({b.lambda[j - 1]}));

    inv.n.assign(g + 1, 1);
    for (int j = 1; j <= g; ++j)
        inv.n[j] = to_long(group_index(inv.lattices[j - 1], inv.lattices[j]));

    inv.e.assign(g + 1, 1);
    for (int j = g - 1; j >= 0; --j) inv.e[j] = inv.e[j + 1] * inv.n[j + 1];

    inv.gamma.assign(g + 1, RatVec(d, 0));
    inv.gamma[1] = b.lambda[0];
    for (int j = 1; j < g; ++j) {
        RatVec next(d);
        for (int i = 0; i < d; ++i)
            next[i] = Rational(inv.n[j]) * inv.gamma[j][i] + b.lambda[j][i] - b.lambda[j - 1][i];
        inv.gamma[j + 1] = next;
    }

    inv.r.assign(g + 1, 0);
    for (int j = 1; j <= g; ++j) {
        RatVec njgj(d);
        for (int i = 0; i < d; ++i) njgj[i] = Rational(inv.n[j]) * inv.gamma[j][i];
        inv.r[j] = to_long(integral_length(njgj, inv.lattices[j - 1]));
    }

    inv.ell.assign(g + 1, 0);
    for (int j = 1; j <= g; ++j)
        inv.ell[j] = static_cast<int>(
            std::count_if(b.lambda[j - 1].begin(), b.lambda[j - 1].end(),
                          [](const Rational& q) { return q != 0; }));

    // Structural invariants; all are theorems for valid input.
    for (int j = 1; j <= g; ++j) {
        if (inv.n[j] < 2) throw consistency_error("lattice index n_j < 2");
        if (std::gcd(inv.r[j], inv.n[j]) != 1) throw consistency_error("gcd(r_j, n_j) != 1");
    }
    for (int j = 1; j < g; ++j) {
        bool strict = false;
        for (int i = 0; i < d; ++i) {
            Rational lhs = Rational(inv.n[j]) * inv.gamma[j][i];
            if (lhs > inv.gamma[j + 1][i]) throw consistency_error("n_j gamma_j > gamma_{j+1}");
            if (lhs < inv.gamma[j + 1][i]) strict = true;
        }
        if (!strict) throw consistency_error("n_j gamma_j == gamma_{j+1}");
    }
    for (int j = 0; j < g; ++j) {
        // sum_{i<=j} e_i (lambda_{i+1} - lambda_i) == e_j gamma_{j+1}
        RatVec sum(d, 0);
        for (int i = 0; i <= j; ++i)
            for (int c = 0; c < d; ++c) {
                Rational prev = (i == 0) ? Rational(0) : b.lambda[i - 1][c];
                sum[c] += Rational(inv.e[i]) * (b.lambda[i][c] - prev);
            }
        for (int c = 0; c < d; ++c)
            if (sum[c] != Rational(inv.e[j]) * inv.gamma[j + 1][c])
                throw consistency_error("telescoping identity for e_j gamma_{j+1} failed");
    }
    if (inv.ell[1] < 1) throw consistency_error("ell_1 must be positive");
    for (int j = 1; j < g; ++j)
        if (inv.ell[j] > inv.ell[j + 1]) throw consistency_error("ell not monotone");
    return inv;
}

NormalizationCheck is_normalized(const BranchData& b) {
    const int d = b.d, g = b.g();
    // Per-coordinate exponent sequences, compared lexicographically.
    auto column = [&](int i) {
        RatVec col(g);
        for (int j = 0; j < g; ++j) col[j] = b.lambda[j][i];
        return col;
    };
    auto lex_ge = [](const RatVec& a, const RatVec& v) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] > v[k]) return true;
            if (a[k] < v[k]) return false;
        }
        return true;
    };
    auto excluded_first = [&](const std::vector<int>& perm) {
        // lambda_1 of the excluded shape (x, 0, ..., 0) with x < 1.
        if (b.lambda[0][perm[0]] >= 1) return false;
        for (int i = 1; i < d; ++i)
            if (b.lambda[0][perm[i]] != 0) return false;
        return true;
    };

    std::vector<int> id(d);
    for (int i = 0; i < d; ++i) id[i] = i;
    bool lex_ok = true;
    for (int i = 0; i + 1 < d; ++i)
        if (!lex_ge(column(i), column(i + 1))) lex_ok = false;

    NormalizationCheck out;
    out.normalized = lex_ok && !excluded_first(id);
    if (out.normalized) return out;

    std::vector<int> perm = id;
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int bb) {
        RatVec ca = column(a), cb = column(bb);
        return ca != cb && lex_ge(ca, cb);
    });
    if (!excluded_first(perm)) out.permutation = perm;
    return out;
}

BranchData permute_coordinates(const BranchData& b, const std::vector<int>& perm) {
    std::vector<RatVec> out(b.lambda.size(), RatVec(b.d));
    for (std::size_t j = 0; j < b.lambda.size(); ++j)
        for (int i = 0; i < b.d; ++i) out[j][i] = b.lambda[j][perm[i]];
    return validate(out, b.d);
}

BranchData random_branch(std::uint64_t seed, int d_max, int g_max, long denominator_bound) {
    if (d_max < 1 || g_max < 1 || denominator_bound < 1)
        throw validation_error("random_branch: bounds too small");
    std::mt19937_64 rng(seed);
    auto pick = [&](long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng);
    };
    for (int attempt = 0; attempt < 400; ++attempt) {
        const int d = static_cast<int>(pick(1, d_max));
        const int g = static_cast<int>(pick(1, g_max));
        std::vector<RatVec> lambda;
        LatticeBasis m = LatticeBasis::standard(d);
        bool ok = true;
        for (int j = 0; j < g && ok; ++j) {
            bool found = false;
            for (int tries = 0; tries < 60 && !found; ++tries) {
                RatVec cand(d);
                for (int i = 0; i < d; ++i) {
                    long q = pick(1, denominator_bound);
                    long p = pick(0, 2 * q);
                    cand[i] = Rational(p, q);
                    if (j > 0) cand[i] += lambda[j - 1][i];
                }
                if (j == 0 && is_zero(cand)) continue;
                if (m.contains(cand)) continue;
                lambda.push_back(cand);
                m = m.extend({cand});
                found = true;
            }
            ok = found;
        }
        if (!ok) continue;
        try {
            return validate(lambda, d);
        } catch (const validation_error&) {
            continue;
        }
    }
    throw consistency_error("random_branch: generation failed for seed " + std::to_string(seed));
}

}  // namespace qozeta
