#include "qozeta/verify.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

namespace qozeta {

BranchData example_paper() {
    return validate({{Rational(1, 2), Rational(3, 2)}, {Rational(1, 2), Rational(7, 4)}}, 2);
}

BranchData example_cusp() { return validate({{Rational(3, 2)}}, 1); }

BranchData example_smooth() { return validate({{Rational(1, 2)}}, 1); }

BranchData example_torus_knot(long n, long r) {
    if (n < 2 || r < 1 || std::gcd(n, r) != 1)
        throw validation_error("torus knot needs n >= 2 and gcd(n, r) = 1");
    return validate({{Rational(r, n)}}, 1);
}

namespace {

using Check = std::function<bool(std::string&)>;

void run(std::vector<CheckResult>& out, const std::string& name, const Check& fn) {
    CheckResult res;
    res.name = name;
    try {
        std::string detail;
        res.pass = fn(detail);
        res.detail = detail;
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail = e.what();
    }
    out.push_back(std::move(res));
}

bool mp_equal(const MotivicPoly& a, const MotivicPoly& b) { return a == b; }

}  // namespace

namespace {

// Branch-independent property suite of the exact-arithmetic layer.
bool exact_arithmetic_suite() {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> entry(-5, 5), q(1, 4), diag(1, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        // Smith divisors multiply to |det|.
        IntMat a(d, IntVec(d));
        RatMat aq(d, RatVec(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                a[i][j] = entry(rng);
                aq[i][j] = Rational(a[i][j]);
            }
        BigInt prod = 1;
        for (const auto& dv : elementary_divisors(a)) prod *= dv;
        Rational det = determinant(aq);
        if (Rational(prod) != (det < 0 ? -det : det)) return false;

        // Nested lattices multiply indices; rays stay primitive.
        RatMat fine_rows(d, RatVec(d, 0));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) fine_rows[i][j] = Rational(entry(rng), q(rng));
            fine_rows[i][i] += 4;
        }
        LatticeBasis fine{fine_rows};
        auto scale_up = [&](const RatMat& rows) {
            RatMat out_rows(d, RatVec(d, 0));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Rational f = (i == j) ? Rational(diag(rng)) : Rational(i < j ? entry(rng) : 0);
                    for (int t = 0; t < d; ++t) out_rows[i][t] += f * rows[j][t];
                }
            return out_rows;
        };
        LatticeBasis mid{scale_up(fine.rows())};
        LatticeBasis coarse{scale_up(mid.rows())};
        if (group_index(coarse, fine) != group_index(coarse, mid) * group_index(mid, fine))
            return false;

        RatVec dir(d, 0);
        for (int i = 0; i < d; ++i) dir[i] = Rational(entry(rng), q(rng));
        if (std::all_of(dir.begin(), dir.end(), [](const Rational& x) { return x == 0; }))
            dir[0] = 1;
        RatVec prim = primitive_on_ray(dir, fine);
        if (!fine.contains(prim)) return false;
        for (int k = 2; k <= 7; ++k) {
            RatVec frac(d);
            for (int i = 0; i < d; ++i) frac[i] = prim[i] / k;
            if (fine.contains(frac)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<CheckResult> verify_branch(const BranchData& branch, const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    Invariants inv = derive_invariants(branch);
    Fan fan = build_fan(inv);
    const int d = inv.d(), g = inv.g();

    run(out, "exact lattice arithmetic property suite", [&](std::string&) {
        return exact_arithmetic_suite();
    });

    run(out, "coordinate permutation commutes with derivation", [&](std::string&) {
        if (d < 2) return true;
        std::vector<int> perm(d);
        for (int i = 0; i < d; ++i) perm[i] = (i + 1) % d;
        Invariants rot = derive_invariants(permute_coordinates(branch, perm));
        if (rot.n != inv.n || rot.e != inv.e || rot.r != inv.r || rot.ell != inv.ell)
            return false;
        for (int j = 1; j <= g; ++j)
            for (int i = 0; i < d; ++i)
                if (rot.gamma[j][i] != inv.gamma[j][perm[i]]) return false;
        return true;
    });

    run(out, "gcd(r_j, n_j) = 1", [&](std::string&) {
        for (int j = 1; j <= g; ++j)
            if (std::gcd(inv.r[j], inv.n[j]) != 1) return false;
        return true;
    });

    run(out, "n_j gamma_j < gamma_{j+1}", [&](std::string&) {
        for (int j = 1; j < g; ++j) {
            bool strict = false;
            for (int i = 0; i < d; ++i) {
                Rational lhs = Rational(inv.n[j]) * inv.gamma[j][i];
                if (lhs > inv.gamma[j + 1][i]) return false;
                if (lhs < inv.gamma[j + 1][i]) strict = true;
            }
            if (!strict) return false;
        }
        return true;
    });

    run(out, "sum e_i (lambda_{i+1} - lambda_i) = e_j gamma_{j+1}", [&](std::string&) {
        for (int j = 0; j < g; ++j)
            for (int c = 0; c < d; ++c) {
                Rational sum = 0;
                for (int i = 0; i <= j; ++i) {
                    Rational prev = (i == 0) ? Rational(0) : branch.lambda[i - 1][c];
                    sum += Rational(inv.e[i]) * (branch.lambda[i][c] - prev);
                }
                if (sum != Rational(inv.e[j]) * inv.gamma[j + 1][c]) return false;
            }
        return true;
    });

    run(out, "order of gamma_j in M_j/M_{j-1} equals n_j", [&](std::string&) {
        for (int j = 1; j <= g; ++j) {
            for (long k = 1; k < inv.n[j]; ++k) {
                RatVec kg(d);
                for (int i = 0; i < d; ++i) kg[i] = Rational(k) * inv.gamma[j][i];
                if (inv.lattices[j - 1].contains(kg)) return false;
            }
            RatVec ng(d);
            for (int i = 0; i < d; ++i) ng[i] = Rational(inv.n[j]) * inv.gamma[j][i];
            if (!inv.lattices[j - 1].contains(ng)) return false;
        }
        return true;
    });

    run(out, "|D_theta| = mult(theta)", [&](std::string&) {
        for (const auto& cone : fan.cones) {
            if (!cone.simplicial) continue;
            auto geom = geom_in_standard_lattice(cone.edges, d + g + 1);
            if (BigInt(d_theta(geom).size()) != multiplicity(geom)) return false;
        }
        for (int j = 1; j <= g; ++j) {
            auto hat = hat_decomposition(inv, j);
            for (const auto* geom : {&hat.rho_prime, &hat.rho_bar, &hat.sigma_bar_plus})
                if (BigInt(d_theta(*geom).size()) != multiplicity(*geom)) return false;
        }
        return true;
    });

    run(out, "edge conditions (xi >= 0; eta = 0 forces xi = 1 on a named edge)",
        [&](std::string&) {
            for (const auto& cone : fan.cones) {
                for (const auto& v : cone.edges) {
                    if (xi(inv, cone.level, v) < 0) return false;
                    if (eta(v) != 0) continue;
                    if (xi(inv, cone.level, v) != 1) return false;
                    // eta = 0 edges: the added ray eps_{d+j}, or a coordinate
                    // ray eps_i whose lambda column vanishes up to the level
                    // of the rho face the edge belongs to.
                    IntVec eps_dj(d + g + 1, 0);
                    if (cone.level <= g) eps_dj[d + cone.level - 1] = 1;
                    if (v == eps_dj) continue;
                    int i = -1;
                    int nonzero = 0;
                    for (int t = 0; t < d + g + 1; ++t)
                        if (v[t] != 0) {
                            ++nonzero;
                            i = t;
                        }
                    if (nonzero != 1 || i >= d || v[i] != 1) return false;
                    // lambda column must vanish through level-1 at least;
                    // edges of rho_level need it through the level itself.
                    int depth = cone.level - 1;
                    if (cone.id.kind == ConeKind::Rho ||
                        cone.id.kind == ConeKind::SigmaPlus ||
                        cone.id.kind == ConeKind::SigmaTop)
                        depth = std::min(cone.level, g);
                    for (int jp = 1; jp <= depth; ++jp)
                        if (branch.lambda[jp - 1][i] != 0) return false;
                }
            }
            return true;
        });

    run(out, "xi_j = xi_{j-1} on rho_{j-1} edges of sigma_j^-", [&](std::string&) {
        for (int j = 2; j <= g; ++j) {
            const Cone& lower = fan.cone({ConeKind::Rho, j - 1});
            for (const auto& v : lower.edges)
                if (xi(inv, j, v) != xi(inv, j - 1, v)) return false;
        }
        // j = 1: rho_0 edges are coordinate rays eps_i with xi_1 = 1.
        for (int i = 0; i < d; ++i) {
            IntVec eps(d + g + 1, 0);
            eps[i] = 1;
            if (xi(inv, 1, eps) != 1) return false;
        }
        return true;
    });

    run(out, "rho_{j-1} and rho_j edge sets lie in sigma_j^-", [&](std::string&) {
        for (int j = 1; j <= g; ++j) {
            const Cone& minus = fan.cone({ConeKind::SigmaMinus, j});
            auto in_minus = [&](const IntVec& v) {
                return std::find(minus.edges.begin(), minus.edges.end(), v) != minus.edges.end();
            };
            const Cone& hi = fan.cone({ConeKind::Rho, j});
            for (const auto& v : hi.edges)
                if (!in_minus(v)) return false;
            if (j >= 2) {
                const Cone& lo = fan.cone({ConeKind::Rho, j - 1});
                for (const auto& v : lo.edges)
                    if (!in_minus(v)) return false;
            } else {
                for (int i = 0; i < d; ++i) {
                    IntVec eps(d + g + 1, 0);
                    eps[i] = 1;
                    if (!in_minus(eps)) return false;
                }
            }
        }
        return true;
    });

    run(out, "s_j maps int(rho) cap N_j onto int(rho_j) cap Z^{d+g+1}", [&](std::string&) {
        // Enumerate both sides with small bounds and compare.
        const long bound = 6;
        for (int j = 1; j <= g; ++j) {
            std::vector<IntVec> images;
            IntVec nu(d, 1);
            for (;;) {
                bool in_lattice = true;
                for (int i = 1; i <= j && in_lattice; ++i)
                    if (!is_integer(dot(nu, inv.gamma[i]))) in_lattice = false;
                if (in_lattice) {
                    IntVec k(d + g + 1, 0);
                    for (int i = 0; i < d; ++i) k[i] = nu[i];
                    for (int i = 1; i <= j; ++i) k[d + i - 1] = num(dot(nu, inv.gamma[i]));
                    for (int i = j + 1; i <= g + 1; ++i)
                        k[d + i - 1] = inv.n_product(j, i - 1) * num(dot(nu, inv.gamma[j]));
                    images.push_back(k);
                }
                int pos = 0;
                while (pos < d) {
                    if (++nu[pos] <= bound) break;
                    nu[pos] = 1;
                    ++pos;
                }
                if (pos == d) break;
            }
            // Every image must classify as rho_j, and distinct nu give
            // distinct images (injectivity).
            std::sort(images.begin(), images.end());
            if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
            for (const auto& k : images) {
                auto id = classify_vector(inv, k);
                if (!id || id->kind != ConeKind::Rho || id->level != j) return false;
            }
        }
        return true;
    });

    run(out, "classification round-trip and disjointness", [&](std::string&) {
        auto buckets = enumerate_orders_upto(inv, 12, 15);
        std::vector<IntVec> seen;
        for (const auto& bucket : buckets)
            for (const auto& pt : bucket) {
                auto id = classify_vector(inv, pt.k);
                if (!id || *id != pt.cone) return false;
                seen.push_back(pt.k);
            }
        std::sort(seen.begin(), seen.end());
        return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    });

    run(out, "Lemma-minus three-term identity", [&](std::string&) {
        for (int j = 1; j <= g; ++j) {
            ConeId id{ConeKind::SigmaMinus, j};
            RatLT hat = s_theta(fan, id);
            if (fan.cone(id).simplicial) {
                if (!rat_equal(hat, s_theta_direct(fan, id))) return false;
            }
            // Series cross-check against the raw generating function.
            const long nmax = std::min(opts.series_order, 8L), prec = 12;
            auto buckets = enumerate_orders_upto(inv, nmax, prec + d + 3);
            for (long n = 1; n <= nmax; ++n) {
                MotivicRat wrapped{{Atom::point(), hat}};
                MotivicPoly closed = coefficient_of_T(wrapped, n, prec);
                LaurentL direct;
                for (const auto& pt : buckets[n])
                    if (pt.cone == id)
                        direct.add_term(-to_long(xi(inv, j, pt.k)), 1);
                MotivicPoly expect;
                mp_add(expect, Atom::point(), direct.truncated_below(-prec));
                if (!mp_equal(mp_truncate(closed, prec), expect)) return false;
            }
        }
        return true;
    });

    run(out, "series oracle (naive)", [&](std::string&) {
        MotivicRat z = z_naive(fan);
        auto oracle = oracle_coefficients_upto(inv, opts.series_order, opts.l_precision,
                                               ZetaVariant::Naive, opts.orient);
        for (long n = 1; n <= opts.series_order; ++n)
            if (!mp_equal(coefficient_of_T(z, n, opts.l_precision), oracle[n])) return false;
        return true;
    });

    run(out, "series oracle (monodromic)", [&](std::string&) {
        MotivicRat z = z_mono(fan, opts.orient);
        auto oracle = oracle_coefficients_upto(inv, opts.series_order, opts.l_precision,
                                               ZetaVariant::Monodromic, opts.orient);
        for (long n = 1; n <= opts.series_order; ++n)
            if (!mp_equal(coefficient_of_T(z, n, opts.l_precision), oracle[n])) return false;
        return true;
    });

    run(out, "cone limits match the series-ring limit rule", [&](std::string&) {
        for (const auto& cone : fan.cones) {
            RatLT s = rat_scale(s_theta(fan, cone.id), LaurentL::l_minus_one_pow(cone.dim - 1));
            if (!(sr_limit(s) == cone_limit(fan, cone.id))) return false;
        }
        return true;
    });

    run(out, "milnor fiber: closed formula = limit route", [&](std::string&) {
        return mp_equal(milnor_fiber_closed(inv, opts.orient),
                        milnor_fiber_via_limit(fan, opts.orient));
    });

    run(out, "spectrum closed formula = (-1)^d (sp(milnor) - 1)", [&](std::string&) {
        FracPoly via = sp_of(milnor_fiber_closed(inv, opts.orient)) - FracPoly::constant(1);
        if (inv.d() % 2 != 0) via = -via;
        return spectrum_prime(inv, opts.orient) == via;
    });

    run(out, "spectrum exponents lie in (0, d+1)", [&](std::string&) {
        FracPoly prime = spectrum_prime(inv, opts.orient);
        for (const auto& [e, c] : prime.terms())
            if (e <= 0 || e >= Rational(d + 1)) return false;
        return true;
    });

    run(out, "Sp = t^{d+1} iota(Sp')", [&](std::string&) {
        FracPoly sp = spectrum_sp(inv, opts.orient);
        FracPoly back = (FracPoly::monomial(Rational(-(d + 1))) * sp).reciprocal_exponents();
        return back == spectrum_prime(inv, opts.orient);
    });

    run(out, "chi_top oracle = z_top at sample points", [&](std::string& detail) {
        RatS zt = z_top(fan);
        for (long s0 : opts.chitop_points) {
            Rational lhs = chi_top_oracle(fan, s0);
            Rational rhs = zt.eval(Rational(s0));
            if (lhs != rhs) {
                detail = "s0=" + std::to_string(s0) + ": " + format_rational(lhs) +
                         " != " + format_rational(rhs);
                return false;
            }
        }
        return true;
    });

    run(out, "CP list matches fan data (B = eta, b = xi)", [&](std::string&) {
        return check_cp_equals_fan(inv);
    });

    run(out, "z_top denominator divides the candidate-pole product", [&](std::string&) {
        candidate_poles(fan);  // throws on violation
        return true;
    });

    run(out, "special-factor cancellation in LC_j", [&](std::string&) {
        for (const auto& [i, j] : special_vectors(inv))
            if (!lc_identity_check(fan, j)) return false;
        return true;
    });

    // Literal fixtures for the built-in examples.
    auto branch_equals = [&](const BranchData& other) {
        return branch.d == other.d && branch.lambda == other.lambda;
    };
    if (branch_equals(example_paper())) {
        run(out, "fixture: spectrum of the built-in surface example", [&](std::string&) {
            FracPoly expect;
            for (long k = 9; k <= 15; ++k) expect.add_term(Rational(k, 8), 1);
            return spectrum_prime(inv, opts.orient) == expect;
        });
    }
    if (branch_equals(example_cusp())) {
        run(out, "fixture: cusp spectrum and T^2 jet class", [&](std::string&) {
            FracPoly expect;
            expect.add_term(Rational(5, 6), 1);
            expect.add_term(Rational(7, 6), 1);
            if (!(spectrum_prime(inv, opts.orient) == expect)) return false;
            MotivicPoly jet;  // {b_1^2 = 1} x A^3 at jet level 2: [mu_2] L^{3-4}
            mp_add(jet, Atom::mu(2), LaurentL::monomial(-1));
            return mp_equal(coefficient_of_T(z_mono(fan, opts.orient), 2, 5), jet);
        });
    }
    if (branch_equals(example_smooth())) {
        run(out, "fixture: smooth germ Z_top = 1/(1+s)", [&](std::string&) {
            RatS expect = RatS::constant(1);
            expect.den.emplace_back(1, 1);
            return rats_equal(z_top(fan), expect);
        });
    }
    return out;
}

VerifySummary verify_one(const BranchData& branch, const VerifyOptions& opts) {
    VerifySummary s;
    s.checks = verify_branch(branch, opts);
    for (const auto& c : s.checks)
        if (!c.pass) {
            s.all_pass = false;
            s.failing_check = c.name;
            s.counterexample = branch;
            break;
        }
    return s;
}

namespace {

// Shrink a failing branch: fewer exponents, then fewer coordinates.
BranchData minimize(const BranchData& branch, const std::string& check,
                    const VerifyOptions& opts) {
    auto fails = [&](const BranchData& b) {
        try {
            for (const auto& c : verify_branch(b, opts))
                if (c.name == check && !c.pass) return true;
            return false;
        } catch (const std::exception&) {
            return false;
        }
    };
    BranchData cur = branch;
    bool progress = true;
    while (progress) {
        progress = false;
        if (cur.g() > 1) {
            BranchData cand = cur;
            cand.lambda.pop_back();
            try {
                cand = validate(cand.lambda, cand.d);
                if (fails(cand)) {
                    cur = cand;
                    progress = true;
                    continue;
                }
            } catch (const validation_error&) {
            }
        }
        for (int drop = 0; drop < cur.d && cur.d > 1; ++drop) {
            std::vector<RatVec> lam;
            for (const auto& row : cur.lambda) {
                RatVec v;
                for (int i = 0; i < cur.d; ++i)
                    if (i != drop) v.push_back(row[i]);
                lam.push_back(v);
            }
            try {
                BranchData cand = validate(lam, cur.d - 1);
                if (fails(cand)) {
                    cur = cand;
                    progress = true;
                    break;
                }
            } catch (const validation_error&) {
            }
        }
    }
    return cur;
}

}  // namespace

VerifySummary verify_random(int count, std::uint64_t seed, int d_max, int g_max,
                            long denominator_bound, const VerifyOptions& opts,
                            std::ostream& progress) {
    VerifySummary total;
    for (int i = 0; i < count; ++i) {
        BranchData b = random_branch(seed + static_cast<std::uint64_t>(i), d_max, g_max,
                                     denominator_bound);
        VerifySummary s = verify_one(b, opts);
        progress << "branch " << (i + 1) << "/" << count << " (d=" << b.d << ", g=" << b.g()
                 << "): " << (s.all_pass ? "pass" : ("FAIL " + s.failing_check)) << "\n";
        if (!s.all_pass) {
            total.all_pass = false;
            total.failing_check = s.failing_check;
            total.counterexample = minimize(b, s.failing_check, opts);
            total.checks = s.checks;
            return total;
        }
    }
    return total;
}

}  // namespace qozeta
