#pragma once

#include <functional>

#include "qozeta/report.hpp"

namespace qozeta {

struct VerifyOptions {
    long series_order = 20;
    long l_precision = 20;
    std::vector<long> chitop_points = {1, 2, 3};
    AtomOrientation orient = AtomOrientation::Corrected;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every cross-module invariant suite on one branch.  Known fixtures
// (the built-in examples) additionally get their literal expected values.
std::vector<CheckResult> verify_branch(const BranchData& branch, const VerifyOptions& opts);

struct VerifySummary {
    std::vector<CheckResult> checks;
    bool all_pass = true;
    // Populated on random-suite failure: smallest failing branch found.
    std::optional<BranchData> counterexample;
    std::string failing_check;
};

VerifySummary verify_one(const BranchData& branch, const VerifyOptions& opts);
VerifySummary verify_random(int count, std::uint64_t seed, int d_max, int g_max,
                            long denominator_bound, const VerifyOptions& opts,
                            std::ostream& progress);

// Built-in example branches for the CLI and the test suites.
BranchData example_paper();
BranchData example_cusp();
BranchData example_smooth();
BranchData example_torus_knot(long n, long r);

}  // namespace qozeta
