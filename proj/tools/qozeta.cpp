#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qozeta/verify.hpp"

namespace {

using namespace qozeta;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<long> parse_points(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        long v = std::stol(item);
        if (v < 1) throw validation_error("chi_top sample points must be positive integers");
        out.push_back(v);
    }
    if (out.empty()) throw validation_error("empty chi_top sample list");
    return out;
}

nlohmann::json branch_to_json(const BranchData& b, bool compat) {
    nlohmann::json lam = nlohmann::json::array();
    for (const auto& row : b.lambda) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& q : row) r.push_back(format_rational(q));
        lam.push_back(r);
    }
    nlohmann::json out{{"d", b.d}, {"lambda", lam}};
    if (compat) out["compat_printed_csigma"] = true;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact zeta-function calculator for irreducible quasi-ordinary hypersurfaces"};
    app.require_subcommand(1);

    std::string input_path = "-", format = "text", chitop = "1,2,3", example_name = "paper-example";
    long series_order = 20, l_precision = 20, tk_n = 2, tk_r = 3;
    long denominator_bound = 6;
    int count = 25, d_max = 3, g_max = 3;
    std::uint64_t seed = 1;
    bool compat = false;

    auto* compute = app.add_subcommand("compute", "derive all invariants and print a report");
    compute->add_option("--input", input_path, "input JSON path, or - for stdin");
    compute->add_option("--format", format, "text|json|latex")
        ->check(CLI::IsMember({"text", "json", "latex"}));
    compute->add_flag("--compat-printed-csigma", compat,
                      "use the as-printed class table (auditing aid)");

    auto* verify = app.add_subcommand("verify", "run every oracle and invariant suite");
    verify->add_option("--input", input_path, "input JSON path, or - for stdin");
    verify->add_option("--series-order", series_order, "compare T-coefficients up to this order");
    verify->add_option("--l-precision", l_precision, "L-truncation depth for series checks");
    verify->add_option("--chitop-points", chitop, "comma-separated chi_top sample points");
    verify->add_option("--count", count, "number of random branches when no input is given");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--d-max", d_max, "max base dimension for random branches");
    verify->add_option("--g-max", g_max, "max number of exponents for random branches");
    verify->add_option("--denominator-bound", denominator_bound,
                       "denominator bound for random exponents");
    verify->add_flag("--compat-printed-csigma", compat,
                     "use the as-printed class table (auditing aid)");

    auto* random = app.add_subcommand("random", "emit a random valid branch as input JSON");
    random->add_option("--seed", seed, "random seed");
    random->add_option("--d-max", d_max, "max base dimension");
    random->add_option("--g-max", g_max, "max number of exponents");
    random->add_option("--denominator-bound", denominator_bound, "denominator bound");

    auto* example = app.add_subcommand("example", "emit a built-in fixture as input JSON");
    example->add_option("name", example_name, "paper-example|cusp|smooth|torus-knot")
        ->check(CLI::IsMember({"paper-example", "cusp", "smooth", "torus-knot"}));
    example->add_option("n", tk_n, "torus-knot n");
    example->add_option("r", tk_r, "torus-knot r");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            InputDocument doc = parse_input(read_input(input_path));
            doc.compat_printed_csigma = doc.compat_printed_csigma || compat;
            ReportFormat fmt = format == "json"    ? ReportFormat::Json
                               : format == "latex" ? ReportFormat::Latex
                                                   : ReportFormat::Text;
            std::cout << compute_report(doc, fmt);
            return 0;
        }
        if (verify->parsed()) {
            VerifyOptions opts;
            opts.series_order = series_order;
            opts.l_precision = l_precision;
            opts.chitop_points = parse_points(chitop);
            opts.orient = compat ? AtomOrientation::AsPrinted : AtomOrientation::Corrected;
            VerifySummary summary;
            if (verify->count("--input") > 0) {
                InputDocument doc = parse_input(read_input(input_path));
                if (doc.compat_printed_csigma) opts.orient = AtomOrientation::AsPrinted;
                summary = verify_one(doc.branch(), opts);
                for (const auto& c : summary.checks)
                    std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name
                              << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
            } else {
                summary = verify_random(count, seed, d_max, g_max, denominator_bound, opts,
                                        std::cout);
            }
            if (!summary.all_pass) {
                std::cerr << "verification failed: " << summary.failing_check << "\n";
                if (summary.counterexample)
                    std::cerr << "counterexample: "
                              << branch_to_json(*summary.counterexample, compat).dump() << "\n";
                return 2;
            }
            std::cout << "all checks passed\n";
            return 0;
        }
        if (random->parsed()) {
            BranchData b = random_branch(seed, d_max, g_max, denominator_bound);
            std::cout << branch_to_json(b, false).dump(2) << "\n";
            return 0;
        }
        if (example->parsed()) {
            BranchData b = example_name == "cusp"     ? example_cusp()
                           : example_name == "smooth" ? example_smooth()
                           : example_name == "torus-knot"
                               ? example_torus_knot(tk_n, tk_r)
                               : example_paper();
            std::cout << branch_to_json(b, false).dump(2) << "\n";
            return 0;
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
