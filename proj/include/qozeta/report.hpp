#pragma once

#include "json.hpp"  // vendored nlohmann/json
#include "qozeta/spectrum.hpp"
#include "qozeta/ztop.hpp"

namespace qozeta {

enum class ReportFormat { Text, Json, Latex };

struct InputDocument {
    int d = 0;
    std::vector<RatVec> lambda;
    bool compat_printed_csigma = false;

    BranchData branch() const { return validate(lambda, d); }
    AtomOrientation orientation() const {
        return compat_printed_csigma ? AtomOrientation::AsPrinted : AtomOrientation::Corrected;
    }
};

InputDocument parse_input(const std::string& text);

nlohmann::json rational_json(const Rational& q);
nlohmann::json laurent_json(const LaurentL& p);
nlohmann::json atom_json(const Atom& a);
nlohmann::json motivic_poly_json(const MotivicPoly& m);
nlohmann::json ratlt_json(const RatLT& x);
nlohmann::json frac_poly_json(const FracPoly& p);
nlohmann::json rats_json(const RatS& z);
nlohmann::json fan_json(const Fan& fan);

// Full report over all modules; format per the CLI contract.
std::string compute_report(const InputDocument& doc, ReportFormat format);
nlohmann::json compute_report_json(const InputDocument& doc);

std::string render_latex(const InputDocument& doc);
std::string render_text(const InputDocument& doc);

}  // namespace qozeta
