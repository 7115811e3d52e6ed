#include "qozeta/report.hpp"

#include <sstream>

namespace qozeta {

using nlohmann::json;

InputDocument parse_input(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("input is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("d") || !j.contains("lambda"))
        throw validation_error("input must be an object with fields \"d\" and \"lambda\"");
    InputDocument doc;
    if (!j["d"].is_number_integer()) throw validation_error("field \"d\" must be an integer");
    doc.d = j["d"].get<int>();
    if (!j["lambda"].is_array() || j["lambda"].empty())
        throw validation_error("field \"lambda\" must be a non-empty array");
    for (const auto& row : j["lambda"]) {
        if (!row.is_array()) throw validation_error("each exponent must be an array");
        RatVec v;
        for (const auto& entry : row) {
            if (entry.is_string())
                v.push_back(parse_rational(entry.get<std::string>()));
            else if (entry.is_number_integer())
                v.push_back(Rational(entry.get<long long>()));
            else
                throw validation_error("exponent entries must be rational strings");
        }
        if (static_cast<int>(v.size()) != doc.d)
            throw validation_error("ragged exponent row: expected " + std::to_string(doc.d) +
                                   " entries, got " + std::to_string(v.size()));
        doc.lambda.push_back(std::move(v));
    }
    if (j.contains("compat_printed_csigma")) {
        if (!j["compat_printed_csigma"].is_boolean())
            throw validation_error("compat_printed_csigma must be a boolean");
        doc.compat_printed_csigma = j["compat_printed_csigma"].get<bool>();
    }
    doc.branch();  // validates
    return doc;
}

namespace {

json bigint_json(const BigInt& v) {
    // Exact integers as decimal strings, except small values as numbers.
    if (v >= std::numeric_limits<std::int32_t>::min() &&
        v <= std::numeric_limits<std::int32_t>::max())
        return json(static_cast<long long>(v));
    return json(v.str());
}

}  // namespace

json rational_json(const Rational& q) {
    if (is_integer(q)) return bigint_json(num(q));
    return json(format_rational(q));
}

json laurent_json(const LaurentL& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({json(e), bigint_json(c)});
    return terms;
}

json atom_json(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::Point: return json{{"kind", "point"}};
        case Atom::Kind::Mu: return json{{"kind", "mu"}, {"n", a.n}};
        case Atom::Kind::Curve:
            return json{{"kind", "curve"}, {"n", a.n}, {"r", a.r}, {"e", a.e}};
    }
    return {};
}

json motivic_poly_json(const MotivicPoly& m) {
    json out = json::array();
    for (const auto& [a, c] : m) out.push_back({{"atom", atom_json(a)}, {"coeff", laurent_json(c)}});
    return out;
}

json ratlt_json(const RatLT& x) {
    json num_terms = json::array();
    for (const auto& [t, c] : x.num) num_terms.push_back({json(t), laurent_json(c)});
    json den = json::array();
    for (const auto& [a, b] : x.den) den.push_back({json(a), json(b)});
    return json{{"num", num_terms}, {"den", den}};
}

json frac_poly_json(const FracPoly& p) {
    json out = json::array();
    for (const auto& [e, c] : p.terms())
        out.push_back({json(format_rational(e)), bigint_json(c)});
    return out;
}

json rats_json(const RatS& z) {
    json num = json::array();
    for (const auto& c : z.num) num.push_back(rational_json(c));
    json den = json::array();
    for (const auto& [a, aa] : z.den) den.push_back({bigint_json(a), bigint_json(aa)});
    return json{{"num", num}, {"den", den}, {"display", z.str()}};
}

json fan_json(const Fan& fan) {
    json cones = json::array();
    for (const auto& c : fan.cones) {
        json edges = json::array(), forms = json::array();
        for (const auto& v : c.edges) {
            json ev = json::array();
            for (const auto& x : v) ev.push_back(bigint_json(x));
            edges.push_back(ev);
            forms.push_back({bigint_json(xi(fan.inv, c.level, v)), bigint_json(eta(v))});
        }
        json cj{{"id", c.id.str()},  {"level", c.level},          {"dim", c.dim},
                {"simplicial", c.simplicial}, {"edges", edges},   {"edge_forms", forms}};
        if (c.simplicial) cj["mult"] = bigint_json(multiplicity(fan, c.id));
        cones.push_back(cj);
    }
    return cones;
}

json compute_report_json(const InputDocument& doc) {
    const AtomOrientation orient = doc.orientation();
    BranchData branch = doc.branch();
    Invariants inv = derive_invariants(branch);
    Fan fan = build_fan(inv);

    json lam = json::array();
    for (const auto& row : doc.lambda) {
        json r = json::array();
        for (const auto& q : row) r.push_back(format_rational(q));
        lam.push_back(r);
    }

    json invariants;
    invariants["g"] = inv.g();
    invariants["n"] = json(std::vector<long>(inv.n.begin() + 1, inv.n.end()));
    invariants["e"] = json(inv.e);
    json gam = json::array();
    for (int j = 1; j <= inv.g(); ++j) {
        json row = json::array();
        for (const auto& q : inv.gamma[j]) row.push_back(format_rational(q));
        gam.push_back(row);
    }
    invariants["gamma"] = gam;
    invariants["r"] = json(std::vector<long>(inv.r.begin() + 1, inv.r.end()));
    invariants["ell"] = json(std::vector<int>(inv.ell.begin() + 1, inv.ell.end()));
    auto norm = is_normalized(branch);
    invariants["normalized"] = norm.normalized;
    if (norm.permutation) {
        json perm = json::array();
        for (int p : *norm.permutation) perm.push_back(p + 1);
        invariants["normalizing_permutation"] = perm;
    }

    json poles;
    json cand = json::array();
    for (const auto& [a, aa] : candidate_poles(fan)) cand.push_back({bigint_json(a), bigint_json(aa)});
    poles["candidate"] = cand;
    json cp = json::array();
    for (const auto& [b, bb] : cp_list(inv)) cp.push_back({bigint_json(b), bigint_json(bb)});
    poles["cp"] = cp;
    json scp = json::array();
    for (const auto& [b, bb] : scp_list(inv)) scp.push_back({bigint_json(b), bigint_json(bb)});
    poles["scp"] = scp;

    json out;
    out["d"] = doc.d;
    out["lambda"] = lam;
    if (doc.compat_printed_csigma) out["compat_printed_csigma"] = true;
    out["invariants"] = invariants;
    out["fan"] = fan_json(fan);
    out["ztop"] = rats_json(z_top(fan));
    out["spectrum_prime"] = frac_poly_json(spectrum_prime(inv, orient));
    out["spectrum_sp"] = frac_poly_json(spectrum_sp(inv, orient));
    out["milnor"] = motivic_poly_json(milnor_fiber_closed(inv, orient));
    out["poles"] = poles;
    return out;
}

namespace {

std::string vec_str(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_rational(v[i]);
    }
    return s + ")";
}

std::string factor_str(const BigInt& a, const BigInt& aa) {
    std::string s = "(" + a.str();
    if (aa != 0) {
        s += "+";
        if (aa != 1) s += aa.str();
        s += "s";
    }
    return s + ")";
}

std::string motivic_str(const MotivicPoly& m) {
    if (m.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [a, c] : m) {
        if (!first) s += " + ";
        first = false;
        s += "(" + c.str() + ")";
        if (a.kind != Atom::Kind::Point) s += "*" + a.str();
    }
    return s;
}

}  // namespace

std::string render_text(const InputDocument& doc) {
    const AtomOrientation orient = doc.orientation();
    BranchData branch = doc.branch();
    Invariants inv = derive_invariants(branch);
    Fan fan = build_fan(inv);
    std::ostringstream os;

    os << "== branch ==\n";
    os << "d = " << inv.d() << ", g = " << inv.g() << "\n";
    for (int j = 1; j <= inv.g(); ++j)
        os << "lambda_" << j << " = " << vec_str(branch.lambda[j - 1]) << "\n";
    auto norm = is_normalized(branch);
    os << "normalized = " << (norm.normalized ? "yes" : "no");
    if (norm.permutation) {
        os << " (normalizing permutation:";
        for (int p : *norm.permutation) os << " " << p + 1;
        os << ")";
    }
    os << "\n\n== invariants ==\n";
    os << "n =";
    for (int j = 1; j <= inv.g(); ++j) os << " " << inv.n[j];
    os << "\ne =";
    for (int j = 0; j <= inv.g(); ++j) os << " " << inv.e[j];
    os << "\n";
    for (int j = 1; j <= inv.g(); ++j)
        os << "gamma_" << j << " = " << vec_str(inv.gamma[j]) << "\n";
    os << "r =";
    for (int j = 1; j <= inv.g(); ++j) os << " " << inv.r[j];
    os << "\nell =";
    for (int j = 1; j <= inv.g(); ++j) os << " " << inv.ell[j];
    os << "\n\n== fan ==\n";
    for (const auto& c : fan.cones) {
        os << c.id.str() << ": dim " << c.dim << (c.simplicial ? ", simplicial" : "");
        if (c.simplicial) os << ", mult " << multiplicity(fan, c.id).str();
        os << "\n";
        for (const auto& v : c.edges) {
            os << "  edge (";
            for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].str();
            os << ")  xi=" << xi(inv, c.level, v).str() << " eta=" << eta(v).str() << "\n";
        }
    }
    os << "\n== topological zeta function ==\n";
    os << "Z_top = " << z_top(fan).str() << "\n";
    os << "\n== Hodge-Steenbrink spectrum ==\n";
    os << "Sp' = " << spectrum_prime(inv, orient).str() << "\n";
    os << "Sp  = " << spectrum_sp(inv, orient).str() << "\n";
    os << "\n== motivic Milnor fiber ==\n";
    os << "S = " << motivic_str(milnor_fiber_closed(inv, orient)) << "\n";
    os << "\n== poles ==\n";
    os << "candidate poles:";
    for (const auto& [a, aa] : candidate_poles(fan)) os << " " << factor_str(a, aa);
    os << "\nCP:";
    for (const auto& [b, bb] : cp_list(inv)) os << " (" << b.str() << "," << bb.str() << ")";
    os << "\nSCP:";
    for (const auto& [b, bb] : scp_list(inv)) os << " (" << b.str() << "," << bb.str() << ")";
    os << "\n";
    return os.str();
}

std::string render_latex(const InputDocument& doc) {
    const AtomOrientation orient = doc.orientation();
    BranchData branch = doc.branch();
    Invariants inv = derive_invariants(branch);
    Fan fan = build_fan(inv);
    RatS zt = z_top(fan);
    std::ostringstream os;

    auto rat_tex = [](const Rational& q) {
        if (is_integer(q)) return num(q).str();
        return "\\tfrac{" + num(q).str() + "}{" + den(q).str() + "}";
    };
    os << "\\begin{align*}\n";
    os << "\\lambda &= \\left(";
    for (int j = 1; j <= inv.g(); ++j) {
        if (j > 1) os << ";\\ ";
        os << "(";
        for (int i = 0; i < inv.d(); ++i)
            os << (i ? "," : "") << rat_tex(branch.lambda[j - 1][i]);
        os << ")";
    }
    os << "\\right)\\\\\n";
    os << "Z_{top}(f,s) &= \\frac{";
    {
        bool first = true;
        for (std::size_t i = 0; i < zt.num.size(); ++i) {
            if (zt.num[i] == 0) continue;
            Rational c = zt.num[i];
            if (!first) os << (c > 0 ? "+" : "-");
            else if (c < 0) os << "-";
            if (c < 0) c = -c;
            first = false;
            if (c != 1 || i == 0) os << rat_tex(c);
            if (i >= 1) os << "s";
            if (i >= 2) os << "^{" << i << "}";
        }
        if (first) os << "0";
    }
    os << "}{";
    for (const auto& [a, aa] : zt.den) {
        os << "(" << a.str();
        if (aa != 0) {
            os << "+";
            if (aa != 1) os << aa.str();
            os << "s";
        }
        os << ")";
    }
    os << "}\\\\\n";
    auto frac_tex = [&](const FracPoly& p) {
        if (p.zero()) return std::string("0");
        std::string s;
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (!first) s += (c > 0 ? " + " : " - ");
            else if (c < 0) s += "-";
            first = false;
            if (a != 1 || e == 0) s += a.str();
            if (e != 0) s += "t^{" + format_rational(e) + "}";
        }
        return s;
    };
    os << "Sp'(f,0) &= " << frac_tex(spectrum_prime(inv, orient)) << "\\\\\n";
    os << "Sp(f,0) &= " << frac_tex(spectrum_sp(inv, orient)) << "\n";
    os << "\\end{align*}\n";
    return os.str();
}

std::string compute_report(const InputDocument& doc, ReportFormat format) {
    switch (format) {
        case ReportFormat::Text: return render_text(doc);
        case ReportFormat::Json: return compute_report_json(doc).dump(2) + "\n";
        case ReportFormat::Latex: return render_latex(doc);
    }
    throw std::logic_error("unreachable");
}

}  // namespace qozeta
