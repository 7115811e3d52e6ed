#include "qozeta/numeric.hpp"

namespace qozeta {

Rational parse_rational(const std::string& text) {
    auto bad = [&] { return validation_error("malformed rational: '" + text + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto check_int = [&](const std::string& s) {
        if (s.empty()) throw bad();
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw bad();
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
    };
    try {
        if (slash == std::string::npos) {
            check_int(text);
            return Rational(BigInt(text));
        }
        std::string p = text.substr(0, slash), q = text.substr(slash + 1);
        check_int(p);
        check_int(q);
        BigInt d(q);
        if (d == 0) throw bad();
        return Rational(BigInt(p), d);
    } catch (const std::exception&) {
        throw bad();
    }
}

std::string format_rational(const Rational& q) {
    if (is_integer(q)) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

}  // namespace qozeta
