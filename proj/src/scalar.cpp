#include "armlin/scalar.hpp"

namespace armlin {

std::string rational_to_string(const Rational& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t");
    size_t end = s.find_last_not_of(" \t");
    if (begin == std::string::npos) throw ParseError("empty rational literal");
    try {
        return Rational(s.substr(begin, end - begin + 1));
    } catch (const std::exception&) {
        throw ParseError("malformed rational literal \"" + s + "\" (expected \"p\" or \"p/q\")");
    }
}

} // namespace armlin
