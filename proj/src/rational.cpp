#include "permutadkit/rational.hpp"

#include <ostream>

namespace permutadkit {

Rational Rational::parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational::parse: bad literal '" + s + "'");
    v.canonicalize();
    return Rational(v);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace permutadkit
