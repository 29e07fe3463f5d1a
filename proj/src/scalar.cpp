#include "germ/scalar.hpp"

#include "germ/error.hpp"

#include <ostream>
#include <sstream>

namespace germ {

Scalar inv(const Scalar& s) {
    if (s.is_zero()) fail("math.div-zero", "division by zero Scalar");
    Rat n = s.norm();
    return Scalar(s.re / n, -s.im / n);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= inv(o); }

std::string Scalar::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    if (s.im == 0) return os << rat_str(s.re);
    if (s.re == 0) {
        if (s.im == 1) return os << "i";
        if (s.im == -1) return os << "-i";
        return os << rat_str(s.im) << "*i";
    }
    os << rat_str(s.re);
    if (s.im > 0) os << "+"; // negative sign comes with the number
    if (s.im == 1) os << "i";
    else if (s.im == -1) os << "-i";
    else os << rat_str(s.im) << "*i";
    return os;
}

} // namespace germ
