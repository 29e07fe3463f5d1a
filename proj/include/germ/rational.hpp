#ifndef GERM_RATIONAL_HPP
#define GERM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace germ {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline std::string int_str(const Int& n) { return n.str(); }

// "p" or "p/q", always reduced.
inline std::string rat_str(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
    Int q = rat_num(r) / rat_den(r);
    if (q * rat_den(r) != rat_num(r) && r < 0) --q;
    return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

} // namespace germ

#endif
