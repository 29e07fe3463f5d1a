#ifndef GERM_PARSER_HPP
#define GERM_PARSER_HPP

#include "germ/bipoly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace germ {

/// Parse "x^2 - y^3" style input: integers, rationals p/q, the symbol i,
/// variables x and y, + - * ^ (nonnegative integer exponents), parentheses.
/// No implicit multiplication.  Errors carry the 1-based position.  The
/// constant term must vanish (a germ at the origin).
BiPoly parse_poly(const std::string& text);

/// Same grammar, but the top-level multiplicative structure is kept: a
/// product of powers comes back factor by factor (exponents folded into the
/// multiplicity), so cross-factor oracles can use the given factorization.
std::vector<std::pair<BiPoly, int>> parse_factored(const std::string& text);

} // namespace germ

#endif
