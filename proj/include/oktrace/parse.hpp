#pragma once

#include <string>

#include "oktrace/poly.hpp"

namespace oktrace {

/* Integer polynomial from ASCII text. Two forms, whitespace-insensitive:
 *   - an expression in x:            "x^3+x-6", "3x^2 - 2*x + 1"
 *   - a bracketed high-to-low list:  "[1, 0, 1, -6]"
 * Errors are parse_error with the offending character position. */
IntPoly parse_polynomial(const std::string& text);

/* parse_polynomial plus the analysis entry requirements: degree >= 1 and
 * monic. Non-monic input gets its own message rather than a generic one. */
IntPoly parse_monic_polynomial(const std::string& text);

/* Canonical rendering, high-to-low, compact: "x^3+x-6". var names the
 * indeterminate ("x" for input echoes, "a" for field elements). */
std::string poly_to_text(const IntPoly& f, const std::string& var = "x");

}  // namespace oktrace
