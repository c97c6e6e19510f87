#pragma once

// Small recursive-descent parser for map and polynomial input:
//   - rational expressions in z  ("z^2", "1/z^3 + z", "(2*z^3+1)/(z-1)")
//   - homogeneous bivariate polynomials in x, y  ("x^3*y - x*y^3")
// Integer literals are taken in the prime subfield.

#include "p1dyn/ratmap.hpp"

namespace p1dyn {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rational function in z over F, returned as a normalized map
RatMap parse_ratmap(const std::string& text, Field F);

// homogeneous polynomial in x and y over F
HomPoly parse_hompoly(const std::string& text, Field F);

}  // namespace p1dyn
