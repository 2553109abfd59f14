#pragma once

#include <string>

#include "hybridlie/phase_poly.hpp"

namespace hybridlie {

/// Parses the polynomial literal syntax used by scenario files: a sum of
/// terms `coeff * x1^a * ... * k1^b * ...`, whitespace-insensitive.
/// Coefficients may be omitted (implicit 1), `*` separates factors, `^` takes
/// a non-negative integer exponent, variable indices are 1-based and must not
/// exceed n_c. Examples: "1", "-2.5*x1^2*k3", "x2*k3 - x3*k2".
PhasePolynomial parse_polynomial(const std::string& text, int n_c);

/// Renders a polynomial in the same literal syntax (round-trips through
/// parse_polynomial). Deterministic term order, shortest-round-trip floats.
std::string format_polynomial(const PhasePolynomial& p);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

}  // namespace hybridlie
