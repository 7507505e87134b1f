#pragma once

#include <string>

#include "superp1/superfield.hpp"

namespace superp1 {

// Text form of super vector fields, e.g.
//   x^-1 xi1*xi2 d/dx + 1/2*x^-2 xi1*xi2*xi3 d/dxi3
// Chart U1 uses y, eta and d/dy, d/deta.  Whitespace is insignificant.

// Parses the grammar; throws ParseError with position and expected-token
// information.  Odd factors may appear in any order and are canonicalized
// with the Koszul sign; a literally repeated index is an error.
SuperField parse_field(const std::string& text, Chart chart, int m);

// Canonical text form: terms sorted by odd monomial (lexicographically), the
// even derivation target before the odd ones, ascending Laurent exponent
// within a target.  parse_field inverts it.
std::string render_field(const SuperField& v);

// Same conventions without the derivation part, e.g. "x^-1 - x^-3 xi1*xi2".
std::string render_function(const SuperFunction& f);

// U1 tokens (y/eta) in the input select chart U1, otherwise U0.
Chart detect_chart(const std::string& text);

}  // namespace superp1
