#ifndef DJET_TEXT_HPP
#define DJET_TEXT_HPP

#include <string>

#include "djet/poly.hpp"

namespace djet {

/// Canonical text form: terms in graded order (highest degree first),
/// joined by " + " / " - ", coefficients as integers or a/b, "*" between
/// coefficient and monomial, variables as name or name@(i,...), powers
/// with "^". parse_poly(canonical_text(f)) == f.
std::string canonical_text(const JetPoly& f);

/// Parse the canonical grammar, plus parenthesized subexpressions for
/// convenience. Throws ErrorKind::Usage on malformed input.
JetPoly parse_poly(const std::string& text);

} // namespace djet

#endif
