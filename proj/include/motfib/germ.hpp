#pragma once

#include <optional>

#include "motfib/poly.hpp"

namespace motfib {

// A one-parameter family of plane-curve germs: a polynomial in (t, x, y),
// parameter first, in which every term involves x or y — so each
// specialization vanishes at the origin of the (x, y)-plane.
struct GermFamily {
  Polynomial body;
};

// Validates the family shape; raises NotAGerm when some term is free of the
// two plane variables.
GermFamily make_family(const Polynomial& body);

// Substitutes the parameter value and returns the germ in the two plane
// variables.
Polynomial specialize(const GermFamily& family, const Rat& t0);

// Dimension over Q of the local algebra at the origin modulo the ideal of the
// two partial derivatives.  nullopt encodes an infinite dimension: the
// critical locus contains a curve through the origin (detected exactly via a
// common factor of the partials).  For the finite case the colength is read
// off exact ranks of degree-truncated multiples of the partials, iterating
// the truncation degree until the count repeats twice; DegreeBoundExceeded is
// raised if that never happens below degree_bound.
std::optional<long> milnor_number(const Polynomial& f, long degree_bound = 64);

}  // namespace motfib
