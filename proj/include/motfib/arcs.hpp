#pragma once

#include <vector>

#include "motfib/betapoly.hpp"
#include "motfib/motives.hpp"

namespace motfib {

// One stratum of the order-k truncated arc space of the monomial x^a y^b:
// parametrized curves (x(t), y(t)) vanishing at t = 0 with ord x = i and
// ord y = j, where a*i + b*j = k.  The two leading coefficients range over a
// sign-constrained subset of the 2-torus; the higher jet coefficients are
// unconstrained and contribute free_dims affine dimensions.
struct TruncatedArcStratum {
  long i = 0;
  long j = 0;
  long free_dims = 0;  // (k - i) + (k - j)
};

// All strata (i, j) with i, j >= 1 and a*i + b*j = k, in increasing i.
std::vector<TruncatedArcStratum> arc_strata(long a, long b, long k);

// Class of the sign-condition locus {(s, t) in (R*)^2 : s^a t^b  ~  1} on the
// real 2-torus, where "~" is exact equality with +1 or -1 for the equational
// symbols and the corresponding strict inequality for pos/neg.
BetaPoly torus_class(long a, long b, Symbol sym);

// Coefficient of T^k in the arc-count zeta function of the monomial x^a y^b:
// each stratum contributes torus_class * u^free_dims, and the whole order-k
// truncated arc space carries the normalization u^{-2k}.
BetaPoly naive_coefficient(long a, long b, long k, Symbol sym);

}  // namespace motfib
