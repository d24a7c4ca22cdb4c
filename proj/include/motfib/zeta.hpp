#pragma once

#include <vector>

#include "motfib/betapoly.hpp"
#include "motfib/motives.hpp"
#include "motfib/resolve.hpp"

namespace motfib {

// One factor u^-nu T^N / (1 - u^-nu T^N) of a rational-form term.
struct ZetaFactor {
  long N = 1;
  long nu = 1;
};

struct ZetaTerm {
  BetaPoly coefficient;
  std::vector<ZetaFactor> factors;
};

// Sign-refined zeta function of a resolved germ, kept in closed rational
// form: a sum of coefficient * prod_i (u^-nu_i T^N_i / (1 - u^-nu_i T^N_i)).
struct ZetaFunction {
  Symbol symbol = Symbol::Plus1;
  std::vector<ZetaTerm> terms;
};

// Class of the sign locus over one stratum.  For a curve stratum this is the
// degree-N cover { t^N * unit = sigma } of the punctured component (exact
// symbols) or the region { t^N * unit > 0 } / { < 0 } fibred over it (tube
// symbols); for a crossing point, the solution count or wedge class at the
// point.  Strata of the strict transform alone carry no such class and are
// rejected with UnsupportedShape.
BetaPoly stratum_sign_class(const ResolutionData& res, const Stratum& s, Symbol sym);

// Assemble the rational form: every stratum meeting the exceptional locus
// contributes (u-1)^(|I|-1) * stratum_sign_class, with one factor per
// component through the stratum.  Zero coefficients are dropped.
ZetaFunction motivic_zeta(const ResolutionData& res, Symbol sym);

// Coefficients of T^1 .. T^max_order of the power-series expansion.
std::vector<BetaPoly> zeta_series(const ZetaFunction& z, long max_order);

// Value with every rational-form factor replaced by its large-T limit -1.
BetaPoly zeta_limit(const ZetaFunction& z);

// Alternating stratum sum (1-u)^(|I|-1) * stratum_sign_class; equal to the
// negative of zeta_limit, computed independently so tests can check the
// identity.
BetaPoly motivic_fibre(const ResolutionData& res, Symbol sym);

// motivic_fibre evaluated at u = -1.
Rat fibre_euler(const ResolutionData& res, Symbol sym);

enum class LefschetzVariant { Single, Subset };

// Alternating fixed-point trace of the k-th monodromy iterate, from component
// multiplicities and complex Euler numbers of the open parts.  The Subset
// variant adds a gcd term for each exceptional-exceptional crossing point.
long lefschetz_number(const ResolutionData& res, long k,
                      LefschetzVariant variant = LefschetzVariant::Single);

}  // namespace motfib
