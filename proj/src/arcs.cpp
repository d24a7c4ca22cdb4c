#include "motfib/arcs.hpp"

#include "motfib/errors.hpp"

namespace motfib {

std::vector<TruncatedArcStratum> arc_strata(long a, long b, long k) {
  if (a <= 0 || b <= 0 || k <= 0)
    fail(ErrKind::UnsupportedShape, "arc_strata",
         "exponents and target order must be positive");
  std::vector<TruncatedArcStratum> out;
  for (long i = 1; a * i + b <= k; ++i) {
    long rest = k - a * i;
    if (rest % b != 0) continue;
    long j = rest / b;
    out.push_back({i, j, (k - i) + (k - j)});
  }
  return out;
}

BetaPoly torus_class(long a, long b, Symbol sym) {
  if (a <= 0 || b <= 0)
    fail(ErrKind::UnsupportedShape, "torus_class", "exponents must be positive");
  const bool both_even = (a % 2 == 0) && (b % 2 == 0);
  const BetaPoly torus = beta_torus();
  switch (sym) {
    case Symbol::Plus1:
      // With both exponents even, s^a t^b = (s^{a/2} t^{b/2})^2, and the
      // inner monomial sweeps both signs: two branches instead of one.
      return both_even ? torus * Rat(2) : torus;
    case Symbol::Minus1:
      return both_even ? BetaPoly() : torus;
    case Symbol::Pos:
      // The sign of s^a t^b is constant on each open quadrant; with an odd
      // exponent present it is positive on exactly two of the four.
      return both_even ? torus * torus : (torus * torus) * Rat(1, 2);
    case Symbol::Neg:
      return both_even ? BetaPoly() : (torus * torus) * Rat(1, 2);
  }
  fail(ErrKind::InternalError, "torus_class", "unhandled symbol");
}

BetaPoly naive_coefficient(long a, long b, long k, Symbol sym) {
  const BetaPoly torus = torus_class(a, b, sym);
  BetaPoly sum;
  for (const TruncatedArcStratum& s : arc_strata(a, b, k))
    sum += torus * BetaPoly::u_power(static_cast<int>(s.free_dims));
  return sum * BetaPoly::u_power(static_cast<int>(-2 * k));
}

}  // namespace motfib
