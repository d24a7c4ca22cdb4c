#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "motfib/errors.hpp"

namespace motfib {

using Int = mpz_class;
using Rat = mpq_class;

// "p", "-p", "p/q".  mpq set_str does not canonicalize, so we do.
inline std::optional<Rat> parse_rat(const std::string& s) {
  if (s.empty()) return std::nullopt;
  mpq_class q;
  if (q.set_str(s, 10) != 0) return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline int sgn(const Rat& q) { return ::sgn(q); }

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r = 1;
  Rat b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Largest d with d^2 | n ideally; here just exact square root test.
inline bool is_square(const Int& n, Int* root = nullptr) {
  if (n < 0) return false;
  Int r = sqrt(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

inline long to_long(const Int& n, const char* where) {
  if (!n.fits_slong_p()) fail(ErrKind::DegreeBoundExceeded, where, "integer out of machine range");
  return n.get_si();
}

}  // namespace motfib
