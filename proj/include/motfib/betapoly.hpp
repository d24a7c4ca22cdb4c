#pragma once

#include <map>
#include <string>

#include "motfib/rational.hpp"

namespace motfib {

// Laurent polynomial in u with rational coefficients.  All pipeline values
// live here; denominators stay powers of two throughout the calculus.
class BetaPoly {
 public:
  BetaPoly() = default;
  explicit BetaPoly(const Rat& constant);
  static BetaPoly u_power(int k, const Rat& coeff = Rat(1));
  static BetaPoly u() { return u_power(1); }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const;
  void set(int k, const Rat& v);
  void add(int k, const Rat& v);

  BetaPoly operator-() const;
  BetaPoly operator+(const BetaPoly& o) const;
  BetaPoly operator-(const BetaPoly& o) const;
  BetaPoly operator*(const BetaPoly& o) const;
  BetaPoly operator*(const Rat& s) const;
  BetaPoly& operator+=(const BetaPoly& o);
  bool operator==(const BetaPoly& o) const { return c_ == o.c_; }
  bool operator!=(const BetaPoly& o) const { return c_ != o.c_; }

  BetaPoly shifted_u(int k) const;  // multiply by u^k
  BetaPoly pow(unsigned long e) const;
  Rat eval(const Rat& x) const;  // requires x != 0 when negative powers occur

  // Evaluation at u = -1 (compactly supported Euler characteristic).
  Rat at_minus_one() const { return eval(Rat(-1)); }

  // True when every denominator is a power of two.
  bool dyadic() const;

  // Canonical text: descending powers, explicit rational coefficients,
  // "u^-2" style for negative exponents.  Re-parses via parse_betapoly.
  std::string str() const;

 private:
  std::map<int, Rat> c_;
};

// Parser for the printed form (variable u, integer exponents possibly
// negative after '^').
BetaPoly parse_betapoly(const std::string& text);

// Convenience: the polynomial u - 1 (class of the punctured affine line).
BetaPoly beta_torus();

}  // namespace motfib
