#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "motfib/rational.hpp"
#include "motfib/upoly.hpp"

namespace motfib {

// Exponent-vector order: total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const;
};

// Sparse multivariate polynomial over Q with a fixed, ordered variable list.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  Polynomial(std::vector<std::string> vars, const Rat& constant);

  static Polynomial variable(const std::vector<std::string>& vars, size_t index);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<std::vector<unsigned>, Rat, GradedLex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant()

  void add_term(const std::vector<unsigned>& exp, const Rat& coeff);
  Rat coeff(const std::vector<unsigned>& exp) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rat& s) const;
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial pow(unsigned long e) const;
  Polynomial derivative(size_t var) const;
  Rat eval(const std::vector<Rat>& point) const;
  // Substitute images[i] for variable i; images share one variable list.
  Polynomial compose(const std::vector<Polynomial>& images) const;

  long total_degree() const;                  // -1 for zero
  std::optional<long> order_at_origin() const;  // lowest total degree; nullopt for zero
  long degree_in(size_t var) const;           // -1 for zero
  long order_in(size_t var) const;            // min exponent of var; 0 for zero? -> -1 for zero

  // Nested view: coefficients of main_var^i as polynomials in the others
  // (same variable list, main_var absent from each coefficient).
  std::vector<Polynomial> nested(size_t main_var) const;
  static Polynomial from_nested(const std::vector<Polynomial>& coeffs, size_t main_var);

  // One-variable conversions.
  bool uses_only(size_t var) const;
  UPoly to_upoly(size_t var) const;  // requires uses_only(var)
  static Polynomial from_upoly(const UPoly& p, const std::vector<std::string>& vars, size_t var);

  std::string str() const;

 private:
  std::vector<std::string> vars_;
  std::map<std::vector<unsigned>, Rat, GradedLex> terms_;
};

// Parse with the fixed variable list; tokens are integers, rationals p/q,
// identifiers, + - * ^ and parentheses.  No implicit multiplication.
// SyntaxError / UnknownVariable carry the source position.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

// ---- bivariate helpers (two-variable polynomials; main variable = index 1) ----

// Gcd in Q[v0][v1] via the primitive polynomial remainder sequence.
Polynomial bivariate_gcd(const Polynomial& f, const Polynomial& g);
Polynomial bivariate_squarefree_part(const Polynomial& f);
// Exact division (InternalError when not divisible).
Polynomial bivariate_divexact(const Polynomial& f, const Polynomial& g);

}  // namespace motfib
