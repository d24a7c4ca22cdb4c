#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motfib/rational.hpp"

namespace motfib {

// Dense univariate polynomial over Q.  Coefficient i is the coefficient of
// x^i; the vector never ends in a zero (zero polynomial = empty vector).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(const Rat& constant);
  explicit UPoly(std::vector<Rat> coeffs);
  static UPoly monomial(const Rat& coeff, size_t deg);
  static UPoly x();  // the identity coordinate

  bool is_zero() const { return c_.empty(); }
  long deg() const { return static_cast<long>(c_.size()) - 1; }  // -1 if zero
  Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& lead() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rat& s) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return c_ != o.c_; }

  UPoly derivative() const;
  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const { return motfib::sgn(eval(x)); }
  int sign_at_pos_inf() const;
  int sign_at_neg_inf() const;
  UPoly shifted(const Rat& t) const;        // p(x + t)
  UPoly scaled_arg(const Rat& s) const;     // p(s * x)
  UPoly reversed(long n) const;             // x^n * p(1/x); requires n >= deg
  UPoly monic() const;

  // Division with remainder over Q; b must be nonzero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  UPoly divexact(const UPoly& b) const;  // InternalError if not divisible
  static UPoly gcd(UPoly a, UPoly b);    // monic normal form (or zero)

  UPoly squarefree_part() const;
  // Yun decomposition: list of (factor, multiplicity) with factors squarefree,
  // pairwise coprime, product of factor^multiplicity = this up to a constant.
  std::vector<std::pair<UPoly, int>> squarefree_decomposition() const;

  // Multiply out denominators and divide by integer content; returns the
  // integer coefficient vector (empty for zero).
  std::vector<Int> primitive_int() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// ---- real root machinery (Sturm) ----

struct SturmChain {
  std::vector<UPoly> seq;
};

SturmChain sturm_chain(const UPoly& p);
int sturm_variations(const SturmChain& s, const Rat& x);
int sturm_variations_pos_inf(const SturmChain& s);
int sturm_variations_neg_inf(const SturmChain& s);
// number of distinct real roots in (lo, hi]; endpoints must not be roots of
// the leading chain element's squarefree core for exactness (we use non-root
// endpoints throughout).
long sturm_count(const SturmChain& s, const Rat& lo, const Rat& hi);
long sturm_count_all(const SturmChain& s);

// A bound B with all real roots in (-B, B).
Rat root_bound(const UPoly& p);

// Each isolated root: open interval (lo, hi) containing exactly one real root,
// with p(lo) != 0 != p(hi).  Input must be squarefree.
struct RootInterval {
  Rat lo, hi;
};
std::vector<RootInterval> isolate_real_roots(const UPoly& squarefree);

// The rational of smallest denominator in [lo, hi].
Rat simplest_rational_in(const Rat& lo, const Rat& hi);

// All rational roots with multiplicities, ascending.
std::vector<std::pair<Rat, int>> rational_roots(const UPoly& p);

// A real algebraic number: unique root of the squarefree q in (lo, hi).
struct AlgNum {
  UPoly q;
  Rat lo, hi;
  void refine();                    // halve the interval
  void refine_below_width(const Rat& w);
  Rat approx() const { return (lo + hi) / 2; }
};

// Irrational real roots with multiplicities, ascending.
std::vector<std::pair<AlgNum, int>> irrational_real_roots(const UPoly& p);

// Exact sign of g at the algebraic number r (0 if g(r) = 0).
int sign_at_alg(const UPoly& g, const AlgNum& r);

// Fraction-free determinant of a matrix with UPoly entries (Bareiss).
UPoly upoly_det(std::vector<std::vector<UPoly>> m);

}  // namespace motfib
