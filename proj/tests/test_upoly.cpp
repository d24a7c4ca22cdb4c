#include <doctest.h>

#include "motfib/upoly.hpp"

using namespace motfib;

namespace {
UPoly P(std::vector<long> coeffs) {
  std::vector<Rat> v;
  for (long c : coeffs) v.emplace_back(c);
  return UPoly(std::move(v));
}
}  // namespace

TEST_CASE("arithmetic basics") {
  UPoly a = P({1, 2, 1});  // (x+1)^2
  UPoly b = P({1, 1});
  CHECK(b * b == a);
  CHECK(a - a == UPoly());
  CHECK((a + b).deg() == 2);
  CHECK(a.derivative() == P({2, 2}));
  CHECK(a.eval(Rat(2)) == Rat(9));
  CHECK(P({0, 0, 3}).coeff(2) == Rat(3));
}

TEST_CASE("division gcd squarefree") {
  UPoly a = P({-1, 0, 1});  // x^2-1
  UPoly b = P({1, 1});      // x+1
  auto [q, r] = UPoly::divmod(a, b);
  CHECK(r.is_zero());
  CHECK(q == P({-1, 1}));
  CHECK(UPoly::gcd(a, b) == b.monic());
  UPoly c = P({0, 0, 1}) * P({-1, 1}) * P({-1, 1});  // x^2 (x-1)^2
  CHECK(c.squarefree_part() == (P({0, 1}) * P({-1, 1})).monic());
  auto dec = c.squarefree_decomposition();
  REQUIRE(dec.size() == 1);
  CHECK(dec[0].second == 2);
  CHECK(dec[0].first.deg() == 2);
}

TEST_CASE("shift reverse scale") {
  UPoly a = P({0, 0, 1});  // x^2
  CHECK(a.shifted(Rat(1)) == P({1, 2, 1}));
  CHECK(a.scaled_arg(Rat(2)) == P({0, 0, 4}));
  // x^3 * p(1/x) with p = x^2 + 2 -> 2x^3 + x
  CHECK(P({2, 0, 1}).reversed(3) == P({0, 1, 0, 2}));
}

TEST_CASE("sturm root counting") {
  UPoly p = P({-2, 0, 1});  // x^2-2
  SturmChain s = sturm_chain(p);
  CHECK(sturm_count_all(s) == 2);
  CHECK(sturm_count(s, Rat(0), Rat(2)) == 1);
  CHECK(sturm_count(s, Rat(-2), Rat(0)) == 1);
  UPoly q = P({1, 0, 1});  // x^2+1
  CHECK(sturm_count_all(sturm_chain(q)) == 0);
}

TEST_CASE("isolation and rational roots") {
  // (x-1/2)(x-3)^2 (x^2-2)
  UPoly p = (P({-1, 2}) * P({3, -1}) * P({3, -1}) * P({-2, 0, 1}));
  auto rr = rational_roots(p);
  REQUIRE(rr.size() == 2);
  CHECK(rr[0].first == Rat(1) / 2);
  CHECK(rr[0].second == 1);
  CHECK(rr[1].first == Rat(3));
  CHECK(rr[1].second == 2);
  auto ir = irrational_real_roots(p);
  REQUIRE(ir.size() == 2);
  CHECK(ir[0].first.approx() < 0);
  CHECK(ir[1].first.approx() > 0);
  CHECK(ir[0].second == 1);
}

TEST_CASE("simplest rational in interval") {
  CHECK(simplest_rational_in(Rat(1) / 3, Rat(1) / 2) == Rat(1) / 2);
  CHECK(simplest_rational_in(Rat(-1) / 3, Rat(1) / 7) == Rat(0));
  CHECK(simplest_rational_in(Rat(5) / 2, Rat(7) / 2) == Rat(3));
  CHECK(simplest_rational_in(Rat(7) / 5, Rat(10) / 7) == Rat(7) / 5);
}

TEST_CASE("sign at algebraic number") {
  UPoly p = P({-2, 0, 1});  // x^2-2
  auto roots = irrational_real_roots(p);
  REQUIRE(roots.size() == 2);
  const AlgNum& sqrt2 = roots[1].first;
  CHECK(sign_at_alg(P({-1, 1}), sqrt2) == 1);   // sqrt2 - 1 > 0
  CHECK(sign_at_alg(P({-2, 1}), sqrt2) == -1);  // sqrt2 - 2 < 0
  CHECK(sign_at_alg(P({-2, 0, 1}), sqrt2) == 0);
  CHECK(sign_at_alg(P({-4, 0, 0, 0, 1}), sqrt2) == 0);  // x^4 - 4
}

TEST_CASE("matrix determinant over polynomials") {
  UPoly t = UPoly::x();
  UPoly one(Rat(1));
  // det [[t, 1], [1, t]] = t^2 - 1
  UPoly d = upoly_det({{t, one}, {one, t}});
  CHECK(d == P({-1, 0, 1}));
  UPoly z = upoly_det({{t, t}, {t, t}});
  CHECK(z.is_zero());
}

TEST_CASE("primitive integer form") {
  UPoly p = P({1, 2}) * (Rat(3) / 4);
  auto z = p.primitive_int();
  REQUIRE(z.size() == 2);
  CHECK(z[0] == 1);
  CHECK(z[1] == 2);
}
