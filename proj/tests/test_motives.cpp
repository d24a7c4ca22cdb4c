#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "motfib/betapoly.hpp"
#include "motfib/errors.hpp"
#include "motfib/motives.hpp"
#include "motfib/upoly.hpp"

using namespace motfib;

namespace {

BetaPoly U() { return BetaPoly::u(); }
BetaPoly C(long k) { return BetaPoly(Rat(k)); }

UPoly up(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return UPoly(std::move(v));
}

ErrKind thrown_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrKind::InternalError;
}

struct MiniUF {
  std::vector<size_t> p;
  explicit MiniUF(size_t n) : p(n) { std::iota(p.begin(), p.end(), size_t{0}); }
  size_t find(size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(size_t a, size_t b) { p[find(a)] = find(b); }
};

// Independent tracer for the full affine curve { z^2 = v }: glue the explicit
// square-root branches by elementary sign reasoning (no gcd/parity tables) and
// assemble the class from normalization circles and boundary places.  Works
// when every real root of v is rational.
BetaPoly traced_square_curve(const UPoly& v) {
  REQUIRE(!v.is_zero());
  REQUIRE(irrational_real_roots(v).empty());
  std::vector<Rat> roots;
  std::vector<long> mult;
  for (const auto& [r, m] : rational_roots(v)) {
    roots.push_back(r);
    mult.push_back(m);
  }
  const size_t k = roots.size();
  std::vector<int> s(k + 1);
  for (size_t i = 0; i <= k; ++i) {
    Rat sample;
    if (k == 0)
      sample = 0;
    else if (i == 0)
      sample = roots.front() - 1;
    else if (i == k)
      sample = roots.back() + 1;
    else
      sample = (roots[i - 1] + roots[i]) / 2;
    s[i] = v.sign_at(sample);
    REQUIRE(s[i] != 0);
  }

  MiniUF uf(2 * (k + 1));
  auto P = [](size_t i) { return 2 * i; };
  auto M = [](size_t i) { return 2 * i + 1; };
  std::vector<char> present(2 * (k + 1), 0);
  for (size_t i = 0; i <= k; ++i)
    if (s[i] > 0) present[P(i)] = present[M(i)] = 1;

  long boundary = 0;  // removed places plus node/point corrections
  for (size_t j = 0; j < k; ++j) {
    const int sl = s[j], sr = s[j + 1];
    const long m = mult[j];
    if (sl > 0 && sr > 0) {
      REQUIRE(m % 2 == 0);
      const bool flip = ((m / 2) % 2 == 1);
      if (flip) {
        uf.unite(P(j), M(j + 1));
        uf.unite(M(j), P(j + 1));
      } else {
        uf.unite(P(j), P(j + 1));
        uf.unite(M(j), M(j + 1));
      }
      boundary += 1;  // node: two branches through one curve point
    } else if (sl > 0 && sr < 0) {
      uf.unite(P(j), M(j));  // smooth turning point, on the curve
    } else if (sl < 0 && sr > 0) {
      uf.unite(P(j + 1), M(j + 1));
    } else {
      boundary -= 1;  // isolated real point of the curve
    }
  }

  const long D = v.deg();
  const int lead = sgn(v.lead());
  if (D % 2 == 1) {
    if (lead > 0)
      uf.unite(P(k), M(k));
    else
      uf.unite(P(0), M(0));
    boundary += 1;
  } else if (lead > 0) {
    const bool flip = ((D / 2) % 2 == 1);
    if (flip) {
      uf.unite(P(k), M(0));
      uf.unite(M(k), P(0));
    } else {
      uf.unite(P(k), P(0));
      uf.unite(M(k), M(0));
    }
    boundary += 2;
  }

  std::vector<char> seen(2 * (k + 1), 0);
  long circles = 0;
  for (size_t i = 0; i < 2 * (k + 1); ++i)
    if (present[i]) {
      size_t r = uf.find(i);
      if (!seen[r]) {
        seen[r] = 1;
        ++circles;
      }
    }
  return (U() + C(1)) * Rat(circles) - C(boundary);
}

}  // namespace

TEST_CASE("symbol helpers") {
  CHECK(symbol_name(Symbol::Plus1) == std::string("+1"));
  CHECK(symbol_name(Symbol::Neg) == std::string("neg"));
  CHECK(parse_symbol("+1") == Symbol::Plus1);
  CHECK(parse_symbol("-1") == Symbol::Minus1);
  CHECK(parse_symbol("pos") == Symbol::Pos);
  CHECK(parse_symbol("neg") == Symbol::Neg);
  CHECK(!parse_symbol("plus").has_value());
  CHECK(symbol_is_tube(Symbol::Pos));
  CHECK(!symbol_is_tube(Symbol::Minus1));
  CHECK(symbol_sigma(Symbol::Neg) == -1);
  CHECK(symbol_sigma(Symbol::Pos) == 1);
}

TEST_CASE("catalog shapes") {
  CHECK(beta_constructible({ConstructibleShape::Points, 3}) == C(3));
  CHECK(beta_constructible({ConstructibleShape::AffinePower, 2}) ==
        BetaPoly::u_power(2));
  CHECK(beta_constructible({ConstructibleShape::TorusPower, 2}) ==
        beta_torus() * beta_torus());
  CHECK(beta_constructible({ConstructibleShape::ProjLine, 0}) == U() + C(1));
  CHECK(beta_constructible({ConstructibleShape::PuncturedProjLine, 2}) ==
        U() - C(1));
}

TEST_CASE("circle cover seam cases") {
  // single cut of order zero, positive weight: the seam twist decides whether
  // the double cover closes into one circle or two
  std::vector<int> plus = {1};
  CoverCount with_flip = circle_cover(2, {{0, false, true}}, plus);
  CHECK(with_flip.circles == 1);
  CHECK(with_flip.removed_places == 0);
  CoverCount no_flip = circle_cover(2, {{0, false, false}}, plus);
  CHECK(no_flip.circles == 2);
  CoverCount odd_deg = circle_cover(3, {{0, false, true}}, plus);
  CHECK(odd_deg.circles == 1);
  CHECK(thrown_kind([] { circle_cover(2, {}, {}); }) == ErrKind::InternalError);
  CHECK(thrown_kind([] {
          circle_cover(2, {{0, false, false}}, {0});
        }) == ErrKind::InternalError);
}

TEST_CASE("full affine square-root curves") {
  // constants
  CHECK(affine_power_curve_class(2, up({2})) == C(2) * U());
  CHECK(affine_power_curve_class(2, up({-1})).is_zero());
  CHECK(affine_power_curve_class(3, up({5})) == U());
  // parabola and crossing lines
  CHECK(affine_power_curve_class(2, up({0, 1})) == U());
  CHECK(affine_power_curve_class(3, up({0, 1})) == U());
  CHECK(affine_power_curve_class(3, up({0, 0, 1})) == U());
  CHECK(affine_power_curve_class(2, up({0, 0, 1})) == C(2) * U() - C(1));
  CHECK(affine_power_curve_class(2, up({0, 0, 2})) == C(2) * U() - C(1));
  CHECK(affine_power_curve_class(2, up({0, 0, 0, 0, 1})) == C(2) * U() - C(1));
  // definite quartics and conics
  CHECK(affine_power_curve_class(2, up({1, 0, 1})) == U() - C(1));
  CHECK(affine_power_curve_class(2, up({-1, 0, 1})) == U() - C(1));
  CHECK(affine_power_curve_class(2, up({1, 0, -1})) == U() + C(1));
  CHECK(affine_power_curve_class(2, up({-1, 0, 0, 0, 1})) == U() - C(1));
  CHECK(affine_power_curve_class(2, up({1, 0, 0, 0, -1})) == U() + C(1));
  // cuspidal cubic shapes
  CHECK(affine_power_curve_class(2, up({0, 0, 0, -1, 1})) == U() - C(1));
  CHECK(affine_power_curve_class(2, up({0, 0, 0, 1, -1})) == U() + C(1));
  CHECK(affine_power_curve_class(2, up({0, 0, 1, -1})) == U() - C(1));
  CHECK(affine_power_curve_class(2, up({0, 0, -1, 1})) == U() + C(1));
  // graph-like odd example
  CHECK(affine_power_curve_class(2, up({0, 1, 0, 1})) == U());
}

TEST_CASE("square-root curves against independent tracer") {
  CHECK(traced_square_curve(up({0, 0, 1})) == C(2) * U() - C(1));
  CHECK(traced_square_curve(up({1, 0, 1})) == U() - C(1));
  CHECK(traced_square_curve(up({1, 0, -1})) == U() + C(1));

  std::mt19937_64 rng(20240817u);
  auto rnd = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  for (int iter = 0; iter < 300; ++iter) {
    UPoly v(Rat(rnd(0, 1) ? 1 : -1) * Rat(rnd(1, 3)));
    const long nroots = rnd(0, 3);
    std::vector<long> used;
    for (long i = 0; i < nroots; ++i) {
      long r = rnd(-3, 3);
      if (std::find(used.begin(), used.end(), r) != used.end()) continue;
      used.push_back(r);
      long m = rnd(1, 3);
      UPoly lin = UPoly::x() - UPoly(Rat(r));
      for (long j = 0; j < m; ++j) v = v * lin;
    }
    if (rnd(0, 2) == 0) {
      // positive-definite quadratic factor keeps real roots rational
      long a = rnd(-2, 2);
      long b = rnd(1, 4);
      UPoly quad = up({a * a + b, 0, 1}) + UPoly::monomial(Rat(2 * a), 1);
      v = v * quad;
    }
    CAPTURE(v.str());
    CHECK(affine_power_curve_class(2, v) == traced_square_curve(v));
  }
}

TEST_CASE("cover curves over a marked line") {
  // {t^2 * s = 1} minus the fibre over marked points
  CHECK(affine_cover_class(2, up({0, 1}), 1, {Rat(0)}) == U() - C(1));
  CHECK(affine_cover_class(2, up({0, 1}), 1, {}) == U() - C(1));
  CHECK(affine_cover_class(2, up({0, 1}), 1, {Rat(0), Rat(1)}) == U() - C(3));
  CHECK(affine_cover_class(2, up({1, 0, 1}), 1, {}) == U() - C(1));
  CHECK(affine_cover_class(2, up({1, 0, 1}), -1, {}).is_zero());
  CHECK(affine_cover_class(2, up({1}), 1, {}) == C(2) * U());
  CHECK(affine_cover_class(3, up({1}), 1, {}) == U());
  CHECK(affine_cover_class(4, up({1}), 1, {}) == C(2) * U());
  CHECK(affine_cover_class(4, up({0, 0, 1}), 1, {Rat(0)}) == C(2) * U() - C(2));
}

TEST_CASE("sign condition recursion") {
  ConstructibleShape line{ConstructibleShape::AffinePower, 1};
  ConstructibleShape plane{ConstructibleShape::AffinePower, 2};
  ConstructibleShape torus{ConstructibleShape::TorusPower, 1};

  CHECK(beta_sign_recursion(line, up({0, 1})) == beta_torus() * Rat(1, 2));
  CHECK(beta_sign_recursion(line, up({-1, 0, 1})) == (U() - C(3)) * Rat(1, 2));
  CHECK(beta_sign_recursion(line, up({1, 0, -1})) == beta_torus() * Rat(1, 2));
  CHECK(beta_sign_recursion(line, up({1, 0, 1})) ==
        (C(3) * U() - C(1)) * Rat(1, 4));
  CHECK(chi_c(beta_sign_recursion(line, up({1, 0, 1}))) == Rat(-1));
  CHECK(beta_sign_recursion(line, up({-1, 0, -1})) == (U() + C(1)) * Rat(1, 4));
  CHECK(chi_c(beta_sign_recursion(line, up({-1, 0, -1}))) == Rat(0));
  CHECK(beta_sign_recursion(torus, up({0, 1})) == beta_torus() * Rat(1, 2));
  CHECK(beta_sign_recursion(plane, up({0, 1})) ==
        beta_torus() * U() * Rat(1, 2));
  // constants
  CHECK(beta_sign_recursion(line, up({7})) == U());
  CHECK(beta_sign_recursion(line, up({-7})).is_zero());
  CHECK(beta_sign_recursion(line, UPoly()).is_zero());
  CHECK(beta_sign_recursion({ConstructibleShape::Points, 3}, up({2})) == C(3));
  CHECK(beta_sign_recursion({ConstructibleShape::Points, 3}, up({-2})).is_zero());
  CHECK(thrown_kind([&] {
          beta_sign_recursion({ConstructibleShape::Points, 3}, up({0, 1}));
        }) == ErrKind::UnsupportedShape);
  CHECK(thrown_kind([&] {
          beta_sign_recursion({ConstructibleShape::ProjLine, 0}, up({0, 1}));
        }) == ErrKind::UnsupportedShape);
}

TEST_CASE("class relations on the catalog") {
  auto all_good = [](const RelationReport& r) {
    return r.partition_holds && r.sign_split_holds && r.integral_chi;
  };
  CHECK(all_good(verify_relations({ConstructibleShape::AffinePower, 1},
                                  up({-1, 0, 1}))));
  CHECK(all_good(verify_relations({ConstructibleShape::AffinePower, 1},
                                  up({1, 0, 1}))));
  CHECK(all_good(verify_relations({ConstructibleShape::TorusPower, 1},
                                  up({0, -1, 0, 1}))));
  CHECK(all_good(verify_relations({ConstructibleShape::AffinePower, 2},
                                  up({0, 0, -1, 1}))));
  CHECK(all_good(verify_relations({ConstructibleShape::Points, 2}, UPoly())));
  CHECK(all_good(verify_relations({ConstructibleShape::Points, 2}, up({5}))));

  std::mt19937_64 rng(911u);
  auto rnd = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  for (int iter = 0; iter < 150; ++iter) {
    ConstructibleShape base;
    base.kind = rnd(0, 1) ? ConstructibleShape::AffinePower
                          : ConstructibleShape::TorusPower;
    base.count = rnd(1, 3);
    std::vector<Rat> cs;
    const long d = rnd(0, 4);
    for (long i = 0; i <= d; ++i) cs.emplace_back(rnd(-4, 4));
    UPoly q(std::move(cs));
    if (rnd(0, 1)) {
      UPoly lin = UPoly::x() - UPoly(Rat(rnd(-2, 2)));
      q = q * lin * lin;  // force a multiple root sometimes
    }
    if (q.is_zero()) q = up({1});
    CAPTURE(q.str());
    RelationReport rep = verify_relations(base, q);
    CHECK(rep.partition_holds);
    CHECK(rep.sign_split_holds);
    CHECK(rep.integral_chi);
  }
}

TEST_CASE("curve descriptors") {
  CurveDescriptor pts{CurveDescriptor::FinitePoints, 3};
  CHECK(beta_curve(pts) == C(3));
  CurveDescriptor pl{CurveDescriptor::PuncturedLine, 2};
  CHECK(beta_curve(pl) == U() - C(2));

  CurveDescriptor se;
  se.kind = CurveDescriptor::Superelliptic;
  se.N = 2;
  se.w = up({1, 0, 1});
  se.target = Symbol::Plus1;
  CHECK(beta_curve(se) == U() - C(1));
  se.target = Symbol::Minus1;
  CHECK(beta_curve(se).is_zero());

  se.w = up({0, 1});
  se.punctures = {Rat(0)};
  se.target = Symbol::Plus1;
  CHECK(beta_curve(se) == U() - C(1));

  // vanishing weight must be punctured, and punctures must be rational
  CurveDescriptor bad = se;
  bad.w = up({1, 0, -1});
  bad.punctures = {};
  CHECK(thrown_kind([&] { beta_curve(bad); }) ==
        ErrKind::UnitVanishesOnStratum);
  bad.w = up({-2, 0, 1});
  CHECK(thrown_kind([&] { beta_curve(bad); }) ==
        ErrKind::UnitVanishesOnStratum);

  // tube targets
  CurveDescriptor tube;
  tube.kind = CurveDescriptor::Superelliptic;
  tube.N = 2;
  tube.w = up({1});
  tube.target = Symbol::Pos;
  CHECK(beta_curve(tube) == U() * beta_torus());
  tube.target = Symbol::Neg;
  CHECK(beta_curve(tube).is_zero());
  tube.punctures = {Rat(3)};
  tube.target = Symbol::Pos;
  CHECK(beta_curve(tube) == beta_torus() * beta_torus());
  tube.w = up({0, 1});
  tube.punctures = {Rat(0)};
  CHECK(beta_curve(tube) == beta_torus() * beta_torus() * Rat(1, 2));
  tube.N = 3;
  tube.target = Symbol::Pos;
  BetaPoly rays = (U() - C(1)) * beta_torus() * Rat(1, 2);
  CHECK(beta_curve(tube) == rays);
  tube.target = Symbol::Neg;
  CHECK(beta_curve(tube) == rays);
}

TEST_CASE("formula atoms and dyadic classes") {
  FormulaAtom bare{{ConstructibleShape::TorusPower, 2}, std::nullopt};
  CHECK(beta_atom(bare) == beta_torus() * beta_torus());
  FormulaAtom cond{{ConstructibleShape::AffinePower, 1}, up({-1, 0, 1})};
  CHECK(beta_atom(cond) == (U() - C(3)) * Rat(1, 2));
  CHECK(beta_atom(cond).dyadic());
  CHECK(chi_c(beta_atom(cond)) == Rat(-2));
}
