#include "motfib/motives.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "motfib/errors.hpp"

namespace motfib {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::Plus1: return "+1";
    case Symbol::Minus1: return "-1";
    case Symbol::Pos: return "pos";
    case Symbol::Neg: return "neg";
  }
  return "?";
}

std::optional<Symbol> parse_symbol(const std::string& t) {
  if (t == "+1") return Symbol::Plus1;
  if (t == "-1") return Symbol::Minus1;
  if (t == "pos") return Symbol::Pos;
  if (t == "neg") return Symbol::Neg;
  return std::nullopt;
}

bool symbol_is_tube(Symbol s) { return s == Symbol::Pos || s == Symbol::Neg; }

int symbol_sigma(Symbol s) {
  return (s == Symbol::Plus1 || s == Symbol::Pos) ? 1 : -1;
}

BetaPoly beta_constructible(const ConstructibleShape& shape) {
  switch (shape.kind) {
    case ConstructibleShape::Points:
      return BetaPoly(Rat(shape.count));
    case ConstructibleShape::AffinePower:
      return BetaPoly::u_power(static_cast<int>(shape.count));
    case ConstructibleShape::TorusPower:
      return beta_torus().pow(static_cast<unsigned long>(shape.count));
    case ConstructibleShape::ProjLine:
      return BetaPoly::u() + BetaPoly(Rat(1));
    case ConstructibleShape::PuncturedProjLine:
      return BetaPoly::u() + BetaPoly(Rat(1 - shape.count));
  }
  fail(ErrKind::InternalError, "beta_constructible", "unknown shape kind");
}

// ---- circle cover machine ----

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), size_t{0});
  }
  size_t find(size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

CoverCount circle_cover(long N, const std::vector<CircleCut>& cuts,
                        const std::vector<int>& signs) {
  if (N < 1) fail(ErrKind::InternalError, "circle_cover", "degree must be positive");
  const size_t K = cuts.size();
  if (K == 0 || signs.size() != K)
    fail(ErrKind::InternalError, "circle_cover", "cut/sign lists malformed");
  for (int s : signs)
    if (s == 0) fail(ErrKind::InternalError, "circle_cover", "zero interval sign");

  const bool even = (N % 2 == 0);
  // Strand slots: 2*i = upper strand of interval i, 2*i+1 = lower strand.
  // Odd degree uses only the 2*i slot.
  UnionFind uf(2 * K);
  std::vector<char> present(2 * K, 0);
  for (size_t i = 0; i < K; ++i) {
    if (!even) {
      present[2 * i] = 1;
    } else if (signs[i] > 0) {
      present[2 * i] = present[2 * i + 1] = 1;
    }
  }

  CoverCount out;
  out.places.assign(K, 0);
  for (size_t j = 0; j < K; ++j) {
    const size_t L = (j + K - 1) % K;  // interval ending at cut j
    const size_t R = j;                // interval starting at cut j
    const int sl = signs[L], sr = signs[R];
    long pl = 0;
    if (!even) {
      uf.unite(2 * L, 2 * R);
      pl = 1;
    } else if (sl < 0 && sr < 0) {
      pl = 0;
    } else if (sl > 0 && sr < 0) {
      uf.unite(2 * L, 2 * L + 1);
      pl = 1;
    } else if (sl < 0 && sr > 0) {
      uf.unite(2 * R, 2 * R + 1);
      pl = 1;
    } else {
      const long d = std::gcd(N, cuts[j].e < 0 ? -cuts[j].e : cuts[j].e);
      const long rstar = N / d;
      const long mstar = (cuts[j].e < 0 ? -cuts[j].e : cuts[j].e) / d;
      if (rstar % 2 == 1) {
        const bool twist = ((mstar % 2) == 1) != cuts[j].flip;
        if (twist) {
          uf.unite(2 * L, 2 * R + 1);
          uf.unite(2 * L + 1, 2 * R);
        } else {
          uf.unite(2 * L, 2 * R);
          uf.unite(2 * L + 1, 2 * R + 1);
        }
      } else {
        uf.unite(2 * L, 2 * L + 1);
        uf.unite(2 * R, 2 * R + 1);
      }
      pl = 2;
    }
    out.places[j] = pl;
    if (cuts[j].remove) out.removed_places += pl;
  }

  std::set<size_t> roots;
  for (size_t i = 0; i < 2 * K; ++i)
    if (present[i]) roots.insert(uf.find(i));
  out.circles = static_cast<long>(roots.size());
  return out;
}

// ---- line cut preparation ----

std::string LinePos::str() const {
  if (rational) return rat_str(r);
  return "root of " + a.q.str() + " in (" + rat_str(a.lo) + "," + rat_str(a.hi) + ")";
}

namespace {

// A rational strictly between consecutive cuts (refines algebraic intervals).
Rat sample_between(LineCut& a, LineCut& b) {
  if (a.pos.rational && b.pos.rational) return (a.pos.r + b.pos.r) / 2;
  if (a.pos.rational) {
    AlgNum& x = b.pos.a;
    while (!(x.lo > a.pos.r)) x.refine();
    return x.lo;
  }
  if (b.pos.rational) {
    AlgNum& x = a.pos.a;
    while (!(x.hi < b.pos.r)) x.refine();
    return x.hi;
  }
  AlgNum& xa = a.pos.a;
  AlgNum& xb = b.pos.a;
  while (!(xa.hi <= xb.lo)) {
    xa.refine();
    xb.refine();
  }
  return xa.hi;
}

}  // namespace

LineCutData prepare_line_cuts(const UPoly& w, const std::vector<Rat>& extra_marks) {
  if (w.is_zero())
    fail(ErrKind::InternalError, "prepare_line_cuts", "zero weight polynomial");

  std::map<Rat, long> rat_cuts;
  for (const auto& [r, m] : rational_roots(w)) rat_cuts[r] = m;
  for (const auto& q : extra_marks) rat_cuts.emplace(q, 0);

  auto irr = irrational_real_roots(w);
  for (auto& [a, m] : irr)
    for (const auto& [r, mu] : rat_cuts) {
      (void)mu;
      while (a.lo < r && r < a.hi) a.refine();
    }

  LineCutData out;
  auto rit = rat_cuts.begin();
  size_t ii = 0;
  while (rit != rat_cuts.end() || ii < irr.size()) {
    bool take_rat;
    if (rit == rat_cuts.end()) {
      take_rat = false;
    } else if (ii == irr.size()) {
      take_rat = true;
    } else {
      take_rat = (rit->first <= irr[ii].first.lo);
    }
    LineCut cut;
    if (take_rat) {
      cut.pos.rational = true;
      cut.pos.r = rit->first;
      cut.e = rit->second;
      ++rit;
    } else {
      cut.pos.rational = false;
      cut.pos.a = irr[ii].first;
      cut.e = irr[ii].second;
      ++ii;
    }
    out.cuts.push_back(std::move(cut));
  }

  const size_t K = out.cuts.size();
  out.signs.assign(K + 1, 0);
  if (K == 0) {
    out.signs[0] = w.sign_at_pos_inf();
  } else {
    out.signs[0] = w.sign_at_neg_inf();
    out.signs[K] = w.sign_at_pos_inf();
    for (size_t i = 1; i < K; ++i) {
      Rat s = sample_between(out.cuts[i - 1], out.cuts[i]);
      out.signs[i] = w.sign_at(s);
      if (out.signs[i] == 0)
        fail(ErrKind::InternalError, "prepare_line_cuts", "sample hit a root");
    }
  }
  return out;
}

// ---- affine curve classes ----

namespace {

// Assemble circle data for the affine line: the K finite cuts followed by the
// compactifying cut at infinity; interval i of the circle is the affine
// interval i+1, and the interval after infinity is the leftmost affine one.
struct CircleData {
  std::vector<CircleCut> cuts;
  std::vector<int> signs;
};

CircleData close_up_line(const LineCutData& line, long e_inf, bool remove_finite,
                         bool remove_inf) {
  CircleData c;
  const size_t K = line.cuts.size();
  for (size_t j = 0; j < K; ++j)
    c.cuts.push_back({line.cuts[j].e, remove_finite, false});
  c.cuts.push_back({e_inf, remove_inf, false});
  for (size_t j = 0; j + 1 < K + 1; ++j) c.signs.push_back(line.signs[j + 1]);
  c.signs.push_back(line.signs[0]);
  return c;
}

}  // namespace

BetaPoly affine_power_curve_class(long N, const UPoly& v) {
  if (N < 1)
    fail(ErrKind::InternalError, "affine_power_curve_class", "degree must be positive");
  if (v.is_zero())
    fail(ErrKind::InternalError, "affine_power_curve_class", "zero right-hand side");
  LineCutData line = prepare_line_cuts(v, {});
  CircleData circ = close_up_line(line, v.deg(), /*remove_finite=*/false,
                                  /*remove_inf=*/true);
  CoverCount cc = circle_cover(N, circ.cuts, circ.signs);
  long corrections = 0;  // points of the curve over roots are honest points
  for (size_t j = 0; j < line.cuts.size(); ++j)
    corrections += cc.places[j] - 1;
  BetaPoly out = (BetaPoly::u() + BetaPoly(Rat(1))) * Rat(cc.circles);
  return out - BetaPoly(Rat(cc.removed_places + corrections));
}

BetaPoly affine_cover_class(long N, const UPoly& w, int sigma,
                            const std::vector<Rat>& marks) {
  if (N < 1)
    fail(ErrKind::InternalError, "affine_cover_class", "degree must be positive");
  if (w.is_zero())
    fail(ErrKind::InternalError, "affine_cover_class", "zero weight");
  if (sigma != 1 && sigma != -1)
    fail(ErrKind::InternalError, "affine_cover_class", "sigma must be +-1");
  UPoly sw = (sigma == 1) ? w : -w;
  LineCutData line = prepare_line_cuts(sw, marks);
  CircleData circ = close_up_line(line, w.deg(), /*remove_finite=*/true,
                                  /*remove_inf=*/true);
  CoverCount cc = circle_cover(N, circ.cuts, circ.signs);
  BetaPoly out = (BetaPoly::u() + BetaPoly(Rat(1))) * Rat(cc.circles);
  return out - BetaPoly(Rat(cc.removed_places));
}

// ---- sign-condition recursion ----

namespace {

long distinct_real_roots(const UPoly& p) {
  return sturm_count_all(sturm_chain(p));
}

}  // namespace

BetaPoly beta_sign_recursion(const ConstructibleShape& base, const UPoly& p) {
  const bool constant = p.is_zero() || p.deg() == 0;
  const int csign = p.is_zero() ? 0 : sgn(p.coeff(0));

  switch (base.kind) {
    case ConstructibleShape::Points:
      if (!constant)
        fail(ErrKind::UnsupportedShape, "beta_sign_recursion",
             "sign condition on a point set must be constant");
      return csign > 0 ? beta_constructible(base) : BetaPoly();
    case ConstructibleShape::AffinePower:
    case ConstructibleShape::TorusPower:
      break;
    default:
      fail(ErrKind::UnsupportedShape, "beta_sign_recursion",
           "sign conditions supported on affine and torus bases only");
  }

  const bool torus = (base.kind == ConstructibleShape::TorusPower);
  const long n = base.count;
  if (n < 1)
    fail(ErrKind::UnsupportedShape, "beta_sign_recursion",
         "base must have at least one coordinate");
  if (constant) return csign > 0 ? beta_constructible(base) : BetaPoly();

  BetaPoly factor = torus ? beta_torus().pow(static_cast<unsigned long>(n - 1))
                          : BetaPoly::u_power(static_cast<int>(n - 1));

  BetaPoly pos_curve = affine_power_curve_class(2, p);
  BetaPoly neg_curve = affine_power_curve_class(2, -p);
  long r = distinct_real_roots(p);
  if (torus) {
    const int s0 = p.sign_at(0);
    pos_curve = pos_curve - BetaPoly(Rat(s0 > 0 ? 2 : (s0 == 0 ? 1 : 0)));
    neg_curve = neg_curve - BetaPoly(Rat(s0 < 0 ? 2 : (s0 == 0 ? 1 : 0)));
    if (s0 == 0) r -= 1;
  }
  BetaPoly line = torus ? beta_torus() : BetaPoly::u();
  BetaPoly nonzero = line - BetaPoly(Rat(r));

  BetaPoly res = (pos_curve - neg_curve) * Rat(1, 4) + nonzero * Rat(1, 2);
  return res * factor;
}

BetaPoly beta_atom(const FormulaAtom& atom) {
  if (atom.positive) return beta_sign_recursion(atom.shape, *atom.positive);
  return beta_constructible(atom.shape);
}

Rat chi_c(const BetaPoly& b) { return b.at_minus_one(); }

RelationReport verify_relations(const ConstructibleShape& base, const UPoly& q) {
  RelationReport rep;
  rep.total = beta_constructible(base);

  const bool constant = q.is_zero() || q.deg() == 0;
  const int csign = q.is_zero() ? 0 : sgn(q.coeff(0));

  if (constant) {
    rep.zero_part = (csign == 0) ? rep.total : BetaPoly();
    rep.nonzero_part = (csign == 0) ? BetaPoly() : rep.total;
  } else {
    const bool torus = (base.kind == ConstructibleShape::TorusPower);
    if (base.kind != ConstructibleShape::AffinePower && !torus)
      fail(ErrKind::UnsupportedShape, "verify_relations",
           "nonconstant condition needs an affine or torus base");
    const long n = base.count;
    BetaPoly factor = torus
                          ? beta_torus().pow(static_cast<unsigned long>(n - 1))
                          : BetaPoly::u_power(static_cast<int>(n - 1));
    long r = distinct_real_roots(q);
    if (torus && q.sign_at(0) == 0) r -= 1;
    BetaPoly line = torus ? beta_torus() : BetaPoly::u();
    rep.zero_part = factor * Rat(r);
    rep.nonzero_part = (line - BetaPoly(Rat(r))) * factor;
  }

  rep.pos_part = beta_sign_recursion(base, q);
  rep.neg_part = beta_sign_recursion(base, -q);

  rep.partition_holds = (rep.zero_part + rep.nonzero_part == rep.total);
  rep.sign_split_holds =
      (rep.pos_part + rep.neg_part + rep.zero_part == rep.total);
  auto integral = [](const BetaPoly& b) {
    return chi_c(b).get_den() == 1;
  };
  rep.integral_chi = integral(rep.total) && integral(rep.zero_part) &&
                     integral(rep.nonzero_part) && integral(rep.pos_part) &&
                     integral(rep.neg_part);
  return rep;
}

// ---- curve descriptors ----

BetaPoly beta_curve(const CurveDescriptor& c) {
  switch (c.kind) {
    case CurveDescriptor::FinitePoints:
      return BetaPoly(Rat(c.count));
    case CurveDescriptor::PuncturedLine:
      return BetaPoly::u() - BetaPoly(Rat(c.count));
    case CurveDescriptor::Superelliptic:
      break;
  }

  if (c.N < 1)
    fail(ErrKind::UnsupportedShape, "beta_curve", "cover degree must be positive");
  if (c.w.is_zero())
    fail(ErrKind::UnsupportedShape, "beta_curve", "weight polynomial is zero");

  std::vector<Rat> punctures = c.punctures;
  std::sort(punctures.begin(), punctures.end());
  punctures.erase(std::unique(punctures.begin(), punctures.end()),
                  punctures.end());

  for (const auto& [rt, m] : rational_roots(c.w)) {
    (void)m;
    if (!std::binary_search(punctures.begin(), punctures.end(), rt))
      fail(ErrKind::UnitVanishesOnStratum, "beta_curve",
           "weight vanishes at unpunctured point " + rat_str(rt));
  }
  if (!irrational_real_roots(c.w).empty())
    fail(ErrKind::UnitVanishesOnStratum, "beta_curve",
         "weight has an irrational real zero");

  const int sigma = symbol_sigma(c.target);
  if (!symbol_is_tube(c.target))
    return affine_cover_class(c.N, c.w, sigma, punctures);

  const long np = static_cast<long>(punctures.size());
  if (c.N % 2 == 1) {
    // one open ray in the fibre over every base point
    return (BetaPoly::u() - BetaPoly(Rat(np))) * beta_torus() * Rat(1, 2);
  }
  UPoly sw = (sigma == 1) ? c.w : -c.w;
  ConstructibleShape lineShape{ConstructibleShape::AffinePower, 1};
  BetaPoly region = beta_sign_recursion(lineShape, sw);
  long inside = 0;
  for (const auto& q : punctures)
    if (sw.sign_at(q) > 0) ++inside;
  return (region - BetaPoly(Rat(inside))) * beta_torus();
}

}  // namespace motfib
