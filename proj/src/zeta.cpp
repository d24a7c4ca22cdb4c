#include "motfib/zeta.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "motfib/errors.hpp"

namespace motfib {

namespace {

BetaPoly half_torus() { return beta_torus() * Rat(1, 2); }  // (u - 1)/2

BetaPoly proj_line() { return BetaPoly::u_power(1) + BetaPoly(Rat(1)); }  // u + 1

// Finite cut data of the unit function along a component, in birth-chart
// coordinates.  The cuts reproduce the finite marks of the geometry in order;
// signs[i] is the sign of R1 on the i-th open interval of the line.
LineCutData component_cuts(const ComponentGeometry& g) {
  std::vector<Rat> extra;
  long finite = 0;
  for (const MarkInfo& m : g.marks)
    if (!m.at_infinity) {
      ++finite;
      if (m.order == 0) extra.push_back(m.pos.r);
    }
  LineCutData line = prepare_line_cuts(g.R1, extra);
  if (static_cast<long>(line.cuts.size()) != finite)
    fail(ErrKind::InternalError, "zeta::component_cuts",
         "cut/mark mismatch on " + g.comp);
  return line;
}

// Cover or sign-region class over the punctured component.
BetaPoly curve_stratum_class(const ComponentGeometry& g, Symbol sym) {
  LineCutData line = component_cuts(g);
  const long K = static_cast<long>(line.cuts.size());
  const int sigma = symbol_sigma(sym);

  if (!symbol_is_tube(sym)) {
    // Exact symbols: circle cover of degree N with a seam at infinity.  All
    // crossing points are removed; the seam is removed only when marked.
    std::vector<CircleCut> cuts;
    std::vector<int> signs;
    for (long i = 0; i < K; ++i) cuts.push_back({line.cuts[i].e, true, false});
    cuts.push_back({g.e_inf, g.inf_marked, true});
    for (long i = 0; i < K; ++i)
      signs.push_back(sigma * line.signs[static_cast<size_t>(i) + 1]);
    signs.push_back(sigma * line.signs[0]);
    CoverCount count = circle_cover(g.N, cuts, signs);
    return proj_line() * Rat(count.circles) - BetaPoly(Rat(count.removed_places));
  }

  const long marks_total = K + (g.inf_marked ? 1 : 0);

  if (g.N % 2 == 0) {
    // Slots 0..K-1 are the finite cuts, slot K the seam at infinity.  The
    // unit changes sign exactly at odd-order slots; arcs run between them.
    std::vector<long> odd;
    for (long i = 0; i < K; ++i)
      if (line.cuts[i].e % 2) odd.push_back(i);
    if (g.e_inf % 2) odd.push_back(K);
    auto is_mark = [&](long s) { return s < K || g.inf_marked; };
    auto interval_sign = [&](long s) {
      return s < K ? line.signs[static_cast<size_t>(s) + 1] : line.signs[0];
    };
    if (odd.empty()) {
      if (sigma * line.signs[0] <= 0) return BetaPoly();
      return (proj_line() - BetaPoly(Rat(marks_total))) * beta_torus();
    }
    if (odd.size() % 2)
      fail(ErrKind::InternalError, "zeta::curve_stratum_class",
           "odd number of sign changes on " + g.comp);
    BetaPoly sum;
    const long n = static_cast<long>(odd.size());
    for (long t = 0; t < n; ++t) {
      long from = odd[static_cast<size_t>(t)];
      long to = odd[static_cast<size_t>((t + 1) % n)];
      if (sigma * interval_sign(from) <= 0) continue;
      long interior = 0;
      for (long s = (from + 1) % (K + 1); s != to; s = (s + 1) % (K + 1))
        if (is_mark(s)) ++interior;
      sum += half_torus() - BetaPoly(Rat(interior));
    }
    return sum * beta_torus();
  }

  // Odd degree: both sign regions agree, and the fibre over every surviving
  // point is an open half-line.
  return (proj_line() - BetaPoly(Rat(marks_total))) * half_torus();
}

// Sign of the residual unit at a crossing point.  For two exceptional
// components this is the recorded crossing sign; for a crossing with the
// strict transform it is the one-sided sign of R1 next to the root (or of
// R2 at the origin for a crossing at infinity).
int crossing_unit_sign(const ResolutionData& res, const Stratum& s) {
  const DivisorComponent* a = res.find_component(s.I[0]);
  const DivisorComponent* b = res.find_component(s.I[1]);
  if (a == nullptr || b == nullptr)
    fail(ErrKind::InternalError, "zeta::crossing_unit_sign", "unknown component");
  if (a->exceptional && b->exceptional) {
    for (const CornerUnit& cu : res.corner_units)
      if ((cu.a == s.I[0] && cu.b == s.I[1]) || (cu.a == s.I[1] && cu.b == s.I[0]))
        return cu.unit_sign;
    fail(ErrKind::InternalError, "zeta::crossing_unit_sign",
         "no recorded crossing sign for " + s.I[0] + "," + s.I[1]);
  }
  const std::string& exc_id = a->exceptional ? s.I[0] : s.I[1];
  const std::string& branch_id = a->exceptional ? s.I[1] : s.I[0];
  const ComponentGeometry* g = res.find_geometry(exc_id);
  if (g == nullptr)
    fail(ErrKind::InternalError, "zeta::crossing_unit_sign", "missing geometry");
  long finite_idx = -1;
  bool at_inf = false;
  bool found = false;
  long idx = 0;
  for (const MarkInfo& m : g->marks) {
    if (m.partner == branch_id) {
      at_inf = m.at_infinity;
      finite_idx = idx;
      found = true;
      break;
    }
    if (!m.at_infinity) ++idx;
  }
  if (!found)
    fail(ErrKind::InternalError, "zeta::crossing_unit_sign",
         "no mark joins " + exc_id + " to " + branch_id);
  if (at_inf) return sgn(g->R2.coeff(g->e_inf));
  LineCutData line = component_cuts(*g);
  return line.signs[static_cast<size_t>(finite_idx) + 1];
}

BetaPoly point_stratum_class(const ResolutionData& res, const Stratum& s, Symbol sym) {
  const bool tube = symbol_is_tube(sym);
  if (s.N_I % 2) return tube ? half_torus() : BetaPoly(Rat(1));
  const bool match = symbol_sigma(sym) * crossing_unit_sign(res, s) > 0;
  if (tube) return match ? beta_torus() : BetaPoly();
  return match ? BetaPoly(Rat(2)) : BetaPoly();
}

bool touches_exceptional(const ResolutionData& res, const Stratum& s) {
  for (const std::string& id : s.I) {
    const DivisorComponent* c = res.find_component(id);
    if (c != nullptr && c->exceptional) return true;
  }
  return false;
}

}  // namespace

BetaPoly stratum_sign_class(const ResolutionData& res, const Stratum& s, Symbol sym) {
  if (s.dimension == 0) return point_stratum_class(res, s, sym);
  const DivisorComponent* c = res.find_component(s.I[0]);
  if (c == nullptr || !c->exceptional)
    fail(ErrKind::UnsupportedShape, "zeta::stratum_sign_class",
         "no sign class over a strict-transform stratum");
  const ComponentGeometry* g = res.find_geometry(s.I[0]);
  if (g == nullptr)
    fail(ErrKind::InternalError, "zeta::stratum_sign_class", "missing geometry");
  return curve_stratum_class(*g, sym);
}

ZetaFunction motivic_zeta(const ResolutionData& res, Symbol sym) {
  ZetaFunction z;
  z.symbol = sym;
  for (const Stratum& s : res.strata) {
    if (!touches_exceptional(res, s)) continue;
    BetaPoly coeff = stratum_sign_class(res, s, sym) *
                     beta_torus().pow(s.I.size() - 1);
    if (coeff.is_zero()) continue;
    ZetaTerm t;
    t.coefficient = std::move(coeff);
    for (const std::string& id : s.I) {
      const DivisorComponent* c = res.find_component(id);
      t.factors.push_back({c->N, c->nu});
    }
    z.terms.push_back(std::move(t));
  }
  return z;
}

std::vector<BetaPoly> zeta_series(const ZetaFunction& z, long max_order) {
  if (max_order < 0) max_order = 0;
  std::vector<BetaPoly> out(static_cast<size_t>(max_order));
  for (const ZetaTerm& t : z.terms) {
    std::function<void(size_t, long, long)> walk = [&](size_t i, long order, long nu) {
      if (i == t.factors.size()) {
        out[static_cast<size_t>(order - 1)] +=
            t.coefficient.shifted_u(static_cast<int>(-nu));
        return;
      }
      const ZetaFactor& f = t.factors[i];
      for (long k = 1; order + k * f.N <= max_order; ++k)
        walk(i + 1, order + k * f.N, nu + k * f.nu);
    };
    if (!t.factors.empty()) walk(0, 0, 0);
  }
  return out;
}

BetaPoly zeta_limit(const ZetaFunction& z) {
  BetaPoly out;
  for (const ZetaTerm& t : z.terms)
    out += t.factors.size() % 2 ? -t.coefficient : t.coefficient;
  return out;
}

BetaPoly motivic_fibre(const ResolutionData& res, Symbol sym) {
  const BetaPoly neg_torus = BetaPoly(Rat(1)) - BetaPoly::u_power(1);  // 1 - u
  BetaPoly out;
  for (const Stratum& s : res.strata) {
    if (!touches_exceptional(res, s)) continue;
    out += stratum_sign_class(res, s, sym) * neg_torus.pow(s.I.size() - 1);
  }
  return out;
}

Rat fibre_euler(const ResolutionData& res, Symbol sym) {
  return motivic_fibre(res, sym).at_minus_one();
}

long lefschetz_number(const ResolutionData& res, long k, LefschetzVariant variant) {
  if (k < 0)
    fail(ErrKind::UnsupportedShape, "zeta::lefschetz_number", "negative iterate");
  long total = 0;
  for (const ComponentGeometry& g : res.geometry)
    if (k % g.N == 0) total += g.N * g.complex_euler;
  if (variant == LefschetzVariant::Subset)
    for (const Stratum& s : res.strata) {
      if (s.dimension != 0) continue;
      const DivisorComponent* a = res.find_component(s.I[0]);
      const DivisorComponent* b = res.find_component(s.I[1]);
      if (a->exceptional && b->exceptional && k % s.N_I == 0) total += s.N_I;
    }
  return total;
}

}  // namespace motfib
