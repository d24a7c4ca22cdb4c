#include "motfib/family.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <utility>

#include "motfib/resolve.hpp"
#include "motfib/zeta.hpp"

namespace motfib {

namespace {

// Coefficient of x^k, k = 0..upto, as polynomials in t.  `p` lives in the
// two-variable ring (t, x).
std::vector<UPoly> x_coefficients(const Polynomial& p, long upto) {
  std::vector<UPoly> out(static_cast<size_t>(upto) + 1);
  std::vector<Polynomial> nest = p.nested(1);
  for (size_t k = 0; k < nest.size(); ++k) {
    if (static_cast<long>(k) > upto)
      fail(ErrKind::InternalError, "x_coefficients", "degree above nominal bound");
    out[k] = nest[k].to_upoly(0);
  }
  return out;
}

// Removes the common t-polynomial factor of all x-coefficients, so that a
// shared content cannot leak into the resultant below.
Polynomial strip_t_content(const Polynomial& p) {
  std::vector<Polynomial> nest = p.nested(1);
  UPoly g;
  for (const Polynomial& c : nest)
    if (!c.is_zero()) g = UPoly::gcd(g, c.to_upoly(0));
  if (g.deg() <= 0) return p;
  std::vector<Polynomial> out;
  out.reserve(nest.size());
  for (const Polynomial& c : nest)
    out.push_back(c.is_zero()
                      ? c
                      : Polynomial::from_upoly(c.to_upoly(0).divexact(g), p.vars(), 0));
  return Polynomial::from_nested(out, 1);
}

// Determinant of the Sylvester matrix of two polynomials of nominal degree m,
// given by coefficient lists p[0..m], q[0..m] (entries are polynomials in t).
UPoly formal_resultant(const std::vector<UPoly>& p, const std::vector<UPoly>& q,
                       long m) {
  if (m <= 0) return UPoly(Rat(1));
  std::vector<std::vector<UPoly>> mat(2 * m, std::vector<UPoly>(2 * m));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= m; ++j) {
      mat[i][i + j] = p[m - j];
      mat[m + i][i + j] = q[m - j];
    }
  return upoly_det(std::move(mat));
}

void push_roots(const UPoly& p, std::vector<Rat>& out) {
  if (p.is_zero() || p.deg() < 1) return;
  for (const auto& [root, mult] : rational_roots(p)) out.push_back(root);
}

}  // namespace

std::vector<Rat> detect_breakpoints(const GermFamily& family) {
  const Polynomial& body = family.body;
  if (body.is_zero()) return {};

  long d0 = -1;
  for (const auto& [e, c] : body.terms()) {
    long d = static_cast<long>(e[1]) + static_cast<long>(e[2]);
    if (d0 < 0 || d < d0) d0 = d;
  }

  std::vector<Rat> out;

  // Parameters killing every coefficient of the lowest form at once.
  {
    std::map<std::pair<unsigned, unsigned>, UPoly> coeff;
    for (const auto& [e, c] : body.terms()) {
      if (static_cast<long>(e[1]) + static_cast<long>(e[2]) != d0) continue;
      coeff[{e[1], e[2]}] = coeff[{e[1], e[2]}] + UPoly::monomial(c, e[0]);
    }
    UPoly g;
    for (const auto& [key, c] : coeff) g = UPoly::gcd(g, c);
    push_roots(g, out);
  }

  // Parameters where the squarefree part of the lowest form acquires a
  // repeated root (two factors collide, or a root escapes to infinity).
  if (d0 >= 2) {
    Polynomial at_y1({"t", "x"});
    bool pure_x_term = false;
    for (const auto& [e, c] : body.terms()) {
      if (static_cast<long>(e[1]) + static_cast<long>(e[2]) != d0) continue;
      at_y1.add_term({e[0], e[1]}, c);
      if (static_cast<long>(e[1]) == d0) pure_x_term = true;
    }
    Polynomial sf = strip_t_content(bivariate_squarefree_part(at_y1));
    long D = sf.degree_in(1) + (pure_x_term ? 0 : 1);
    if (D >= 2) {
      Polynomial form({"t", "x", "y"});
      for (const auto& [e, c] : sf.terms())
        form.add_term({e[0], e[1], static_cast<unsigned>(D - e[1])}, c);
      auto collapse_y = [](const Polynomial& p) {
        Polynomial out2({"t", "x"});
        for (const auto& [e, c] : p.terms())
          out2.add_term({e[0], e[1]}, c);
        return out2;
      };
      std::vector<UPoly> px = x_coefficients(collapse_y(form.derivative(1)), D - 1);
      std::vector<UPoly> py = x_coefficients(collapse_y(form.derivative(2)), D - 1);
      push_roots(formal_resultant(px, py, D - 1), out);
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool same_value(const ScanSample& a, const ScanSample& b) {
  if (a.failure != b.failure) return false;
  if (a.beta.has_value() != b.beta.has_value()) return false;
  return !a.beta.has_value() || *a.beta == *b.beta;
}

}  // namespace

ScanReport scan(const GermFamily& family, const Rat& lo, const Rat& hi, long n,
                Symbol sym, int jobs) {
  if (!(lo < hi))
    fail(ErrKind::UnsupportedShape, "scan", "range must satisfy lo < hi");
  if (n < 2) fail(ErrKind::UnsupportedShape, "scan", "need at least two samples");

  std::vector<Rat> detected = detect_breakpoints(family);
  std::vector<Rat> in_range;
  for (const Rat& b : detected)
    if (lo <= b && b <= hi) in_range.push_back(b);

  std::vector<Rat> points;
  const Rat span = hi - lo;
  for (long i = 0; i < n; ++i)
    points.push_back(lo + span * Rat(i) / Rat(n - 1));
  for (const Rat& b : in_range) {
    Rat below = lo, above = hi;
    bool has_below = false, has_above = false;
    for (long i = 0; i < n; ++i) {
      Rat g = lo + span * Rat(i) / Rat(n - 1);
      if (g < b && (!has_below || g > below)) below = g, has_below = true;
      if (g > b && (!has_above || g < above)) above = g, has_above = true;
    }
    points.push_back(b);
    if (has_below) points.push_back((b + below) / 2);
    if (has_above) points.push_back((b + above) / 2);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  ScanReport rep;
  rep.symbol = sym;
  rep.samples.resize(points.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      ScanSample& s = rep.samples[i];
      s.t = points[i];
      try {
        Polynomial ft = specialize(family, points[i]);
        s.beta = motivic_fibre(embedded_resolution(ft), sym);
      } catch (const Error& e) {
        s.failure = err_kind_name(e.kind());
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // Maximal runs of one value become intervals; value changes and failures
  // become breakpoints, snapped to a detected parameter when one lies in the
  // gap between the adjacent samples.
  std::vector<Rat> breaks;
  size_t run_start = 0;
  for (size_t i = 0; i <= rep.samples.size(); ++i) {
    if (i < rep.samples.size() && same_value(rep.samples[run_start], rep.samples[i]))
      continue;
    const ScanSample& first = rep.samples[run_start];
    const ScanSample& last = rep.samples[i - 1];
    rep.intervals.push_back({first.t, last.t, first.beta, first.failure});
    if (i < rep.samples.size()) {
      const ScanSample& nxt = rep.samples[i];
      if (!last.ok()) {
        breaks.push_back(last.t);
      } else if (!nxt.ok()) {
        breaks.push_back(nxt.t);
      } else {
        bool snapped = false;
        for (const Rat& b : in_range)
          if (last.t <= b && b <= nxt.t) {
            breaks.push_back(b);
            snapped = true;
            break;
          }
        if (!snapped) breaks.push_back((last.t + nxt.t) / 2);
      }
      run_start = i;
    }
  }
  for (const ScanSample& s : rep.samples)
    if (!s.ok()) breaks.push_back(s.t);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  rep.breakpoints = std::move(breaks);
  return rep;
}

}  // namespace motfib
