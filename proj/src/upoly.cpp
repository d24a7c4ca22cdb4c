#include "motfib/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "motfib/errors.hpp"

namespace motfib {

UPoly::UPoly(const Rat& constant) {
  if (constant != 0) c_.push_back(constant);
}

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rat& coeff, size_t deg) {
  if (coeff == 0) return UPoly();
  std::vector<Rat> v(deg + 1, Rat(0));
  v[deg] = coeff;
  return UPoly(std::move(v));
}

UPoly UPoly::x() { return monomial(Rat(1), 1); }

const Rat& UPoly::lead() const {
  if (c_.empty()) fail(ErrKind::InternalError, "UPoly::lead", "zero polynomial");
  return c_.back();
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (auto& v : r.c_) v = -v;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return UPoly(std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(std::move(v));
}

UPoly UPoly::operator*(const Rat& s) const {
  if (s == 0) return UPoly();
  UPoly r(*this);
  for (auto& v : r.c_) v *= s;
  return r;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rat> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(v));
}

Rat UPoly::eval(const Rat& x) const {
  Rat r(0);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

int UPoly::sign_at_pos_inf() const { return is_zero() ? 0 : motfib::sgn(c_.back()); }

int UPoly::sign_at_neg_inf() const {
  if (is_zero()) return 0;
  int s = motfib::sgn(c_.back());
  return (deg() % 2 == 0) ? s : -s;
}

UPoly UPoly::shifted(const Rat& t) const {
  // Horner: p(x + t) built from the top coefficient down.
  UPoly r;
  UPoly base = UPoly(std::vector<Rat>{t, Rat(1)});  // x + t
  for (size_t i = c_.size(); i-- > 0;) r = r * base + UPoly(c_[i]);
  return r;
}

UPoly UPoly::scaled_arg(const Rat& s) const {
  UPoly r(*this);
  Rat f(1);
  for (size_t i = 0; i < r.c_.size(); ++i) {
    r.c_[i] *= f;
    f *= s;
  }
  r.trim();
  return r;
}

UPoly UPoly::reversed(long n) const {
  if (n < deg()) fail(ErrKind::InternalError, "UPoly::reversed", "n below degree");
  std::vector<Rat> v(n + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[n - i] = c_[i];
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rat(1) / lead());
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) fail(ErrKind::InternalError, "UPoly::divmod", "division by zero");
  UPoly r = a;
  if (r.deg() < b.deg()) return {UPoly(), r};
  std::vector<Rat> q(r.deg() - b.deg() + 1, Rat(0));
  while (!r.is_zero() && r.deg() >= b.deg()) {
    long d = r.deg() - b.deg();
    Rat c = r.lead() / b.lead();
    q[d] = c;
    // r -= c * x^d * b
    for (long i = 0; i <= b.deg(); ++i) r.c_[i + d] -= c * b.c_[i];
    r.trim();
  }
  return {UPoly(std::move(q)), r};
}

UPoly UPoly::divexact(const UPoly& b) const {
  auto [q, r] = divmod(*this, b);
  if (!r.is_zero()) fail(ErrKind::InternalError, "UPoly::divexact", "inexact division");
  return q;
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly UPoly::squarefree_part() const {
  if (is_zero() || deg() == 0) return monic();
  UPoly g = gcd(*this, derivative());
  return divexact(g).monic();
}

std::vector<std::pair<UPoly, int>> UPoly::squarefree_decomposition() const {
  // Yun's algorithm (characteristic zero).
  std::vector<std::pair<UPoly, int>> out;
  if (is_zero() || deg() == 0) return out;
  UPoly p = monic();
  UPoly d = p.derivative();
  UPoly a = gcd(p, d);
  UPoly b = p.divexact(a);
  UPoly c = d.divexact(a);
  int k = 1;
  while (b.deg() > 0) {
    UPoly w = c - b.derivative();
    UPoly f = gcd(b, w);
    if (f.deg() > 0) out.emplace_back(f, k);
    b = b.divexact(f);
    c = w.divexact(f);
    ++k;
  }
  return out;
}

std::vector<Int> UPoly::primitive_int() const {
  std::vector<Int> out;
  if (is_zero()) return out;
  Int l(1);
  for (const auto& r : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
  out.reserve(c_.size());
  Int content(0);
  for (const auto& r : c_) {
    Rat s = r * Rat(l);
    out.push_back(s.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  if (content != 0 && content != 1)
    for (auto& v : out) v /= content;
  return out;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rat a = c_[i];
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    bool unit = (a == 1 && i > 0);
    if (!unit) os << rat_str(a);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---- Sturm machinery ----

SturmChain sturm_chain(const UPoly& p) {
  SturmChain s;
  UPoly core = p.squarefree_part();
  if (core.is_zero() || core.deg() == 0) {
    s.seq.push_back(core);
    return s;
  }
  s.seq.push_back(core);
  s.seq.push_back(core.derivative());
  while (!s.seq.back().is_zero()) {
    const UPoly& a = s.seq[s.seq.size() - 2];
    const UPoly& b = s.seq.back();
    UPoly r = UPoly::divmod(a, b).second;
    if (r.is_zero()) break;
    s.seq.push_back(-r);
  }
  return s;
}

static int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int sturm_variations(const SturmChain& s, const Rat& x) {
  std::vector<int> signs;
  signs.reserve(s.seq.size());
  for (const auto& p : s.seq) signs.push_back(p.sign_at(x));
  return variations(signs);
}

int sturm_variations_pos_inf(const SturmChain& s) {
  std::vector<int> signs;
  for (const auto& p : s.seq) signs.push_back(p.sign_at_pos_inf());
  return variations(signs);
}

int sturm_variations_neg_inf(const SturmChain& s) {
  std::vector<int> signs;
  for (const auto& p : s.seq) signs.push_back(p.sign_at_neg_inf());
  return variations(signs);
}

long sturm_count(const SturmChain& s, const Rat& lo, const Rat& hi) {
  if (s.seq.empty() || s.seq[0].is_zero() || s.seq[0].deg() == 0) return 0;
  return sturm_variations(s, lo) - sturm_variations(s, hi);
}

long sturm_count_all(const SturmChain& s) {
  if (s.seq.empty() || s.seq[0].is_zero() || s.seq[0].deg() == 0) return 0;
  return sturm_variations_neg_inf(s) - sturm_variations_pos_inf(s);
}

Rat root_bound(const UPoly& p) {
  // Cauchy bound: 1 + max |a_i| / |a_n|.
  if (p.is_zero() || p.deg() == 0) return Rat(1);
  Rat m(0);
  for (long i = 0; i < p.deg(); ++i) {
    Rat a = abs(p.coeff(i));
    if (a > m) m = a;
  }
  return Rat(1) + m / abs(p.lead());
}

std::vector<RootInterval> isolate_real_roots(const UPoly& squarefree) {
  std::vector<RootInterval> out;
  if (squarefree.is_zero() || squarefree.deg() == 0) return out;
  SturmChain s = sturm_chain(squarefree);
  Rat b = root_bound(squarefree);
  // Bisection queue of intervals with non-root rational endpoints.
  struct Item {
    Rat lo, hi;
    long n;
  };
  std::vector<Item> work;
  long total = sturm_count(s, -b, b);
  if (total > 0) work.push_back({-b, b, total});
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    if (it.n == 1) {
      out.push_back({it.lo, it.hi});
      continue;
    }
    Rat mid = (it.lo + it.hi) / 2;
    while (squarefree.sign_at(mid) == 0) {
      // Nudge the split point off the root; any non-root point works.
      mid = (it.lo + mid) / 2;
    }
    long left = sturm_count(s, it.lo, mid);
    if (left > 0) work.push_back({it.lo, mid, left});
    if (it.n - left > 0) work.push_back({mid, it.hi, it.n - left});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b2) { return a.lo < b2.lo; });
  return out;
}

Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
  if (lo > hi) return simplest_rational_in(hi, lo);
  if (lo <= 0 && 0 <= hi) return Rat(0);
  if (hi < 0) return -simplest_rational_in(-hi, -lo);
  // 0 < lo <= hi
  Int fl_lo, fl_hi;
  mpz_fdiv_q(fl_lo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  mpz_fdiv_q(fl_hi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
  if (fl_lo < fl_hi || lo == Rat(fl_lo)) {
    // An integer lies in the interval: the smallest one at or above lo.
    if (lo == Rat(fl_lo)) return lo;
    return Rat(fl_lo + 1);
  }
  Rat frac_lo = lo - Rat(fl_lo);
  Rat frac_hi = hi - Rat(fl_lo);
  return Rat(fl_lo) + Rat(1) / simplest_rational_in(Rat(1) / frac_hi, Rat(1) / frac_lo);
}

static std::optional<Rat> rational_root_in_interval(const UPoly& q, Rat lo, Rat hi) {
  // q squarefree with exactly one root in (lo, hi).  Refine until the interval
  // is narrow enough that a rational root (denominator dividing the leading
  // integer coefficient) is the unique simplest rational inside, then test it.
  std::vector<Int> zi = q.primitive_int();
  Int denbound = zi.back();
  Rat width_target = Rat(1) / Rat(2 * denbound * denbound);
  int slo = q.sign_at(lo);
  while (hi - lo > width_target) {
    Rat mid = (lo + hi) / 2;
    int sm = q.sign_at(mid);
    if (sm == 0) return mid;
    if (sm == slo)
      lo = mid;
    else
      hi = mid;
  }
  Rat cand = simplest_rational_in(lo, hi);
  if (q.sign_at(cand) == 0) return cand;
  return std::nullopt;
}

std::vector<std::pair<Rat, int>> rational_roots(const UPoly& p) {
  std::vector<std::pair<Rat, int>> out;
  for (const auto& [f, mult] : p.squarefree_decomposition()) {
    for (const auto& iv : isolate_real_roots(f)) {
      auto r = rational_root_in_interval(f, iv.lo, iv.hi);
      if (r) out.emplace_back(*r, mult);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void AlgNum::refine() {
  Rat mid = (lo + hi) / 2;
  int sm = q.sign_at(mid);
  if (sm == 0) {
    // The interval convention requires non-root endpoints; nudge around the
    // root by taking quarter points (the root is irrational in our usage, so
    // this branch only triggers on misuse; fall back to a tiny offset).
    Rat quarter = (lo + mid) / 2;
    if (q.sign_at(quarter) == q.sign_at(lo))
      lo = quarter;
    else
      hi = quarter;
    return;
  }
  if (sm == q.sign_at(lo))
    lo = mid;
  else
    hi = mid;
}

void AlgNum::refine_below_width(const Rat& w) {
  while (hi - lo >= w) refine();
}

std::vector<std::pair<AlgNum, int>> irrational_real_roots(const UPoly& p) {
  std::vector<std::pair<AlgNum, int>> out;
  for (const auto& [f, mult] : p.squarefree_decomposition()) {
    for (const auto& iv : isolate_real_roots(f)) {
      auto r = rational_root_in_interval(f, iv.lo, iv.hi);
      if (!r) out.emplace_back(AlgNum{f, iv.lo, iv.hi}, mult);
    }
  }
  // Intervals from distinct factors can overlap; refine until pairwise
  // disjoint so interval order is root order.
  bool again = true;
  while (again) {
    again = false;
    for (size_t i = 0; i < out.size(); ++i)
      for (size_t j = i + 1; j < out.size(); ++j) {
        AlgNum& a = out[i].first;
        AlgNum& b = out[j].first;
        if (a.hi > b.lo && b.hi > a.lo) {
          a.refine();
          b.refine();
          again = true;
        }
      }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  return out;
}

int sign_at_alg(const UPoly& g, const AlgNum& r) {
  if (g.is_zero()) return 0;
  UPoly common = UPoly::gcd(g, r.q);
  if (common.deg() > 0) {
    SturmChain s = sturm_chain(common);
    if (sturm_count(s, r.lo, r.hi) > 0) return 0;
  }
  // g(r) != 0: shrink the interval until g has no root inside, then sample.
  AlgNum a = r;
  SturmChain sg = sturm_chain(g);
  while (sturm_count(sg, a.lo, a.hi) > 0) a.refine();
  // g has constant sign on [lo, hi] minus its roots; endpoints may still be
  // roots of g, so sample the midpoint after a final safety refinement.
  Rat mid = (a.lo + a.hi) / 2;
  int s = g.sign_at(mid);
  while (s == 0) {
    a.refine();
    mid = (a.lo + a.hi) / 2;
    s = g.sign_at(mid);
  }
  return s;
}

UPoly upoly_det(std::vector<std::vector<UPoly>> m) {
  // Bareiss fraction-free elimination over Q[t].
  size_t n = m.size();
  if (n == 0) return UPoly(Rat(1));
  int sign = 1;
  UPoly prev(Rat(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return UPoly();
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        UPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num.divexact(prev);
      }
      m[i][k] = UPoly();
    }
    prev = m[k][k];
  }
  UPoly d = m[n - 1][n - 1];
  return sign == 1 ? d : -d;
}

}  // namespace motfib
