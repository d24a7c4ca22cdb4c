#include "motfib/resolve.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

#include "motfib/errors.hpp"

namespace motfib {

namespace {

const std::vector<std::string> kAB{"a", "b"};

Polynomial poly_a() { return Polynomial::variable(kAB, 0); }
Polynomial poly_b() { return Polynomial::variable(kAB, 1); }
Polynomial poly_const(const Rat& c) { return Polynomial(kAB, c); }

// Rebuild a two-variable polynomial on the chart variable list (a, b).
Polynomial recast_ab(const Polynomial& f) {
  Polynomial r(kAB);
  for (const auto& [e, c] : f.terms()) r.add_term(e, c);
  return r;
}

// Coefficient of a^k in g, as a polynomial in b (requires ord_a(g) >= k, so
// this equals (g / a^k)|_{a=0} whenever k = ord_a(g)).
UPoly slice_b(const Polynomial& g, long k) {
  auto nest = g.nested(0);
  if (k < 0 || k >= static_cast<long>(nest.size()))
    fail(ErrKind::InternalError, "resolve::slice_b", "slice index out of range");
  return nest[static_cast<size_t>(k)].to_upoly(1);
}

// Coefficient of b^k in g, as a polynomial in a.
UPoly slice_a(const Polynomial& g, long k) {
  auto nest = g.nested(1);
  if (k < 0 || k >= static_cast<long>(nest.size()))
    fail(ErrKind::InternalError, "resolve::slice_a", "slice index out of range");
  return nest[static_cast<size_t>(k)].to_upoly(0);
}

long ord0(const UPoly& p) {
  if (p.is_zero()) return -1;
  for (size_t i = 0; i < p.coeffs().size(); ++i)
    if (p.coeffs()[i] != 0) return static_cast<long>(i);
  return -1;
}

// Vanishing order of p at the rational point r.
long root_order(const UPoly& p, const Rat& r) {
  UPoly q = p;
  UPoly lin(std::vector<Rat>{-r, Rat(1)});
  long m = 0;
  while (!q.is_zero() && q.eval(r) == 0) {
    q = q.divexact(lin);
    ++m;
  }
  return m;
}

UPoly divide_out_root(const UPoly& p, const Rat& r, long m) {
  UPoly q = p;
  UPoly lin(std::vector<Rat>{-r, Rat(1)});
  for (long i = 0; i < m; ++i) q = q.divexact(lin);
  return q;
}

Polynomial axis_monomial(long p, long q) {
  Polynomial r(kAB);
  r.add_term({static_cast<unsigned>(p), static_cast<unsigned>(q)}, Rat(1));
  return r;
}

Polynomial jacobian_det(const Polynomial& mx, const Polynomial& my) {
  return mx.derivative(0) * my.derivative(1) - mx.derivative(1) * my.derivative(0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Internal blowup tree
// ---------------------------------------------------------------------------

namespace detail {

// A divisorial coordinate axis of a chart.  `comp` indexes the exceptional
// component; positions along the axis translate to the component's birth
// coordinate as b + shift (vertical axes) or 1/a (inverted, horizontal axes).
struct AxisRef {
  int comp = -1;
  bool inverted = false;
  Rat shift;
};

struct ResNode {
  enum class Kind { Root, D1, D2, Tr };
  Kind kind = Kind::Root;
  Polynomial g;  // pullback of the germ in this chart
  long jacA = 0, jacB = 0;
  std::optional<AxisRef> axV, axH;
  Polynomial map_x, map_y;
  std::vector<std::string> steps;
  bool blown = false;
  int blown_comp = -1;        // component born when this origin was blown up
  std::vector<Rat> excl;      // D1 only: vertical positions handed to deeper charts
  std::vector<std::unique_ptr<ResNode>> children;

  std::unique_ptr<ResNode> clone() const {
    auto n = std::make_unique<ResNode>();
    n->kind = kind;
    n->g = g;
    n->jacA = jacA;
    n->jacB = jacB;
    n->axV = axV;
    n->axH = axH;
    n->map_x = map_x;
    n->map_y = map_y;
    n->steps = steps;
    n->blown = blown;
    n->blown_comp = blown_comp;
    n->excl = excl;
    for (const auto& c : children) n->children.push_back(c->clone());
    return n;
  }
};

struct CompRec {
  long N = 1, nu = 1;
  std::set<Rat> blown_finite;  // birth-coordinate positions blown up later
  bool blown_inf = false;
};

struct ResTree {
  Polynomial f_orig;  // in the caller's variables
  Polynomial f;       // recast to (a, b)
  std::unique_ptr<ResNode> root;
  std::vector<CompRec> comps;
  long blow_count = 0;

  std::shared_ptr<ResTree> clone() const {
    auto t = std::make_shared<ResTree>();
    t->f_orig = f_orig;
    t->f = f;
    t->root = root->clone();
    t->comps = comps;
    t->blow_count = blow_count;
    return t;
  }
};

}  // namespace detail

namespace {

using detail::AxisRef;
using detail::CompRec;
using detail::ResNode;
using detail::ResTree;

constexpr long kBlowBudget = 400;

std::string rat_term(const Rat& c) {
  if (c == 0) return "b";
  if (c < 0) return "b - " + rat_str(Rat(-c));
  return "b + " + rat_str(c);
}

void blow_at_origin(ResTree& T, ResNode& X, std::deque<ResNode*>* work) {
  if (X.blown) fail(ErrKind::InternalError, "resolve::blow", "origin already blown up");
  auto ord = X.g.order_at_origin();
  if (!ord || *ord < 1)
    fail(ErrKind::InternalError, "resolve::blow", "blowup center is not on the curve");
  if (++T.blow_count > kBlowBudget)
    fail(ErrKind::InternalError, "embedded_resolution", "blowup budget exceeded");

  int comp = static_cast<int>(T.comps.size());
  CompRec rec;
  rec.N = *ord;
  rec.nu = X.jacA + X.jacB + 2;
  T.comps.push_back(rec);
  X.blown = true;
  X.blown_comp = comp;
  if (X.axV) T.comps[static_cast<size_t>(X.axV->comp)].blown_finite.insert(X.axV->shift);
  if (X.axH) T.comps[static_cast<size_t>(X.axH->comp)].blown_inf = true;

  Polynomial ia = poly_a(), ib = poly_b();
  Polynomial ab = ia * ib;

  auto c1 = std::make_unique<ResNode>();
  c1->kind = ResNode::Kind::D1;
  c1->g = X.g.compose({ia, ab});
  c1->jacA = X.jacA + X.jacB + 1;
  c1->jacB = X.jacB;
  c1->axV = AxisRef{comp, false, Rat(0)};
  c1->axH = X.axH;
  c1->map_x = X.map_x.compose({ia, ab});
  c1->map_y = X.map_y.compose({ia, ab});
  c1->steps = X.steps;
  c1->steps.push_back("(a, b) <- (a, a*b)");

  auto c2 = std::make_unique<ResNode>();
  c2->kind = ResNode::Kind::D2;
  c2->g = X.g.compose({ab, ib});
  c2->jacA = X.jacA;
  c2->jacB = X.jacA + X.jacB + 1;
  c2->axV = X.axV;
  c2->axH = AxisRef{comp, true, Rat(0)};
  c2->map_x = X.map_x.compose({ab, ib});
  c2->map_y = X.map_y.compose({ab, ib});
  c2->steps = X.steps;
  c2->steps.push_back("(a, b) <- (a*b, b)");

  if (work) {
    work->push_back(c1.get());
    work->push_back(c2.get());
  }
  X.children.push_back(std::move(c1));
  X.children.push_back(std::move(c2));
}

ResNode& spawn_translate(ResNode& X, const Rat& c) {
  if (X.kind != ResNode::Kind::D1 || !X.axV)
    fail(ErrKind::InternalError, "resolve::translate", "translations start from first-kind charts");
  auto t = std::make_unique<ResNode>();
  t->kind = ResNode::Kind::Tr;
  Polynomial ia = poly_a();
  Polynomial sb = poly_b() + poly_const(c);
  t->g = X.g.compose({ia, sb});
  t->jacA = X.jacA;
  t->jacB = (c == 0) ? X.jacB : 0;
  t->axV = AxisRef{X.axV->comp, false, X.axV->shift + c};
  t->axH = (c == 0) ? X.axH : std::nullopt;
  t->map_x = X.map_x.compose({ia, sb});
  t->map_y = X.map_y.compose({ia, sb});
  t->steps = X.steps;
  t->steps.push_back("(a, b) <- (a, " + rat_term(c) + ")");
  X.excl.push_back(c);
  X.children.push_back(std::move(t));
  return *X.children.back();
}

// Scan the vertical axis of a freshly created first-kind chart once: every
// point where the reduced transform fails to be a simple crossing gets its own
// translated chart and an immediate blowup.
void duty_d1(ResTree& T, ResNode& X, std::deque<ResNode*>& work) {
  Polynomial gr = bivariate_squarefree_part(X.g);
  long alpha = gr.order_in(0);
  UPoly phi = slice_b(gr, alpha);
  if (phi.is_zero())
    fail(ErrKind::InternalError, "resolve::scan", "vertical slice vanished");
  UPoly mult = UPoly::gcd(phi, phi.derivative());
  if (mult.deg() < 1) return;
  auto rr = rational_roots(mult);
  UPoly rest = mult;
  for (const auto& [r, m] : rr) rest = divide_out_root(rest, r, m);
  if (rest.deg() >= 1) {
    if (!irrational_real_roots(rest).empty())
      fail(ErrKind::IrrationalCenter, "embedded_resolution",
           "blowup center at a non-rational real position");
    fail(ErrKind::IrrationalCenter, "embedded_resolution",
         "blowup center at a conjugate pair of non-real positions");
  }
  for (const auto& [r, m] : rr) {
    ResNode& tr = spawn_translate(X, r);
    blow_at_origin(T, tr, &work);
  }
}

// A second-kind chart only has to examine its own origin (every other point of
// its axes is already covered by an older chart's scan).
void duty_d2(ResTree& T, ResNode& X, std::deque<ResNode*>& work) {
  Polynomial gr = bivariate_squarefree_part(X.g);
  long beta = gr.order_in(1);
  UPoly phi = slice_a(gr, beta);
  if (phi.is_zero())
    fail(ErrKind::InternalError, "resolve::check", "horizontal slice vanished");
  if (ord0(phi) >= 2) blow_at_origin(T, X, &work);
}

void run_worklist(ResTree& T, std::deque<ResNode*>& work) {
  while (!work.empty()) {
    ResNode* n = work.front();
    work.pop_front();
    if (n->kind == ResNode::Kind::D1)
      duty_d1(T, *n, work);
    else if (n->kind == ResNode::Kind::D2)
      duty_d2(T, *n, work);
  }
}

void collect_nodes(ResNode* n, std::vector<ResNode*>& out) {
  out.push_back(n);
  for (auto& c : n->children) collect_nodes(c.get(), out);
}

bool origin_owned(const ResNode& n) {
  if (n.kind == ResNode::Kind::D1)
    return !n.blown && std::find(n.excl.begin(), n.excl.end(), Rat(0)) == n.excl.end();
  if (n.kind == ResNode::Kind::D2) return !n.blown;
  return false;
}

bool chart_public(const ResNode& n) {
  if (n.kind == ResNode::Kind::D1) return true;
  if (n.kind == ResNode::Kind::D2) return !n.blown;
  return false;
}

std::string comp_name(int k) { return "E" + std::to_string(k + 1); }

// ---------------------------------------------------------------------------
// Harvest: read the finished tree into the public resolution record.
// ---------------------------------------------------------------------------

struct CornerObs {
  int comp_fin = -1;   // component carrying the corner at a finite position
  Rat pos_fin;
  int comp_inf = -1;   // component carrying it at its infinity point
  int sign = 0;
  const ResNode* owner = nullptr;
};

ResolutionData harvest(std::shared_ptr<ResTree> T) {
  ResolutionData R;
  R.germ = T->f_orig;
  R.blow_count = T->blow_count;

  std::vector<ResNode*> nodes;
  collect_nodes(T->root.get(), nodes);
  size_t K = T->comps.size();

  // Birth chart pair of each component: the last two children of the node
  // whose origin was blown up to create it.
  std::vector<const ResNode*> birth1(K, nullptr), birth2(K, nullptr);
  for (const ResNode* n : nodes)
    if (n->blown) {
      size_t m = n->children.size();
      if (m < 2) fail(ErrKind::InternalError, "resolve::harvest", "blown chart lacks children");
      const ResNode* b1 = n->children[m - 2].get();
      const ResNode* b2 = n->children[m - 1].get();
      if (b1->kind != ResNode::Kind::D1 || b2->kind != ResNode::Kind::D2)
        fail(ErrKind::InternalError, "resolve::harvest", "unexpected birth pair layout");
      birth1[static_cast<size_t>(n->blown_comp)] = b1;
      birth2[static_cast<size_t>(n->blown_comp)] = b2;
    }

  // Components and geometry.
  for (size_t k = 0; k < K; ++k) {
    if (!birth1[k]) fail(ErrKind::InternalError, "resolve::harvest", "component lost its birth charts");
    DivisorComponent dc;
    dc.id = comp_name(static_cast<int>(k));
    dc.N = T->comps[k].N;
    dc.nu = T->comps[k].nu;
    dc.exceptional = true;
    R.components.push_back(dc);

    ComponentGeometry cg;
    cg.comp = dc.id;
    cg.N = dc.N;
    cg.R1 = slice_b(birth1[k]->g, dc.N);
    cg.R2 = slice_a(birth2[k]->g, dc.N);
    cg.e_inf = cg.N - cg.R1.deg();
    if (ord0(cg.R2) != cg.e_inf)
      fail(ErrKind::InternalError, "resolve::harvest", "birth slices disagree at infinity");
    R.geometry.push_back(cg);
  }

  // Corner observations at owned origins of charts with two divisorial axes.
  std::vector<CornerObs> obs;
  for (const ResNode* n : nodes) {
    if (!origin_owned(*n)) continue;
    if (!n->axV || !n->axH) continue;
    CornerObs o;
    o.comp_fin = n->axV->comp;
    o.pos_fin = n->axV->shift;
    o.comp_inf = n->axH->comp;
    o.owner = n;
    long p = n->g.order_in(0), q = n->g.order_in(1);
    std::vector<unsigned> e{static_cast<unsigned>(p), static_cast<unsigned>(q)};
    Rat u0 = n->g.coeff(e);
    if (u0 == 0)
      fail(ErrKind::InternalError, "resolve::harvest", "crossing with a vanishing unit");
    o.sign = sgn(u0);
    obs.push_back(o);
  }

  // Marks on each component, in its birth coordinate.
  for (size_t k = 0; k < K; ++k) {
    ComponentGeometry& cg = R.geometry[k];
    const CompRec& rec = T->comps[k];
    std::vector<Rat> extra(rec.blown_finite.begin(), rec.blown_finite.end());
    LineCutData line = prepare_line_cuts(cg.R1, extra);
    for (const LineCut& cut : line.cuts) {
      MarkInfo m;
      m.pos = cut.pos;
      m.order = cut.e;
      m.blown = cut.pos.rational && rec.blown_finite.count(cut.pos.r) > 0;
      cg.marks.push_back(m);
    }
    cg.inf_marked = cg.e_inf > 0 || rec.blown_inf;
    if (cg.inf_marked) {
      MarkInfo m;
      m.at_infinity = true;
      m.order = cg.e_inf;
      m.blown = rec.blown_inf;
      cg.marks.push_back(m);
    }

    long complex_marks = cg.R1.squarefree_part().deg();
    for (const Rat& s : rec.blown_finite)
      if (cg.R1.eval(s) != 0) ++complex_marks;
    if (cg.inf_marked) ++complex_marks;
    cg.complex_euler = 2 - complex_marks;
  }

  auto find_mark = [&](int comp, const Rat& pos) -> MarkInfo* {
    for (MarkInfo& m : R.geometry[static_cast<size_t>(comp)].marks)
      if (!m.at_infinity && m.pos.rational && m.pos.r == pos) return &m;
    return nullptr;
  };
  auto find_inf_mark = [&](int comp) -> MarkInfo* {
    for (MarkInfo& m : R.geometry[static_cast<size_t>(comp)].marks)
      if (m.at_infinity) return &m;
    return nullptr;
  };

  for (const CornerObs& o : obs) {
    MarkInfo* mf = find_mark(o.comp_fin, o.pos_fin);
    MarkInfo* mi = find_inf_mark(o.comp_inf);
    if (!mf || !mi)
      fail(ErrKind::InternalError, "resolve::harvest", "crossing without matching marks");
    mf->partner = comp_name(o.comp_inf);
    mi->partner = comp_name(o.comp_fin);
    CornerUnit cu;
    cu.a = comp_name(o.comp_fin);
    cu.b = comp_name(o.comp_inf);
    cu.unit_sign = o.sign;
    R.corner_units.push_back(cu);
  }

  // Strict-transform branches: every still-unpartnered mark crosses one.
  struct BranchRec {
    std::string id;
    int on_comp;     // exceptional component it crosses
    long N;
    bool at_inf;
    LinePos pos;     // when finite
  };
  std::vector<BranchRec> branches;
  for (size_t k = 0; k < K; ++k)
    for (MarkInfo& m : R.geometry[k].marks) {
      if (!m.partner.empty()) continue;
      if (m.blown)
        fail(ErrKind::InternalError, "resolve::harvest", "blown center left unpartnered");
      if (m.order < 1)
        fail(ErrKind::InternalError, "resolve::harvest", "orderless mark left unpartnered");
      BranchRec br;
      br.id = "B" + std::to_string(branches.size() + 1);
      br.on_comp = static_cast<int>(k);
      br.N = m.order;
      br.at_inf = m.at_infinity;
      br.pos = m.pos;
      m.partner = br.id;
      branches.push_back(br);
      DivisorComponent dc;
      dc.id = br.id;
      dc.N = br.N;
      dc.nu = 1;
      dc.exceptional = false;
      R.components.push_back(dc);
    }

  // Public charts.
  struct ChartExport {
    const ResNode* node;
    std::string id;
  };
  std::vector<ChartExport> pub;
  for (const ResNode* n : nodes)
    if (chart_public(*n)) pub.push_back({n, "c" + std::to_string(pub.size() + 1)});

  auto axis_comp_id = [&](const ResNode* n, int axis) -> std::string {
    // axis 0: the a-axis {a = 0}; axis 1: the b-axis {b = 0}.
    long ord = (axis == 0) ? n->g.order_in(0) : n->g.order_in(1);
    if (ord <= 0) return "";
    if (axis == 0 && n->axV) return comp_name(n->axV->comp);
    if (axis == 1 && n->axH) return comp_name(n->axH->comp);
    // A strict-transform branch happens to be this coordinate axis.  It
    // crosses the component on the other axis: at that component's infinity
    // point (branch = a-axis) or at its birth position `shift` (b-axis).
    const MarkInfo* m = nullptr;
    if (axis == 0 && n->axH) m = find_inf_mark(n->axH->comp);
    if (axis == 1 && n->axV) {
      // The crossing sits at this chart's origin.  If that point was blown
      // up later, the branch continues through the first-born child chart at
      // its local origin; follow until the crossing survives.
      const ResNode* cur = n;
      for (;;) {
        if (cur->blown) {
          const auto& ch = cur->children;
          cur = ch[ch.size() - 2].get();
          continue;
        }
        const ResNode* t0 = nullptr;
        for (const auto& ch : cur->children)
          if (ch->kind == ResNode::Kind::Tr && ch->axV && cur->axV &&
              ch->axV->shift == cur->axV->shift)
            t0 = ch.get();
        if (t0) {
          cur = t0;
          continue;
        }
        break;
      }
      if (!cur->axV) fail(ErrKind::InternalError, "resolve::harvest", "branch chase lost its axis");
      for (const MarkInfo& mm : R.geometry[static_cast<size_t>(cur->axV->comp)].marks)
        if (!mm.at_infinity && mm.pos.rational && mm.pos.r == cur->axV->shift) m = &mm;
    }
    if (!m || m->partner.empty() || m->partner[0] != 'B')
      fail(ErrKind::InternalError, "resolve::harvest", "axis branch has no recorded crossing");
    return m->partner;
  };

  for (const ChartExport& ce : pub) {
    const ResNode* n = ce.node;
    Chart c;
    c.id = ce.id;
    c.composed_map = n->steps;
    c.map_x = n->map_x;
    c.map_y = n->map_y;
    c.g = n->g;
    long p = n->g.order_in(0), q = n->g.order_in(1);
    std::string ca = axis_comp_id(n, 0), cb = axis_comp_id(n, 1);
    if (p > 0) {
      if (ca.empty()) fail(ErrKind::InternalError, "resolve::harvest", "unnamed a-axis factor");
      c.divisor_exponents[ca] = {p, 0};
    }
    if (q > 0) {
      if (cb.empty()) fail(ErrKind::InternalError, "resolve::harvest", "unnamed b-axis factor");
      auto it = c.divisor_exponents.find(cb);
      if (it != c.divisor_exponents.end())
        fail(ErrKind::InternalError, "resolve::harvest", "component on both axes");
      c.divisor_exponents[cb] = {0, q};
    }
    c.unit = bivariate_divexact(n->g, axis_monomial(p, q));
    if (n->axV && n->jacA > 0) c.jac_exponents[comp_name(n->axV->comp)] = {n->jacA, 0};
    if (n->axH && n->jacB > 0) c.jac_exponents[comp_name(n->axH->comp)] = {0, n->jacB};
    R.charts.push_back(c);
  }

  auto chart_id_of = [&](const ResNode* n) -> std::string {
    for (const ChartExport& ce : pub)
      if (ce.node == n) return ce.id;
    return "";
  };

  // Strata.
  // Dimension 1: one per divisor component.
  for (size_t k = 0; k < K; ++k) {
    const ComponentGeometry& cg = R.geometry[k];
    Stratum s;
    s.I = {cg.comp};
    s.dimension = 1;
    s.N_I = cg.N;
    s.punctures = static_cast<long>(cg.marks.size());
    for (const ChartExport& ce : pub) {
      const ResNode* n = ce.node;
      int axis = -1;
      if (n->axV && n->axV->comp == static_cast<int>(k))
        axis = 0;
      else if (n->axH && n->axH->comp == static_cast<int>(k))
        axis = 1;
      if (axis < 0) continue;
      StratumPresentation pr;
      pr.chart = ce.id;
      pr.axis = axis;
      for (const MarkInfo& m : cg.marks) {
        if (axis == 0) {
          if (m.at_infinity) continue;  // not visible on a finite vertical axis
          if (m.pos.rational)
            pr.punctures.push_back(m.pos.r - n->axV->shift);
          else
            ++pr.extra_punctures;
        } else {
          if (m.at_infinity) {
            pr.punctures.push_back(Rat(0));
          } else if (m.pos.rational) {
            if (m.pos.r == 0) continue;  // at infinity of this chart's axis
            pr.punctures.push_back(Rat(1) / m.pos.r);
          } else {
            ++pr.extra_punctures;  // finite non-rational position, nonzero
          }
        }
      }
      std::sort(pr.punctures.begin(), pr.punctures.end());
      s.presentations.push_back(pr);
    }
    if (s.presentations.empty())
      fail(ErrKind::InternalError, "resolve::harvest", "exceptional component with no chart");
    R.strata.push_back(s);
  }
  for (const BranchRec& br : branches) {
    Stratum s;
    s.I = {br.id};
    s.dimension = 1;
    s.N_I = br.N;
    s.punctures = 1;  // the crossing with its exceptional component
    for (const ChartExport& ce : pub) {
      const ResNode* n = ce.node;
      int axis = -1;
      long p = n->g.order_in(0), q = n->g.order_in(1);
      if (p > 0 && !n->axV && axis_comp_id(n, 0) == br.id) axis = 0;
      if (q > 0 && !n->axH && axis_comp_id(n, 1) == br.id) axis = 1;
      if (axis < 0) continue;
      StratumPresentation pr;
      pr.chart = ce.id;
      pr.axis = axis;
      pr.punctures.push_back(Rat(0));  // crossing sits at the chart origin
      s.presentations.push_back(pr);
    }
    R.strata.push_back(s);
  }

  // Dimension 0: crossings of two exceptional components...
  for (const CornerObs& o : obs) {
    Stratum s;
    s.I = {comp_name(o.comp_fin), comp_name(o.comp_inf)};
    s.dimension = 0;
    s.N_I = std::gcd(T->comps[static_cast<size_t>(o.comp_fin)].N,
                     T->comps[static_cast<size_t>(o.comp_inf)].N);
    StratumPresentation pr;
    pr.chart = chart_id_of(o.owner);
    if (pr.chart.empty())
      fail(ErrKind::InternalError, "resolve::harvest", "crossing owner chart is not public");
    pr.pa = Rat(0);
    pr.pb = Rat(0);
    s.presentations.push_back(pr);
    R.strata.push_back(s);
  }
  // ... and crossings with strict-transform branches.
  for (const BranchRec& br : branches) {
    Stratum s;
    s.I = {comp_name(br.on_comp), br.id};
    s.dimension = 0;
    s.N_I = std::gcd(T->comps[static_cast<size_t>(br.on_comp)].N, br.N);
    if (br.at_inf) {
      // The crossing is the origin of an owned chart whose horizontal axis is
      // the component (the branch is that chart's vertical axis).
      for (const ChartExport& ce : pub) {
        const ResNode* n = ce.node;
        if (!origin_owned(*n)) continue;
        if (!n->axH || n->axH->comp != br.on_comp) continue;
        if (n->axV) continue;
        StratumPresentation pr;
        pr.chart = ce.id;
        pr.pa = Rat(0);
        pr.pb = Rat(0);
        s.presentations.push_back(pr);
        break;
      }
    } else if (br.pos.rational) {
      // Visible in the component's birth chart at (0, pos).
      const ResNode* b1 = birth1[static_cast<size_t>(br.on_comp)];
      StratumPresentation pr;
      pr.chart = chart_id_of(b1);
      if (pr.chart.empty())
        fail(ErrKind::InternalError, "resolve::harvest", "birth chart is not public");
      pr.pa = Rat(0);
      pr.pb = br.pos.r;
      s.presentations.push_back(pr);
    }
    R.strata.push_back(s);
  }

  // Dual graph from the crossings.
  for (const DivisorComponent& dc : R.components) R.dual_graph[dc.id];
  for (const Stratum& s : R.strata)
    if (s.dimension == 0) {
      R.dual_graph[s.I[0]].push_back(s.I[1]);
      R.dual_graph[s.I[1]].push_back(s.I[0]);
    }
  for (auto& [id, adj] : R.dual_graph) std::sort(adj.begin(), adj.end());

  R.tree = std::move(T);
  return R;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

const DivisorComponent* ResolutionData::find_component(const std::string& id) const {
  for (const auto& c : components)
    if (c.id == id) return &c;
  return nullptr;
}

const ComponentGeometry* ResolutionData::find_geometry(const std::string& id) const {
  for (const auto& g : geometry)
    if (g.comp == id) return &g;
  return nullptr;
}

const Stratum* ResolutionData::find_stratum(const std::vector<std::string>& I) const {
  std::vector<std::string> want(I);
  std::sort(want.begin(), want.end());
  for (const auto& s : strata) {
    std::vector<std::string> have(s.I);
    std::sort(have.begin(), have.end());
    if (have == want) return &s;
  }
  return nullptr;
}

ResolutionData embedded_resolution(const Polynomial& f) {
  if (f.is_zero()) fail(ErrKind::NotAGerm, "embedded_resolution", "the zero polynomial");
  if (f.vars().size() != 2)
    fail(ErrKind::InternalError, "embedded_resolution", "expected a polynomial in two variables");
  std::vector<Rat> origin{Rat(0), Rat(0)};
  if (f.eval(origin) != 0)
    fail(ErrKind::NotAGerm, "embedded_resolution", "the polynomial does not vanish at the origin");

  auto T = std::make_shared<ResTree>();
  T->f_orig = f;
  T->f = recast_ab(f);
  T->root = std::make_unique<ResNode>();
  T->root->kind = ResNode::Kind::Root;
  T->root->g = T->f;
  T->root->map_x = poly_a();
  T->root->map_y = poly_b();

  std::deque<ResNode*> work;
  blow_at_origin(*T, *T->root, &work);
  run_worklist(*T, work);
  return harvest(std::move(T));
}

ResolutionData extra_blowup(const ResolutionData& res, const BlowCenter& center) {
  if (!res.tree) fail(ErrKind::InternalError, "extra_blowup", "resolution lacks its blowup tree");
  const DivisorComponent* dc = res.find_component(center.comp);
  if (!dc || !dc->exceptional)
    fail(ErrKind::InvalidCenter, "extra_blowup",
         "center must sit on a named exceptional component");
  int k = -1;
  for (size_t i = 0; i < res.components.size(); ++i)
    if (res.components[i].id == center.comp) {
      k = static_cast<int>(i);
      break;
    }
  // Exceptional components come first and keep their creation order.
  if (k < 0 || comp_name(k) != center.comp)
    fail(ErrKind::InternalError, "extra_blowup", "component table out of order");

  auto T = res.tree->clone();
  std::vector<ResNode*> nodes;
  collect_nodes(T->root.get(), nodes);

  std::deque<ResNode*> work;
  if (center.at_infinity) {
    ResNode* owner = nullptr;
    for (ResNode* n : nodes)
      if (origin_owned(*n) && n->axH && n->axH->comp == k) owner = n;
    if (!owner)
      fail(ErrKind::InternalError, "extra_blowup", "no chart owns the infinity point");
    blow_at_origin(*T, *owner, &work);
  } else if (T->comps[static_cast<size_t>(k)].blown_finite.count(center.pos) > 0) {
    ResNode* owner = nullptr;
    for (ResNode* n : nodes)
      if (origin_owned(*n) && n->axV && n->axV->comp == k && n->axV->shift == center.pos)
        owner = n;
    if (!owner)
      fail(ErrKind::InternalError, "extra_blowup", "no chart owns the blown position");
    blow_at_origin(*T, *owner, &work);
  } else {
    ResNode* b1 = nullptr;
    for (ResNode* n : nodes)
      if (n->blown && n->blown_comp == k) {
        size_t m = n->children.size();
        b1 = n->children[m - 2].get();
      }
    if (!b1) fail(ErrKind::InternalError, "extra_blowup", "birth chart not found");
    ResNode& tr = spawn_translate(*b1, center.pos);
    blow_at_origin(*T, tr, &work);
  }
  run_worklist(*T, work);
  return harvest(std::move(T));
}

Chart identity_chart(const Polynomial& f) {
  if (f.vars().size() != 2)
    fail(ErrKind::InternalError, "identity_chart", "expected a polynomial in two variables");
  Chart c;
  c.id = "base";
  c.map_x = poly_a();
  c.map_y = poly_b();
  c.g = recast_ab(f);
  c.unit = c.g;
  return c;
}

std::pair<Chart, Chart> blowup_chart(const Chart& chart, const Rat& cx, const Rat& cy) {
  std::vector<Rat> center{cx, cy};
  if (chart.g.is_zero())
    fail(ErrKind::InvalidCenter, "blowup_chart", "the chart transform vanishes identically");
  if (chart.g.eval(center) != 0)
    fail(ErrKind::InvalidCenter, "blowup_chart",
         "center is not on the divisor or strict transform");

  Polynomial ia = poly_a(), ib = poly_b();
  Polynomial g0 = chart.g, mx = chart.map_x, my = chart.map_y;
  std::vector<std::string> steps = chart.composed_map;
  std::map<std::string, std::pair<long, long>> dexp = chart.divisor_exponents;
  if (cx != 0 || cy != 0) {
    Polynomial sa = ia + poly_const(cx), sb = ib + poly_const(cy);
    g0 = g0.compose({sa, sb});
    mx = mx.compose({sa, sb});
    my = my.compose({sa, sb});
    std::ostringstream os;
    os << "(a, b) <- (a + " << rat_str(cx) << ", b + " << rat_str(cy) << ")";
    steps.push_back(os.str());
    // Components whose axis moved off the origin stop being chart axes.
    for (auto it = dexp.begin(); it != dexp.end();) {
      bool keep = (it->second.first > 0 && cx == 0) || (it->second.second > 0 && cy == 0);
      it = keep ? std::next(it) : dexp.erase(it);
    }
  }

  int next_e = 1;
  for (const auto& [id, e] : chart.divisor_exponents)
    if (!id.empty() && id[0] == 'E') ++next_e;
  std::string fresh = "E" + std::to_string(next_e);
  long m = g0.order_at_origin().value_or(0);

  auto mk = [&](bool first) {
    Chart c;
    c.id = chart.id + (first ? ".1" : ".2");
    Polynomial img_a = first ? ia : ia * ib;
    Polynomial img_b = first ? ia * ib : ib;
    c.g = g0.compose({img_a, img_b});
    c.map_x = mx.compose({img_a, img_b});
    c.map_y = my.compose({img_a, img_b});
    c.composed_map = steps;
    c.composed_map.push_back(first ? "(a, b) <- (a, a*b)" : "(a, b) <- (a*b, b)");
    for (const auto& [id, e] : dexp) {
      // Only the axis not meeting the new line survives into this chart.
      if (first && e.second > 0) c.divisor_exponents[id] = {0, e.second};
      if (!first && e.first > 0) c.divisor_exponents[id] = {e.first, 0};
    }
    c.divisor_exponents[fresh] = first ? std::make_pair(m, 0L) : std::make_pair(0L, m);
    Polynomial J = jacobian_det(c.map_x, c.map_y);
    long ja = J.order_in(0), jb = J.order_in(1);
    if (first && ja > 0) c.jac_exponents[fresh] = {ja, 0};
    if (!first && jb > 0) c.jac_exponents[fresh] = {0, jb};
    for (const auto& [id, e] : chart.jac_exponents)
      if (c.divisor_exponents.count(id) && id != fresh)
        c.jac_exponents[id] = c.divisor_exponents[id].first > 0
                                  ? std::make_pair(e.first + e.second, 0L)
                                  : std::make_pair(0L, e.first + e.second);
    long pa = 0, pb = 0;
    for (const auto& [id, e] : c.divisor_exponents) {
      pa += e.first;
      pb += e.second;
    }
    long ga = c.g.order_in(0), gb = c.g.order_in(1);
    if (ga < pa || gb < pb)
      fail(ErrKind::InternalError, "blowup_chart", "exponent bookkeeping exceeds the transform");
    c.unit = bivariate_divexact(c.g, axis_monomial(pa, pb));
    return c;
  };
  return {mk(true), mk(false)};
}

UPoly unit_on_stratum(const ResolutionData& res, const Stratum& s, const std::string& chart_id) {
  const StratumPresentation* pr = nullptr;
  for (const auto& p : s.presentations)
    if (p.chart == chart_id) pr = &p;
  if (!pr)
    fail(ErrKind::NoPresentation, "unit_on_stratum",
         "the stratum is not presented in chart '" + chart_id + "'");
  const Chart* ch = nullptr;
  for (const auto& c : res.charts)
    if (c.id == chart_id) ch = &c;
  if (!ch) fail(ErrKind::NoPresentation, "unit_on_stratum", "unknown chart '" + chart_id + "'");

  if (s.dimension == 1) {
    long ord = (pr->axis == 0) ? ch->g.order_in(0) : ch->g.order_in(1);
    return (pr->axis == 0) ? slice_b(ch->g, ord) : slice_a(ch->g, ord);
  }
  // Dimension 0: slice along the a-axis, then strip the other factor at pb.
  if (pr->pa != 0)
    fail(ErrKind::InternalError, "unit_on_stratum", "point presentation off the a-axis");
  UPoly r = slice_b(ch->g, ch->g.order_in(0));
  long m = root_order(r, pr->pb);
  Rat v = divide_out_root(r, pr->pb, m).eval(pr->pb);
  if (v == 0) fail(ErrKind::InternalError, "unit_on_stratum", "vanishing unit value");
  return UPoly(v);
}

// ---------------------------------------------------------------------------
// Invariant verification
// ---------------------------------------------------------------------------

void verify_resolution(const ResolutionData& res) {
  auto check = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrKind::InternalError, "verify_resolution", what);
  };
  Polynomial f = recast_ab(res.germ);

  check(!res.components.empty(), "no components");
  check(res.components[0].exceptional, "first component not exceptional");
  for (const auto& dc : res.components) check(dc.N >= 1 && dc.nu >= 1, "bad multiplicities");

  for (const Chart& c : res.charts) {
    check(f.compose({c.map_x, c.map_y}) == c.g, "pullback identity fails in " + c.id);
    long pa = 0, pb = 0;
    Polynomial prod = c.unit;
    for (const auto& [id, e] : c.divisor_exponents) {
      const DivisorComponent* dc = res.find_component(id);
      check(dc != nullptr, "chart names unknown component");
      check((e.first > 0) != (e.second > 0), "component must sit on exactly one axis");
      check(e.first + e.second == dc->N, "axis exponent differs from N in " + c.id);
      pa += e.first;
      pb += e.second;
    }
    prod = prod * axis_monomial(pa, pb);
    check(prod == c.g, "unit decomposition fails in " + c.id);
    check(c.unit.order_in(0) == 0 && c.unit.order_in(1) == 0, "unit keeps an axis factor");
    Polynomial J = jacobian_det(c.map_x, c.map_y);
    long ja = 0, jb = 0;
    for (const auto& [id, e] : c.jac_exponents) {
      check(c.divisor_exponents.count(id) > 0, "jacobian exponent for a non-axis component");
      const DivisorComponent* dc = res.find_component(id);
      check(dc->exceptional, "jacobian exponent on a strict transform");
      check(e.first + e.second == dc->nu - 1, "jacobian exponent differs from nu - 1");
      ja += e.first;
      jb += e.second;
    }
    check(J.order_in(0) == ja && J.order_in(1) == jb, "jacobian order mismatch in " + c.id);
  }

  for (const ComponentGeometry& cg : res.geometry) {
    const DivisorComponent* dc = res.find_component(cg.comp);
    check(dc && dc->exceptional, "geometry for unknown component");
    check(cg.R1.deg() <= cg.N, "transverse weight degree exceeds N");
    check(cg.R2 == cg.R1.reversed(cg.N), "birth slices are not reverses");
    check(cg.e_inf == cg.N - cg.R1.deg(), "infinity order mismatch");
    size_t finite = cg.marks.size();
    for (const MarkInfo& m : cg.marks)
      if (m.at_infinity) --finite;
    check(cg.inf_marked == (finite != cg.marks.size()), "infinity mark flag mismatch");
    long neighbours = 0;
    auto it = res.dual_graph.find(cg.comp);
    check(it != res.dual_graph.end(), "component missing from dual graph");
    neighbours = static_cast<long>(it->second.size());
    check(static_cast<long>(cg.marks.size()) == neighbours,
          "marks and dual-graph degree disagree for " + cg.comp);
    for (const MarkInfo& m : cg.marks) check(!m.partner.empty(), "mark without a partner");
  }

  for (const Stratum& s : res.strata) {
    check(s.dimension == 0 || s.dimension == 1, "bad stratum dimension");
    check(static_cast<int>(s.I.size()) == 2 - s.dimension, "|I| and dimension disagree");
    long g = 0;
    for (const auto& id : s.I) {
      const DivisorComponent* dc = res.find_component(id);
      check(dc != nullptr, "stratum names unknown component");
      g = std::gcd(g, dc->N);
    }
    check(s.N_I == g, "N_I is not the gcd over I");
    bool exceptional = false;
    for (const auto& id : s.I)
      if (res.find_component(id)->exceptional) exceptional = true;
    if (exceptional && s.dimension == 1)
      check(!s.presentations.empty(), "exceptional stratum with no presentation");
    for (const auto& pr : s.presentations) {
      bool found = false;
      for (const Chart& c : res.charts) found = found || c.id == pr.chart;
      check(found, "presentation in unknown chart");
    }
    if (s.dimension == 1) {
      const ComponentGeometry* cg = res.find_geometry(s.I[0]);
      if (cg) check(s.punctures == static_cast<long>(cg->marks.size()), "puncture count mismatch");
    }
  }

  // Every pair of adjacent exceptional components carries a crossing sign.
  for (const Stratum& s : res.strata) {
    if (s.dimension != 0) continue;
    const DivisorComponent* a = res.find_component(s.I[0]);
    const DivisorComponent* b = res.find_component(s.I[1]);
    if (!a->exceptional || !b->exceptional) continue;
    bool found = false;
    for (const CornerUnit& cu : res.corner_units)
      if ((cu.a == s.I[0] && cu.b == s.I[1]) || (cu.a == s.I[1] && cu.b == s.I[0]))
        found = true;
    check(found, "crossing without a recorded unit sign");
  }
  for (const CornerUnit& cu : res.corner_units)
    check(cu.unit_sign == 1 || cu.unit_sign == -1, "crossing sign must be a sign");

  // The exceptional subgraph is connected.
  std::set<std::string> exc;
  for (const auto& dc : res.components)
    if (dc.exceptional) exc.insert(dc.id);
  std::set<std::string> seen;
  std::deque<std::string> bfs{*exc.begin()};
  seen.insert(*exc.begin());
  while (!bfs.empty()) {
    std::string id = bfs.front();
    bfs.pop_front();
    auto it = res.dual_graph.find(id);
    if (it == res.dual_graph.end()) continue;
    for (const auto& nb : it->second)
      if (exc.count(nb) && !seen.count(nb)) {
        seen.insert(nb);
        bfs.push_back(nb);
      }
  }
  check(seen.size() == exc.size(), "exceptional components are not connected");
}

}  // namespace motfib
