#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motfib/motives.hpp"
#include "motfib/poly.hpp"
#include "motfib/upoly.hpp"

namespace motfib {

// An affine chart of a composition of point blowups over the origin of the
// (x, y) plane.  Chart coordinates are always called (a, b); `composed_map`
// lists the substitution steps from the base plane down to this chart, and
// `map_x` / `map_y` give the composed images of x and y in (a, b).
//
// The exact identity  f(map_x, map_y) = unit * prod_c a^{p_c} b^{q_c}  holds,
// where (p_c, q_c) runs over `divisor_exponents`.  A component appears there
// exactly when its trace in this chart is one of the coordinate axes: p_c > 0
// means the a-axis {a = 0}, q_c > 0 the b-axis.  `jac_exponents` records the
// same data for the Jacobian determinant of the composed map (exceptional
// components only; strict transforms carry exponent 0 and are omitted).
struct Chart {
  std::string id;
  std::vector<std::string> composed_map;
  Polynomial map_x, map_y;
  std::map<std::string, std::pair<long, long>> divisor_exponents;
  std::map<std::string, std::pair<long, long>> jac_exponents;
  Polynomial unit;
  Polynomial g;  // full pullback f(map_x, map_y)
};

// The chart of the identity map; `f` becomes both `g` and `unit`.
Chart identity_chart(const Polynomial& f);

// Blow up the rational point (cx, cy) of the chart.  Returns the two standard
// charts of the blowup; the first sees the new exceptional line as its a-axis,
// the second as its b-axis.  The center must lie on the vanishing locus of `g`
// (InvalidCenter otherwise).
std::pair<Chart, Chart> blowup_chart(const Chart& chart, const Rat& cx, const Rat& cy);

struct DivisorComponent {
  std::string id;
  long N = 1;   // multiplicity of the pullback of f along the component
  long nu = 1;  // multiplicity of the pullback of dx dy, plus one
  bool exceptional = false;
};

// Where a stratum is visible.  For a one-dimensional stratum the locus is a
// coordinate axis of the chart minus finitely many punctures; only punctures
// with rational chart coordinates are listed, the others are counted.  For a
// zero-dimensional stratum the locus is a single rational point.
struct StratumPresentation {
  std::string chart;
  int axis = 0;  // 0: the a-axis (coordinate b), 1: the b-axis (coordinate a)
  std::vector<Rat> punctures;
  long extra_punctures = 0;
  Rat pa, pb;  // dimension 0 only
};

struct Stratum {
  std::vector<std::string> I;  // component ids; |I| = 2 - dimension
  int dimension = 1;
  long N_I = 1;                // gcd of the multiplicities over I
  long punctures = 0;          // dimension 1: points removed from the component
  std::vector<StratumPresentation> presentations;
};

// A marked point of an exceptional component E, recorded in the coordinate of
// the chart pair where E was born (finite positions on the first chart's
// b-axis, plus possibly the point at infinity).  `order` is the vanishing
// order of the weight R1 (resp. e_inf at infinity); `partner` names the
// component crossing E there, empty for a freely blown center.
struct MarkInfo {
  bool at_infinity = false;
  LinePos pos;
  long order = 0;
  std::string partner;
  bool blown = false;
};

// Birth-chart geometry of one exceptional component E with multiplicity N.
// In the chart pair created by the blowup that produced E, the weight of f
// transverse to E restricts to R1(b) on the first chart and R2(a) on the
// second; they satisfy R2(m) = m^N * R1(1/m).  e_inf = N - deg R1 is the
// vanishing order of the weight at the infinity point of E.
struct ComponentGeometry {
  std::string comp;
  long N = 1;
  UPoly R1, R2;
  long e_inf = 0;
  bool inf_marked = false;     // infinity carries a crossing or a blown center
  std::vector<MarkInfo> marks; // finite marks ascending; infinity last if marked
  long complex_euler = 2;      // Euler characteristic of the open stratum over C
};

// Sign of the unit factor of the pullback of f at a crossing of two
// exceptional components, read in the chart whose origin is that point.
struct CornerUnit {
  std::string a, b;
  int unit_sign = 0;
};

namespace detail {
struct ResTree;
}

struct ResolutionData {
  Polynomial germ;
  std::vector<Chart> charts;  // the charts that jointly cover the resolution
  std::vector<DivisorComponent> components;
  std::vector<Stratum> strata;
  std::map<std::string, std::vector<std::string>> dual_graph;
  std::vector<ComponentGeometry> geometry;  // exceptional components only
  std::vector<CornerUnit> corner_units;
  std::shared_ptr<detail::ResTree> tree;  // retained so extra blowups can resume
  long blow_count = 0;

  const DivisorComponent* find_component(const std::string& id) const;
  const ComponentGeometry* find_geometry(const std::string& id) const;
  const Stratum* find_stratum(const std::vector<std::string>& I) const;
};

// Resolve the germ f (f(0, 0) = 0, f != 0; NotAGerm otherwise) to simple
// normal crossings by iterated point blowups, always blowing up the origin at
// least once.  Every blowup center found along the way must have rational
// coordinates (IrrationalCenter otherwise).
ResolutionData embedded_resolution(const Polynomial& f);

// A rational point on a named exceptional component, either at a finite
// position in the component's birth coordinate or at its infinity point.
struct BlowCenter {
  std::string comp;
  bool at_infinity = false;
  Rat pos;
};

// Blow up one more rational point of the exceptional divisor (a crossing
// point or a free point) and return the refreshed resolution.  The input is
// not modified.  InvalidCenter when the component id is unknown.
ResolutionData extra_blowup(const ResolutionData& res, const BlowCenter& center);

// Restriction of f to a transversal slice along the stratum, divided by the
// monomial of the components in I: a one-variable polynomial in the chart
// coordinate along the stratum (dimension 1, nonvanishing off the punctures)
// or a nonzero constant (dimension 0).  NoPresentation when the stratum is
// not presented in the chart, or `chart_id` is unknown.
UPoly unit_on_stratum(const ResolutionData& res, const Stratum& s, const std::string& chart_id);

// Exhaustive internal consistency check (throws InternalError on violation):
// pullback and unit identities in every chart, multiplicity bookkeeping,
// mark/dual-graph correspondence, and the R1/R2 matching identity.
void verify_resolution(const ResolutionData& res);

}  // namespace motfib
