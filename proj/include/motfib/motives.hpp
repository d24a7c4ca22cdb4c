#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motfib/betapoly.hpp"
#include "motfib/upoly.hpp"

namespace motfib {

// The four sign symbols: exact fibre values +1 / -1 and the two half-open
// tube conditions > 0 / < 0.
enum class Symbol { Plus1, Minus1, Pos, Neg };

const char* symbol_name(Symbol s);                     // "+1", "-1", "pos", "neg"
std::optional<Symbol> parse_symbol(const std::string&);
bool symbol_is_tube(Symbol s);
int symbol_sigma(Symbol s);  // +1 for Plus1/Pos, -1 for Minus1/Neg

// ---- catalog shapes ----

struct ConstructibleShape {
  enum Kind { Points, AffinePower, TorusPower, ProjLine, PuncturedProjLine } kind;
  long count = 0;  // point count / power / power / unused / puncture count
};

BetaPoly beta_constructible(const ConstructibleShape& shape);

// ---- curve descriptors ----

struct CurveDescriptor {
  enum Kind { FinitePoints, PuncturedLine, Superelliptic } kind;
  long count = 0;  // FinitePoints: point count; PuncturedLine: puncture count
  // Superelliptic data: the solution set of t^N * w(s) = sign over the affine
  // s-line minus the punctures (equational targets), or the region
  // t^N * w(s) > 0 / < 0 (tube targets).  w must not vanish at a real
  // non-punctured point.
  long N = 2;
  UPoly w;
  std::vector<Rat> punctures;
  Symbol target = Symbol::Plus1;
};

BetaPoly beta_curve(const CurveDescriptor& c);

// ---- sign-condition recursion ----

// Class of { base : p > 0 } via the quarter/quarter/half recursion through
// the double-cover curves { p = z^2 } and { p = -z^2 }.  The sign polynomial
// lives in the first coordinate of the base; supported bases: AffinePower,
// TorusPower, Points (constant p only).
BetaPoly beta_sign_recursion(const ConstructibleShape& base, const UPoly& p);

struct FormulaAtom {
  ConstructibleShape shape;
  std::optional<UPoly> positive;  // at most one sign condition p > 0
};

BetaPoly beta_atom(const FormulaAtom& atom);

Rat chi_c(const BetaPoly& b);

struct RelationReport {
  BetaPoly total, zero_part, nonzero_part, pos_part, neg_part;
  bool partition_holds = false;   // [q=0] + [q!=0] = [base]
  bool sign_split_holds = false;  // [q>0] + [q<0] + [q=0] = [base]
  bool integral_chi = false;      // every part integral at u = -1
};

RelationReport verify_relations(const ConstructibleShape& base, const UPoly& q);

// ---- shared cover machinery ----
//
// A weighted circle: cuts with local vanishing orders of a weight function,
// and the sign of the weight on each open interval between consecutive cuts.
// circle_cover computes, for the degree-N cyclic cover { t^N * w = 1 }, the
// number of circles of the normalized covering curve and the normalization
// places lying over each cut.

struct CircleCut {
  long e = 0;         // local vanishing order of the weight at the cut
  bool remove = true;  // cut point excluded from the base: places count into removed_places
  bool flip = false;   // strand labels swap when crossing (line-bundle seam)
};

struct CoverCount {
  long circles = 0;
  long removed_places = 0;
  std::vector<long> places;
};

// signs[i] = sign of the weight on the interval following cut i (cyclically).
CoverCount circle_cover(long N, const std::vector<CircleCut>& cuts,
                        const std::vector<int>& signs);

// ---- affine line preparation ----

// A cut position on the affine line: rational or real algebraic.
struct LinePos {
  bool rational = true;
  Rat r;
  AlgNum a;
  std::string str() const;
};

struct LineCut {
  LinePos pos;
  long e = 0;  // vanishing order of w (0 for non-root marks)
};

struct LineCutData {
  std::vector<LineCut> cuts;   // ascending
  std::vector<int> signs;      // size cuts.size()+1: signs of w on the affine intervals
};

// Cut the line at all real roots of w (with orders) and at the extra rational
// marks (order = root order, possibly 0), and record interval signs of w.
LineCutData prepare_line_cuts(const UPoly& w, const std::vector<Rat>& extra_marks);

// Class of the full affine curve { t^N = v } (points over roots included).
BetaPoly affine_power_curve_class(long N, const UPoly& v);

// Class of { t^N * w = sigma } over the affine line minus the given rational
// marks.  Fibres over marks are excluded; fibres over roots of w are empty
// on this curve regardless of marking.
BetaPoly affine_cover_class(long N, const UPoly& w, int sigma,
                            const std::vector<Rat>& marks);

}  // namespace motfib
