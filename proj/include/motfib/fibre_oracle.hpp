#pragma once

#include <vector>

#include "motfib/motives.hpp"
#include "motfib/poly.hpp"

namespace motfib {

// Topological census of one real fibre or tube of a germ inside the open
// disk of radius delta: the level set {f = eta} / {f = -eta} for the
// equational symbols, the open band {0 < f < eta} / {-eta < f < 0} for the
// tube symbols.  `eta` records the level actually used — it may differ from
// the requested one by a tiny rational shift when the requested level passed
// exactly through a grid node.  `stabilized` reports that the last two grid
// refinements produced identical counts.
struct FibreReport {
  Symbol symbol = Symbol::Plus1;
  Rat delta;
  Rat eta;
  long components_arcs = 0;
  long components_circles = 0;
  long regions = 0;
  long chi_c = 0;
  long grid_resolution = 0;
  bool stabilized = false;
};

// Default level for a germ: delta^(total degree) / 100.
Rat default_eta(const Polynomial& f, const Rat& delta);

// Counts the connected pieces of the fibre (arcs and circles) or of the tube
// (regions) by exact sign evaluation of f at the nodes of a uniform rational
// grid on [-delta, delta]^2, clipped to the open disk x^2 + y^2 < delta^2.
// chi_c is -(number of arcs) for the equational symbols and the alternating
// vertex/edge/face count of the fully interior cells for the tube symbols.
// The grid starts at 64 intervals and doubles until two consecutive runs
// agree or max_grid is exceeded.  Raises NotIsolated for a non-isolated
// critical point, NotAGerm, and GridDegeneracy when repeated level shifts
// cannot avoid a grid node.
FibreReport fibre_topology(const Polynomial& f, Symbol sym, const Rat& delta,
                           const Rat& eta, long max_grid = 1024);

// One side-by-side comparison of the two independent computations of the
// compactly-supported Euler characteristic attached to a symbol: the symbolic
// engine's value at u = -1 against (minus) the grid census.
struct FibreIdentityEntry {
  Symbol symbol = Symbol::Plus1;
  long engine_chi = 0;  // chi_c of the motivic fibre
  long oracle_chi = 0;  // chi_c of the grid census
  bool stabilized = false;
  bool pass = false;  // engine_chi == -oracle_chi and stabilized
};

struct FibreIdentityReport {
  std::vector<FibreIdentityEntry> entries;
  bool all_pass = false;
};

// Runs the comparison for all four symbols at delta = 1/2 and the default
// eta, resolving the germ once.  The default grid cap is higher than the
// census default because thin tube bands near the disk boundary only resolve
// at a few thousand intervals.
FibreIdentityReport verify_fibre_identity(const Polynomial& f,
                                          long max_grid = 4096);

}  // namespace motfib
