#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motfib/betapoly.hpp"
#include "motfib/germ.hpp"
#include "motfib/motives.hpp"

namespace motfib {

// One evaluated parameter value: either the class of the motivic fibre of
// the specialized germ, or the name of the error that prevented it.
struct ScanSample {
  Rat t;
  std::optional<BetaPoly> beta;
  std::string failure;  // empty on success

  bool ok() const { return failure.empty(); }
};

// A maximal run of consecutive samples sharing one value (or one failure).
struct ScanInterval {
  Rat left;
  Rat right;
  std::optional<BetaPoly> beta;
  std::string failure;
};

struct ScanReport {
  Symbol symbol = Symbol::Plus1;
  std::vector<ScanSample> samples;
  std::vector<ScanInterval> intervals;
  std::vector<Rat> breakpoints;
};

// Parameter values where the lowest-degree form of the family changes its
// multiplicity structure: values killing every coefficient of the form, and
// roots of the formal resultant of the two partial derivatives of the form's
// squarefree part.  Candidates only — changes driven by higher-order terms
// surface through scanning instead.
std::vector<Rat> detect_breakpoints(const GermFamily& family);

// Evaluates the class of the motivic fibre at n equally spaced parameter
// values in [lo, hi], augmented with the detected breakpoints in range and
// with midpoints between each breakpoint and its grid neighbours.  Evaluation
// failures are recorded as data, never thrown.  `jobs` > 1 evaluates samples
// concurrently; the report does not depend on it.
ScanReport scan(const GermFamily& family, const Rat& lo, const Rat& hi, long n,
                Symbol sym, int jobs = 1);

}  // namespace motfib
