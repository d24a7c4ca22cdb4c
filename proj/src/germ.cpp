#include "motfib/germ.hpp"

#include <map>
#include <vector>

#include "motfib/errors.hpp"

namespace motfib {

namespace {

// Rank over Q of a list of dense rows, by elimination against pivot rows
// keyed on their leading column.
long rank_of_rows(std::vector<std::vector<Rat>> rows, size_t ncols) {
  std::map<size_t, std::vector<Rat>> pivot;
  long rank = 0;
  for (auto& row : rows) {
    for (;;) {
      size_t lead = ncols;
      for (size_t c = 0; c < ncols; ++c)
        if (row[c] != 0) {
          lead = c;
          break;
        }
      if (lead == ncols) break;
      auto it = pivot.find(lead);
      if (it == pivot.end()) {
        pivot.emplace(lead, std::move(row));
        ++rank;
        break;
      }
      const std::vector<Rat>& p = it->second;
      Rat m = row[lead] / p[lead];
      for (size_t c = lead; c < ncols; ++c) row[c] -= m * p[c];
    }
  }
  return rank;
}

// Dimension of (polynomials of degree <= d) modulo the span of all monomial
// multiples of the two partials, products truncated back to degree <= d.
long truncated_colength(const Polynomial& fx, const Polynomial& fy, long d) {
  auto col = [d](long i, long j) { return static_cast<size_t>(i * (d + 1) + j); };
  std::vector<size_t> compact(static_cast<size_t>((d + 1) * (d + 1)), 0);
  size_t ncols = 0;
  for (long i = 0; i <= d; ++i)
    for (long j = 0; i + j <= d; ++j) compact[col(i, j)] = ncols++;

  std::vector<std::vector<Rat>> rows;
  for (const Polynomial* g : {&fx, &fy}) {
    if (g->is_zero()) continue;
    long og = *g->order_at_origin();
    for (long p = 0; p + og <= d; ++p)
      for (long q = 0; p + q + og <= d; ++q) {
        std::vector<Rat> row(ncols, Rat(0));
        bool nonzero = false;
        for (const auto& [e, c] : g->terms()) {
          long i = e[0] + p;
          long j = e[1] + q;
          if (i + j > d) continue;
          row[compact[col(i, j)]] += c;
          nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  }
  return static_cast<long>(ncols) - rank_of_rows(std::move(rows), ncols);
}

}  // namespace

GermFamily make_family(const Polynomial& body) {
  if (body.vars().size() != 3)
    fail(ErrKind::UnsupportedShape, "make_family",
         "family body needs three variables (parameter first)");
  for (const auto& [e, c] : body.terms())
    if (e[1] == 0 && e[2] == 0)
      fail(ErrKind::NotAGerm, "make_family",
           "a term free of both plane variables keeps the family from "
           "vanishing at the origin");
  return {body};
}

Polynomial specialize(const GermFamily& family, const Rat& t0) {
  const std::vector<std::string>& vars = family.body.vars();
  Polynomial out({vars[1], vars[2]});
  for (const auto& [e, c] : family.body.terms())
    out.add_term({e[1], e[2]}, c * rat_pow(t0, e[0]));
  return out;
}

std::optional<long> milnor_number(const Polynomial& f, long degree_bound) {
  if (f.vars().size() != 2)
    fail(ErrKind::UnsupportedShape, "milnor_number",
         "expected a polynomial in two variables");
  if (!f.is_zero() && f.eval({Rat(0), Rat(0)}) != 0)
    fail(ErrKind::NotAGerm, "milnor_number", "germ must vanish at the origin");

  Polynomial fx = f.derivative(0);
  Polynomial fy = f.derivative(1);
  if (fx.is_zero() && fy.is_zero()) return std::nullopt;
  // A common factor of the partials vanishing at the origin puts a whole
  // curve inside the critical locus.
  Polynomial common =
      fx.is_zero() ? fy : fy.is_zero() ? fx : bivariate_gcd(fx, fy);
  if (common.eval({Rat(0), Rat(0)}) == 0) return std::nullopt;

  long prev = -1;
  int streak = 0;
  for (long d = 1; d <= degree_bound; ++d) {
    long c = truncated_colength(fx, fy, d);
    if (c == prev) {
      if (++streak >= 2) return c;
    } else {
      streak = 0;
    }
    prev = c;
  }
  fail(ErrKind::DegreeBoundExceeded, "milnor_number",
       "colength did not stabilize below the degree bound");
}

}  // namespace motfib
