#include "motfib/fibre_oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "motfib/errors.hpp"
#include "motfib/germ.hpp"
#include "motfib/zeta.hpp"

namespace motfib {

namespace {

struct Counts {
  long arcs = 0;
  long circles = 0;
  long regions = 0;
  long chi = 0;
  bool operator==(const Counts&) const = default;
};

struct Dsu {
  std::unordered_map<long, long> parent;
  long find(long a) {
    auto it = parent.find(a);
    if (it == parent.end()) {
      parent.emplace(a, a);
      return a;
    }
    long root = a;
    while (parent[root] != root) root = parent[root];
    while (parent[a] != root) {
      long next = parent[a];
      parent[a] = root;
      a = next;
    }
    return root;
  }
  void unite(long a, long b) { parent[find(a)] = find(b); }
};

// Evaluates f row by row: freeze y, collapse to a univariate polynomial in x.
class RowEvaluator {
 public:
  explicit RowEvaluator(const Polynomial& f) {
    for (const Polynomial& c : f.nested(0)) coeff_y_.push_back(c.to_upoly(1));
  }
  void set_row(const Rat& y) {
    std::vector<Rat> c;
    c.reserve(coeff_y_.size());
    for (const UPoly& p : coeff_y_) c.push_back(p.eval(y));
    row_ = UPoly(std::move(c));
  }
  Rat at(const Rat& x) const { return row_.eval(x); }

 private:
  std::vector<UPoly> coeff_y_;
  UPoly row_;
};

// One sign-exact census at a fixed grid resolution.  nullopt reports that the
// eta-level passes exactly through a node or a face center.
std::optional<Counts> run_grid(const Polynomial& f, Symbol sym,
                               const Rat& delta, const Rat& eta, long r) {
  const bool tube = symbol_is_tube(sym);
  const bool upper = sym == Symbol::Plus1 || sym == Symbol::Pos;
  const Rat level = upper ? eta : -eta;
  const long n = r + 1;

  std::vector<Rat> coords;
  coords.reserve(n);
  const Rat step = (delta * 2) / Rat(r);
  for (long i = 0; i < n; ++i) coords.push_back(-delta + step * Rat(i));
  const Rat disk_sq = delta * delta;

  // state: for equational symbols, the side of the level (f > level);
  // for tube symbols, strict membership in band and open disk.
  std::vector<std::uint8_t> state(n * n), in_disk(n * n);
  RowEvaluator rows(f);
  for (long j = 0; j < n; ++j) {
    rows.set_row(coords[j]);
    const Rat y_sq = coords[j] * coords[j];
    for (long i = 0; i < n; ++i) {
      Rat v = rows.at(coords[i]);
      if (v == level) return std::nullopt;
      bool inside = coords[i] * coords[i] + y_sq < disk_sq;
      in_disk[j * n + i] = inside;
      if (tube) {
        bool in_band = upper ? (v > 0 && v < eta) : (v > -eta && v < 0);
        state[j * n + i] = inside && in_band;
      } else {
        state[j * n + i] = v > level;
      }
    }
  }

  auto vid = [n](long i, long j) { return j * n + i; };

  if (tube) {
    // Alternating count over the open cells fully interior to the band.
    auto hid = [n](long i, long j) { return n * n + j * n + i; };
    auto wid = [n](long i, long j) { return 2 * n * n + j * n + i; };
    auto fid = [n](long i, long j) { return 3 * n * n + j * n + i; };
    long v_cnt = 0, e_cnt = 0, f_cnt = 0;
    Dsu dsu;
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i)
        if (state[vid(i, j)]) {
          ++v_cnt;
          dsu.find(vid(i, j));
        }
    for (long j = 0; j < n; ++j)
      for (long i = 0; i + 1 < n; ++i)
        if (state[vid(i, j)] && state[vid(i + 1, j)]) {
          ++e_cnt;
          dsu.unite(hid(i, j), vid(i, j));
          dsu.unite(hid(i, j), vid(i + 1, j));
        }
    for (long j = 0; j + 1 < n; ++j)
      for (long i = 0; i < n; ++i)
        if (state[vid(i, j)] && state[vid(i, j + 1)]) {
          ++e_cnt;
          dsu.unite(wid(i, j), vid(i, j));
          dsu.unite(wid(i, j), vid(i, j + 1));
        }
    for (long j = 0; j + 1 < n; ++j)
      for (long i = 0; i + 1 < n; ++i)
        if (state[vid(i, j)] && state[vid(i + 1, j)] &&
            state[vid(i, j + 1)] && state[vid(i + 1, j + 1)]) {
          ++f_cnt;
          dsu.unite(fid(i, j), vid(i, j));
        }
    Counts c;
    c.chi = v_cnt - e_cnt + f_cnt;
    std::unordered_set<long> roots;
    for (long j = 0; j < n; ++j)
      for (long i = 0; i < n; ++i)
        if (state[vid(i, j)]) roots.insert(dsu.find(vid(i, j)));
    c.regions = static_cast<long>(roots.size());
    return c;
  }

  // Level-curve tracing over the faces whose closed square lies in the open
  // disk (the farthest point of a square from the origin is a corner, so the
  // corner test is exact).
  auto hedge = [n](long i, long j) { return j * n + i; };
  auto vedge = [n](long i, long j) { return n * n + j * n + i; };
  std::vector<std::pair<long, long>> pairs;
  for (long j = 0; j + 1 < n; ++j)
    for (long i = 0; i + 1 < n; ++i) {
      if (!(in_disk[vid(i, j)] && in_disk[vid(i + 1, j)] &&
            in_disk[vid(i, j + 1)] && in_disk[vid(i + 1, j + 1)]))
        continue;
      bool bl = state[vid(i, j)], br = state[vid(i + 1, j)];
      bool tl = state[vid(i, j + 1)], tr = state[vid(i + 1, j + 1)];
      long bottom = hedge(i, j), top = hedge(i, j + 1);
      long left = vedge(i, j), right = vedge(i + 1, j);
      int crossings = (bl != br) + (tl != tr) + (bl != tl) + (br != tr);
      if (crossings == 0) continue;
      if (crossings == 2) {
        long a = -1, b = -1;
        auto put = [&](long e) { (a < 0 ? a : b) = e; };
        if (bl != br) put(bottom);
        if (tl != tr) put(top);
        if (bl != tl) put(left);
        if (br != tr) put(right);
        pairs.emplace_back(a, b);
      } else if (crossings == 4) {
        // Saddle face: the exact center sign decides which corners pinch off.
        Rat cx = (coords[i] + coords[i + 1]) / 2;
        Rat cy = (coords[j] + coords[j + 1]) / 2;
        Rat v = f.eval({cx, cy});
        if (v == level) return std::nullopt;
        if ((v > level) == bl) {
          pairs.emplace_back(bottom, right);
          pairs.emplace_back(top, left);
        } else {
          pairs.emplace_back(bottom, left);
          pairs.emplace_back(top, right);
        }
      } else {
        fail(ErrKind::InternalError, "run_grid", "odd crossing count on a face");
      }
    }

  Dsu dsu;
  for (const auto& [a, b] : pairs) dsu.unite(a, b);
  std::unordered_set<long> edges;
  for (const auto& [a, b] : pairs) {
    edges.insert(a);
    edges.insert(b);
  }
  std::unordered_map<long, long> edge_cnt, pair_cnt;
  for (long e : edges) ++edge_cnt[dsu.find(e)];
  for (const auto& [a, b] : pairs) ++pair_cnt[dsu.find(a)];
  Counts c;
  for (const auto& [root, ec] : edge_cnt) {
    long pc = pair_cnt[root];
    if (pc == ec)
      ++c.circles;
    else if (pc == ec - 1)
      ++c.arcs;
    else
      fail(ErrKind::InternalError, "run_grid", "level curve component branches");
  }
  c.chi = -c.arcs;
  return c;
}

struct RunOutcome {
  Counts counts;
  long grid = 0;
  bool stabilized = false;
};

std::optional<RunOutcome> attempt(const Polynomial& f, Symbol sym,
                                  const Rat& delta, const Rat& eta,
                                  long max_grid) {
  long start = std::min<long>(64, max_grid);
  std::optional<Counts> prev = run_grid(f, sym, delta, eta, start);
  if (!prev) return std::nullopt;
  long grid = start;
  for (long next = start * 2; next <= max_grid; next *= 2) {
    std::optional<Counts> cur = run_grid(f, sym, delta, eta, next);
    if (!cur) return std::nullopt;
    if (*cur == *prev) return RunOutcome{*cur, next, true};
    prev = cur;
    grid = next;
  }
  return RunOutcome{*prev, grid, false};
}

}  // namespace

Rat default_eta(const Polynomial& f, const Rat& delta) {
  long d = f.total_degree();
  if (d < 1) fail(ErrKind::NotAGerm, "default_eta", "zero or constant polynomial");
  return rat_pow(delta, static_cast<unsigned long>(d)) / 100;
}

FibreReport fibre_topology(const Polynomial& f, Symbol sym, const Rat& delta,
                           const Rat& eta, long max_grid) {
  if (delta <= 0 || eta <= 0)
    fail(ErrKind::UnsupportedShape, "fibre_topology",
         "delta and eta must be positive");
  if (max_grid < 2)
    fail(ErrKind::UnsupportedShape, "fibre_topology", "max_grid must be at least 2");
  if (!milnor_number(f))
    fail(ErrKind::NotIsolated, "fibre_topology",
         "the critical point is not isolated");

  for (int shift = 0; shift <= 5; ++shift) {
    Rat used = eta;
    if (shift > 0) {
      Rat wiggle = Rat(1, 65536);
      for (int a = 1; a < shift; ++a) wiggle /= 3;
      used = eta * (Rat(1) - wiggle);
    }
    std::optional<RunOutcome> out = attempt(f, sym, delta, used, max_grid);
    if (!out) continue;
    FibreReport rep;
    rep.symbol = sym;
    rep.delta = delta;
    rep.eta = used;
    rep.components_arcs = out->counts.arcs;
    rep.components_circles = out->counts.circles;
    rep.regions = out->counts.regions;
    rep.chi_c = out->counts.chi;
    rep.grid_resolution = out->grid;
    rep.stabilized = out->stabilized;
    return rep;
  }
  fail(ErrKind::GridDegeneracy, "fibre_topology",
       "could not shift the level off the grid nodes");
}

FibreIdentityReport verify_fibre_identity(const Polynomial& f, long max_grid) {
  ResolutionData res = embedded_resolution(f);
  const Rat delta(1, 2);
  const Rat eta = default_eta(f, delta);
  FibreIdentityReport report;
  report.all_pass = true;
  for (Symbol s :
       {Symbol::Plus1, Symbol::Minus1, Symbol::Pos, Symbol::Neg}) {
    FibreReport fr = fibre_topology(f, s, delta, eta, max_grid);
    Rat engine = motivic_fibre(res, s).at_minus_one();
    if (engine.get_den() != 1)
      fail(ErrKind::InternalError, "verify_fibre_identity",
           "engine value is not an integer");
    FibreIdentityEntry e;
    e.symbol = s;
    e.engine_chi = to_long(engine.get_num(), "verify_fibre_identity");
    e.oracle_chi = fr.chi_c;
    e.stabilized = fr.stabilized;
    e.pass = fr.stabilized && e.engine_chi == -fr.chi_c;
    report.all_pass = report.all_pass && e.pass;
    report.entries.push_back(e);
  }
  return report;
}

}  // namespace motfib
