#include "motfib/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "motfib/arcs.hpp"
#include "motfib/errors.hpp"
#include "motfib/family.hpp"
#include "motfib/fibre_oracle.hpp"
#include "motfib/germ.hpp"
#include "motfib/jsonio.hpp"
#include "motfib/resolve.hpp"
#include "motfib/zeta.hpp"

namespace motfib {

namespace {

const std::vector<std::string> kPlaneVars = {"x", "y"};
const std::vector<std::string> kFamilyVars = {"t", "x", "y"};
const Symbol kSymbols[] = {Symbol::Plus1, Symbol::Minus1, Symbol::Pos,
                           Symbol::Neg};

// Germs exercised by the default self-check.
const std::vector<std::string> kCheckSuite = {"x^2 + y^2", "x*y", "x^2 - y^2",
                                              "y^2 - x^3"};

struct Options {
  std::string germ;
  std::string family_text;
  std::string symbol = "+1";
  std::string delta = "1/2";
  std::string eta;
  std::string variant = "single";
  std::string output;
  std::string format = "json";
  std::vector<std::string> range;
  std::vector<long> monomial;
  long max_order = 8;
  long iterates = 12;
  long samples = 9;
  long max_grid = 0;  // 0: use MM_MAX_GRID or the subcommand default
  long jobs = 1;
};

Symbol symbol_from_flag(const std::string& s) {
  std::optional<Symbol> sym = parse_symbol(s);
  if (!sym) fail(ErrKind::SyntaxError, "cli", "unknown symbol '" + s + "'");
  return *sym;
}

long grid_cap(const Options& o, long fallback) {
  if (o.max_grid > 0) return o.max_grid;
  const char* v = std::getenv("MM_MAX_GRID");
  if (v && *v) {
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (end != v && !*end && n >= 2) return n;
  }
  return fallback;
}

long integral_chi(const BetaPoly& b, const std::string& where) {
  Rat c = b.at_minus_one();
  if (c.get_den() != 1)
    fail(ErrKind::InternalError, where, "non-integral Euler characteristic");
  return to_long(c.get_num(), where.c_str());
}

Rat rat_flag(const std::string& text, const std::string& flag) {
  std::optional<Rat> v = parse_rat(text);
  if (!v)
    fail(ErrKind::SyntaxError, "cli",
         "invalid rational '" + text + "' for " + flag);
  return *v;
}

// ---- per-subcommand handlers: fill the JSON document and the pretty text ----

struct Rendered {
  Json doc;
  std::string pretty;
  std::string csv;
  int code = 0;
};

Rendered do_resolve(const Options& o) {
  ResolutionData res = embedded_resolution(parse_polynomial(o.germ, kPlaneVars));
  Rendered r;
  r.doc = resolution_json(res);
  std::ostringstream os;
  os << "germ: " << res.germ.str() << "\n";
  os << "blowups: " << res.blow_count << "\n";
  os << "components:\n";
  for (const DivisorComponent& c : res.components)
    os << "  " << c.id << ": N=" << c.N << " nu=" << c.nu
       << (c.exceptional ? " exceptional" : " strict") << "\n";
  os << "dual graph:\n";
  for (const auto& [id, nbrs] : res.dual_graph) {
    os << "  " << id << ":";
    for (const std::string& n : nbrs) os << " " << n;
    os << "\n";
  }
  os << "strata:\n";
  for (const Stratum& s : res.strata) {
    os << "  {";
    for (size_t i = 0; i < s.I.size(); ++i) os << (i ? "," : "") << s.I[i];
    os << "}: dim=" << s.dimension << " N_I=" << s.N_I;
    if (s.dimension == 1) os << " punctures=" << s.punctures;
    os << "\n";
  }
  os << "charts:";
  for (const Chart& c : res.charts) os << " " << c.id;
  os << "\n";
  r.pretty = os.str();
  return r;
}

std::string factor_str(const ZetaFactor& f) {
  std::ostringstream os;
  os << "u^-" << f.nu << " T^" << f.N << " / (1 - u^-" << f.nu << " T^" << f.N
     << ")";
  return os.str();
}

Rendered do_zeta(const Options& o) {
  Symbol sym = symbol_from_flag(o.symbol);
  Polynomial f = parse_polynomial(o.germ, kPlaneVars);
  ResolutionData res = embedded_resolution(f);
  ZetaFunction z = motivic_zeta(res, sym);
  std::vector<BetaPoly> series = zeta_series(z, o.max_order);
  Rendered r;
  r.doc["germ"] = f.str();
  r.doc["symbol"] = symbol_name(sym);
  r.doc["rational_form"] = Json{{"terms", zeta_json(z)["terms"]}};
  Json ser = Json::array();
  for (const BetaPoly& b : series) ser.push_back(beta_json(b));
  r.doc["series"] = ser;
  std::ostringstream os;
  os << "Z^" << symbol_name(sym) << "(" << f.str() << "):\n";
  if (z.terms.empty()) os << "  0\n";
  for (const ZetaTerm& t : z.terms) {
    os << "  + (" << t.coefficient.str() << ")";
    for (const ZetaFactor& fac : t.factors) os << " * [" << factor_str(fac) << "]";
    os << "\n";
  }
  os << "series:\n";
  for (size_t k = 0; k < series.size(); ++k)
    os << "  T^" << (k + 1) << ": " << series[k].str() << "\n";
  r.pretty = os.str();
  return r;
}

Rendered do_milnor(const Options& o) {
  Polynomial f = parse_polynomial(o.germ, kPlaneVars);
  std::optional<long> mu = milnor_number(f);
  ResolutionData res = embedded_resolution(f);
  Rendered r;
  r.doc["germ"] = f.str();
  r.doc["mu"] = mu ? Json(*mu) : Json("infinity");
  Json S = Json::object(), chi = Json::object();
  std::ostringstream os;
  os << "germ: " << f.str() << "\n";
  os << "mu: " << (mu ? std::to_string(*mu) : "infinity") << "\n";
  for (Symbol sym : kSymbols) {
    BetaPoly b = motivic_fibre(res, sym);
    long c = integral_chi(b, "milnor");
    S[symbol_name(sym)] = b.str();
    chi[symbol_name(sym)] = c;
    os << "S^" << symbol_name(sym) << " = " << b.str()
       << "   chi_tilde = " << c << "\n";
  }
  r.doc["S"] = S;
  r.doc["chi_tilde"] = chi;
  r.pretty = os.str();
  return r;
}

Rendered do_fibre(const Options& o) {
  Symbol sym = symbol_from_flag(o.symbol);
  Polynomial f = parse_polynomial(o.germ, kPlaneVars);
  Rat delta = rat_flag(o.delta, "--delta");
  Rat eta = o.eta.empty() ? default_eta(f, delta) : rat_flag(o.eta, "--eta");
  FibreReport rep = fibre_topology(f, sym, delta, eta, grid_cap(o, 1024));
  Rendered r;
  r.doc = fibre_json(rep);
  r.doc["germ"] = f.str();
  std::ostringstream os;
  os << "germ: " << f.str() << "\n"
     << "symbol: " << symbol_name(rep.symbol) << "\n"
     << "delta: " << rat_str(rep.delta) << "\n"
     << "eta: " << rat_str(rep.eta) << "\n"
     << "arcs: " << rep.components_arcs << "\n"
     << "circles: " << rep.components_circles << "\n"
     << "regions: " << rep.regions << "\n"
     << "chi_c: " << rep.chi_c << "\n"
     << "grid: " << rep.grid_resolution << "\n"
     << "stabilized: " << (rep.stabilized ? "yes" : "no") << "\n";
  r.pretty = os.str();
  return r;
}

Rendered do_acampo(const Options& o) {
  Polynomial f = parse_polynomial(o.germ, kPlaneVars);
  ResolutionData res = embedded_resolution(f);
  LefschetzVariant variant = o.variant == "subset" ? LefschetzVariant::Subset
                                                   : LefschetzVariant::Single;
  Rendered r;
  r.doc["germ"] = f.str();
  r.doc["variant"] = o.variant;
  Json vals = Json::array();
  std::ostringstream os;
  os << "germ: " << f.str() << "\nvariant: " << o.variant << "\n";
  for (long k = 0; k <= o.iterates; ++k) {
    long v = lefschetz_number(res, k, variant);
    vals.push_back(v);
    os << "Lambda(h^" << k << ") = " << v << "\n";
  }
  r.doc["lefschetz"] = vals;
  r.pretty = os.str();
  return r;
}

Rendered do_naive_zeta(const Options& o) {
  Symbol sym = symbol_from_flag(o.symbol);
  long a = o.monomial[0], b = o.monomial[1];
  Rendered r;
  r.doc["monomial"] = Json::array({a, b});
  r.doc["symbol"] = symbol_name(sym);
  Json coeffs = Json::array();
  std::ostringstream os;
  os << "arc-count coefficients of x^" << a << " y^" << b << " (" << symbol_name(sym)
     << "):\n";
  for (long k = 1; k <= o.max_order; ++k) {
    BetaPoly c = naive_coefficient(a, b, k, sym);
    coeffs.push_back(beta_json(c));
    os << "  T^" << k << ": " << c.str() << "\n";
  }
  r.doc["coefficients"] = coeffs;
  r.pretty = os.str();
  return r;
}

Rendered do_family(const Options& o) {
  Symbol sym = symbol_from_flag(o.symbol);
  GermFamily fam = make_family(parse_polynomial(o.family_text, kFamilyVars));
  Rat lo = rat_flag(o.range[0], "--range");
  Rat hi = rat_flag(o.range[1], "--range");
  ScanReport rep = scan(fam, lo, hi, o.samples, sym,
                        static_cast<int>(o.jobs));
  Rendered r;
  r.doc = scan_json(rep);
  r.doc["family"] = fam.body.str();
  r.csv = scan_csv(rep);
  std::ostringstream os;
  os << "family: " << fam.body.str() << "\n";
  os << "symbol: " << symbol_name(rep.symbol) << "\n";
  os << "breakpoints:";
  for (const Rat& b : rep.breakpoints) os << " " << rat_str(b);
  os << "\n";
  os << "intervals:\n";
  for (const ScanInterval& iv : rep.intervals)
    os << "  [" << rat_str(iv.left) << ", " << rat_str(iv.right)
       << "]: " << (iv.beta ? iv.beta->str() : iv.failure) << "\n";
  os << "samples:\n";
  for (const ScanSample& s : rep.samples)
    os << "  " << rat_str(s.t) << ": " << (s.ok() ? s.beta->str() : s.failure)
       << "\n";
  r.pretty = os.str();
  return r;
}

Rendered do_check(const Options& o) {
  std::vector<std::string> suite =
      o.germ.empty() ? kCheckSuite : std::vector<std::string>{o.germ};
  long cap = grid_cap(o, 4096);
  Rendered r;
  Json results = Json::array();
  bool all = true;
  std::ostringstream os;
  for (const std::string& text : suite) {
    Polynomial f = parse_polynomial(text, kPlaneVars);
    FibreIdentityReport rep = verify_fibre_identity(f, cap);
    Json entry = identity_json(rep);
    entry["germ"] = f.str();
    results.push_back(entry);
    all = all && rep.all_pass;
    for (const FibreIdentityEntry& e : rep.entries)
      os << f.str() << "  " << symbol_name(e.symbol) << "  engine=" << e.engine_chi
         << " census=" << e.oracle_chi
         << (e.stabilized ? " stabilized" : " UNSTABLE")
         << (e.pass ? "  PASS" : "  FAIL") << "\n";
  }
  os << (all ? "all comparisons pass" : "comparison FAILURES present") << "\n";
  r.doc["results"] = results;
  r.doc["all_pass"] = all;
  r.pretty = os.str();
  r.code = all ? 0 : 3;
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Exact sign-refined zeta functions, motivic fibres, monodromy "
               "traces, and numeric cross-checks for plane-curve germs"};
  app.name("motfib");
  app.require_subcommand(1);

  auto add_output = [&](CLI::App* s, bool csv_ok) {
    s->add_option("--output", o.output, "write the report to this file");
    CLI::Option* fmt = s->add_option("--format", o.format, "output format");
    if (csv_ok)
      fmt->check(CLI::IsMember({"json", "csv", "pretty"}));
    else
      fmt->check(CLI::IsMember({"json", "pretty"}));
  };
  auto add_symbol = [&](CLI::App* s) {
    s->add_option("--symbol", o.symbol, "sign symbol")
        ->check(CLI::IsMember({"+1", "-1", "pos", "neg"}));
  };

  CLI::App* c_resolve = app.add_subcommand(
      "resolve", "embedded resolution: components, strata, dual graph");
  c_resolve->add_option("germ", o.germ, "polynomial in x, y")->required();
  add_output(c_resolve, false);

  CLI::App* c_zeta = app.add_subcommand(
      "zeta", "sign-refined zeta function in rational form plus its series");
  c_zeta->add_option("germ", o.germ, "polynomial in x, y")->required();
  add_symbol(c_zeta);
  c_zeta->add_option("--max-order", o.max_order, "series truncation order")
      ->check(CLI::PositiveNumber);
  add_output(c_zeta, false);

  CLI::App* c_milnor = app.add_subcommand(
      "milnor", "Milnor number plus the motivic fibre for all four symbols");
  c_milnor->add_option("germ", o.germ, "polynomial in x, y")->required();
  add_output(c_milnor, false);

  CLI::App* c_fibre = app.add_subcommand(
      "fibre", "numeric census of one real fibre or tube on an exact grid");
  c_fibre->add_option("germ", o.germ, "polynomial in x, y")->required();
  add_symbol(c_fibre);
  c_fibre->add_option("--delta", o.delta, "disk radius p/q");
  c_fibre->add_option("--eta", o.eta, "level p/q (default delta^deg/100)");
  c_fibre->add_option("--max-grid", o.max_grid, "grid refinement cap")
      ->check(CLI::PositiveNumber);
  add_output(c_fibre, false);

  CLI::App* c_acampo = app.add_subcommand(
      "acampo", "Lefschetz numbers of the monodromy iterates");
  c_acampo->add_option("germ", o.germ, "polynomial in x, y")->required();
  c_acampo->add_option("--iterates", o.iterates, "largest iterate to report")
      ->check(CLI::NonNegativeNumber);
  c_acampo->add_option("--variant", o.variant, "fixed-point bookkeeping")
      ->check(CLI::IsMember({"single", "subset"}));
  add_output(c_acampo, false);

  CLI::App* c_naive = app.add_subcommand(
      "naive-zeta", "arc-count series of a monomial germ, order by order");
  c_naive->add_option("--monomial", o.monomial, "exponents a b")
      ->required()
      ->expected(2);
  add_symbol(c_naive);
  c_naive->add_option("--max-order", o.max_order, "series truncation order")
      ->check(CLI::PositiveNumber);
  add_output(c_naive, false);

  CLI::App* c_family = app.add_subcommand(
      "family", "scan a one-parameter family for jumps of the fibre class");
  c_family->add_option("--family", o.family_text, "polynomial in t, x, y")
      ->required();
  c_family->add_option("--range", o.range, "parameter range lo hi")
      ->required()
      ->expected(2);
  c_family->add_option("--samples", o.samples, "number of grid samples")
      ->check(CLI::Range(2l, 1000000l));
  add_symbol(c_family);
  c_family->add_option("--jobs", o.jobs, "parallel evaluation workers")
      ->check(CLI::PositiveNumber);
  add_output(c_family, true);

  CLI::App* c_check = app.add_subcommand(
      "check", "compare the engine and the grid census on a germ suite");
  c_check->add_option("germ", o.germ, "polynomial in x, y (default: built-in suite)");
  c_check->add_option("--max-grid", o.max_grid, "grid refinement cap")
      ->check(CLI::PositiveNumber);
  add_output(c_check, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    Rendered r;
    if (name == "resolve") r = do_resolve(o);
    else if (name == "zeta") r = do_zeta(o);
    else if (name == "milnor") r = do_milnor(o);
    else if (name == "fibre") r = do_fibre(o);
    else if (name == "acampo") r = do_acampo(o);
    else if (name == "naive-zeta") r = do_naive_zeta(o);
    else if (name == "family") r = do_family(o);
    else r = do_check(o);

    std::string text;
    if (o.format == "json") text = r.doc.dump(2) + "\n";
    else if (o.format == "csv") text = r.csv;
    else text = r.pretty;

    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream file(o.output);
      if (!file) {
        err << "error: cannot open '" << o.output << "' for writing\n";
        return 2;
      }
      file << text;
    }
    return r.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return err_exit_class(e.kind());
  }
}

}  // namespace motfib
