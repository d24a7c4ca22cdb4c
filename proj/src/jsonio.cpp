#include "motfib/jsonio.hpp"

#include <sstream>

namespace motfib {

Json beta_json(const BetaPoly& b) {
  Json obj = Json::object();
  for (const auto& [k, c] : b.coeffs())
    obj["u^" + std::to_string(k)] = rat_str(c);
  return obj;
}

Json resolution_json(const ResolutionData& res) {
  Json doc;
  doc["germ"] = res.germ.str();
  doc["blow_count"] = res.blow_count;
  Json comps = Json::array();
  for (const DivisorComponent& c : res.components)
    comps.push_back({{"id", c.id},
                     {"N", c.N},
                     {"nu", c.nu},
                     {"exceptional", c.exceptional}});
  doc["components"] = comps;
  Json graph = Json::object();
  for (const auto& [id, nbrs] : res.dual_graph) graph[id] = nbrs;
  doc["dual_graph"] = graph;
  Json strata = Json::array();
  for (const Stratum& s : res.strata)
    strata.push_back({{"I", s.I},
                      {"dim", s.dimension},
                      {"N_I", s.N_I},
                      {"punctures", s.punctures}});
  doc["strata"] = strata;
  Json charts = Json::array();
  for (const Chart& c : res.charts)
    charts.push_back({{"id", c.id},
                      {"composed_map", c.composed_map},
                      {"map_x", c.map_x.str()},
                      {"map_y", c.map_y.str()}});
  doc["charts"] = charts;
  return doc;
}

Json zeta_json(const ZetaFunction& z) {
  Json doc;
  doc["symbol"] = symbol_name(z.symbol);
  Json terms = Json::array();
  for (const ZetaTerm& t : z.terms) {
    Json factors = Json::array();
    for (const ZetaFactor& f : t.factors)
      factors.push_back(Json::array({f.N, f.nu}));
    terms.push_back({{"coefficient", beta_json(t.coefficient)},
                     {"factors", factors}});
  }
  doc["terms"] = terms;
  return doc;
}

Json fibre_json(const FibreReport& r) {
  return Json{{"symbol", symbol_name(r.symbol)},
              {"delta", rat_str(r.delta)},
              {"eta", rat_str(r.eta)},
              {"components_arcs", r.components_arcs},
              {"components_circles", r.components_circles},
              {"regions", r.regions},
              {"chi_c", r.chi_c},
              {"grid_resolution", r.grid_resolution},
              {"stabilized", r.stabilized}};
}

Json identity_json(const FibreIdentityReport& r) {
  Json entries = Json::array();
  for (const FibreIdentityEntry& e : r.entries)
    entries.push_back({{"symbol", symbol_name(e.symbol)},
                       {"engine_chi", e.engine_chi},
                       {"oracle_chi", e.oracle_chi},
                       {"stabilized", e.stabilized},
                       {"pass", e.pass}});
  return Json{{"entries", entries}, {"all_pass", r.all_pass}};
}

Json scan_json(const ScanReport& r) {
  Json doc;
  doc["symbol"] = symbol_name(r.symbol);
  Json samples = Json::array();
  for (const ScanSample& s : r.samples) {
    Json row;
    row["t"] = rat_str(s.t);
    row["beta"] = s.ok() ? beta_json(*s.beta) : Json();
    row["status"] = s.ok() ? "ok" : s.failure;
    samples.push_back(row);
  }
  doc["samples"] = samples;
  Json intervals = Json::array();
  for (const ScanInterval& iv : r.intervals) {
    Json row;
    row["left"] = rat_str(iv.left);
    row["right"] = rat_str(iv.right);
    row["beta"] = iv.beta ? beta_json(*iv.beta) : Json();
    if (!iv.failure.empty()) row["failure"] = iv.failure;
    intervals.push_back(row);
  }
  doc["intervals"] = intervals;
  Json breaks = Json::array();
  for (const Rat& b : r.breakpoints) breaks.push_back(rat_str(b));
  doc["breakpoints"] = breaks;
  return doc;
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "t,beta,status\n";
  for (const ScanSample& s : r.samples)
    os << rat_str(s.t) << "," << (s.ok() ? s.beta->str() : "") << ","
       << (s.ok() ? "ok" : s.failure) << "\n";
  return os.str();
}

}  // namespace motfib
