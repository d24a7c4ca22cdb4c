#include "motfib/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "motfib/arcs.hpp"
#include "motfib/jsonio.hpp"
#include "motfib/resolve.hpp"
#include "motfib/zeta.hpp"

using namespace motfib;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

BetaPoly beta_from_json(const Json& obj) {
  BetaPoly b;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    long k = std::stol(it.key().substr(2));
    b.add(static_cast<int>(k), *parse_rat(it.value().get<std::string>()));
  }
  return b;
}

const BetaPoly kTwoArcs = BetaPoly(Rat(1)) - BetaPoly::u();  // 1 - u

}  // namespace

TEST_CASE("milnor subcommand reports the transverse-lines germ") {
  CliResult r = run({"milnor", "x*y"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["mu"] == 1);
  CHECK(parse_betapoly(doc["S"]["+1"].get<std::string>()) == kTwoArcs);
  CHECK(parse_betapoly(doc["S"]["-1"].get<std::string>()) == kTwoArcs);
  CHECK(doc["chi_tilde"]["+1"] == 2);
  CHECK(doc["chi_tilde"]["pos"] == -2);
}

TEST_CASE("milnor subcommand reports an infinite local algebra") {
  CliResult r = run({"milnor", "x^2*y"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["mu"] == "infinity");
}

TEST_CASE("resolve subcommand lists the cusp multiplicities") {
  CliResult r = run({"resolve", "y^2 - x^3"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  std::vector<std::pair<long, long>> got;
  for (const Json& c : doc["components"])
    if (c["exceptional"].get<bool>())
      got.emplace_back(c["N"].get<long>(), c["nu"].get<long>());
  std::sort(got.begin(), got.end());
  CHECK(got == (std::vector<std::pair<long, long>>{{2, 2}, {3, 3}, {6, 5}}));
}

TEST_CASE("zeta subcommand is deterministic and round-trips its series") {
  std::vector<std::string> args = {"zeta", "x*y", "--symbol", "pos",
                                   "--max-order", "4"};
  CliResult r1 = run(args);
  CliResult r2 = run(args);
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  Json doc = Json::parse(r1.out);
  CHECK(doc["symbol"] == "pos");
  CHECK_FALSE(doc["rational_form"]["terms"].empty());
  REQUIRE(doc["series"].size() == 4);
  ZetaFunction z = motivic_zeta(
      embedded_resolution(parse_polynomial("x*y", {"x", "y"})), Symbol::Pos);
  std::vector<BetaPoly> series = zeta_series(z, 4);
  for (size_t k = 0; k < series.size(); ++k)
    CHECK(beta_from_json(doc["series"][k]) == series[k]);
}

TEST_CASE("symbol values with a leading dash use the equals form") {
  CliResult r = run({"zeta", "x*y", "--symbol=-1", "--max-order", "2"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["symbol"] == "-1");
}

TEST_CASE("check subcommand passes on a single quadric") {
  CliResult r = run({"check", "x^2 + y^2"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["all_pass"] == true);
  REQUIRE(doc["results"].size() == 1);
  CHECK(doc["results"][0]["entries"].size() == 4);
}

TEST_CASE("family subcommand emits csv rows") {
  CliResult r = run({"family", "--family", "x^2 - t*y^2", "--range", "0", "1",
                     "--samples", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,beta,status\n", 0) == 0);
  CHECK(r.out.find("0,2,ok\n") != std::string::npos);
  CHECK(r.out.find("1,-u + 1,ok\n") != std::string::npos);
}

TEST_CASE("family subcommand accepts negative range bounds") {
  CliResult r = run({"family", "--family", "x^2 - t*y^2", "--range", "-1", "1",
                     "--samples", "3"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  REQUIRE(doc["breakpoints"].size() == 1);
  CHECK(doc["breakpoints"][0] == "0");
  CHECK(doc["samples"][0]["t"] == "-1");
}

TEST_CASE("fibre subcommand sees the circle fibre") {
  CliResult r = run({"fibre", "x^2 + y^2", "--eta", "1/100"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["components_circles"] == 1);
  CHECK(doc["components_arcs"] == 0);
  CHECK(doc["chi_c"] == 0);
  CHECK(doc["stabilized"] == true);
}

TEST_CASE("naive-zeta subcommand matches the library coefficients") {
  CliResult r = run({"naive-zeta", "--monomial", "1", "1", "--max-order", "3",
                     "--symbol", "+1"});
  REQUIRE(r.code == 0);
  Json doc = Json::parse(r.out);
  REQUIRE(doc["coefficients"].size() == 3);
  for (long k = 1; k <= 3; ++k)
    CHECK(beta_from_json(doc["coefficients"][k - 1]) ==
          naive_coefficient(1, 1, k, Symbol::Plus1));
}

TEST_CASE("acampo subcommand equals the library trace sequence") {
  ResolutionData res =
      embedded_resolution(parse_polynomial("y^2 - x^3", {"x", "y"}));

  CliResult single = run({"acampo", "y^2 - x^3", "--iterates", "6"});
  REQUIRE(single.code == 0);
  Json doc = Json::parse(single.out);
  REQUIRE(doc["lefschetz"].size() == 7);
  CHECK(doc["lefschetz"][0] == -1);  // one minus the Milnor number
  for (long k = 0; k <= 6; ++k)
    CHECK(doc["lefschetz"][k] ==
          lefschetz_number(res, k, LefschetzVariant::Single));

  CliResult subset = run({"acampo", "y^2 - x^3", "--iterates", "6",
                          "--variant", "subset"});
  REQUIRE(subset.code == 0);
  Json doc2 = Json::parse(subset.out);
  for (long k = 0; k <= 6; ++k)
    CHECK(doc2["lefschetz"][k] ==
          lefschetz_number(res, k, LefschetzVariant::Subset));
}

TEST_CASE("environment grid cap applies when no flag is given") {
  setenv("MM_MAX_GRID", "64", 1);
  CliResult capped = run({"fibre", "x^2 + y^2", "--eta", "1/100"});
  CliResult flagged =
      run({"fibre", "x^2 + y^2", "--eta", "1/100", "--max-grid", "512"});
  unsetenv("MM_MAX_GRID");
  REQUIRE(capped.code == 0);
  Json doc = Json::parse(capped.out);
  CHECK(doc["grid_resolution"] == 64);
  CHECK(doc["stabilized"] == false);
  REQUIRE(flagged.code == 0);
  Json doc2 = Json::parse(flagged.out);
  CHECK(doc2["stabilized"] == true);
}

TEST_CASE("output lands in the requested file") {
  const char* path = "cli_out_test.tmp";
  CliResult r = run({"milnor", "x*y", "--output", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  Json doc = Json::parse(buf.str());
  CHECK(doc["mu"] == 1);
  std::remove(path);
}

TEST_CASE("cli error paths and exit classes") {
  CliResult not_a_germ = run({"milnor", "x + 1"});
  CHECK(not_a_germ.code == 2);
  CHECK(not_a_germ.err.find("NotAGerm") != std::string::npos);
  CHECK(not_a_germ.err.rfind("error:", 0) == 0);

  CliResult syntax = run({"milnor", "x +* y"});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("SyntaxError") != std::string::npos);

  CliResult irrational = run({"resolve", "(y^2 - 2*x^2)^2 + x^5"});
  CHECK(irrational.code == 2);
  CHECK(irrational.err.find("IrrationalCenter") != std::string::npos);

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"zeta"}).code == 2);
  CHECK(run({"zeta", "x*y", "--symbol", "weird"}).code == 2);
  CHECK(run({"family", "--family", "x^2 - t*y^2", "--range", "0", "1",
             "--format", "csv", "--samples", "1"}).code == 2);

  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("motfib") != std::string::npos);
}
