#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mirrorjac/cli.hpp"

using namespace mirrorjac::cli;
using nlohmann::json;

namespace {

const std::string kData = MIRRORJAC_TEST_DATA;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_config(const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = run(config, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

RunConfig make(std::string command) {
  RunConfig c;
  c.command = std::move(command);
  return c;
}

int parse_and_run(std::vector<std::string> args) {
  args.insert(args.begin(), "mirrorjac");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("reports are byte-identical across runs and thread counts") {
  RunConfig c = make("theorem1");
  c.M = 5;
  c.trials = 12;
  c.seed = 42;
  const Outcome a = run_config(c);
  const Outcome b = run_config(c);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  c.threads = 4;
  const Outcome threaded = run_config(c);
  // Only the recorded thread count differs.
  json ja = json::parse(a.out);
  json jt = json::parse(threaded.out);
  jt["config"]["threads"] = ja["config"]["threads"];
  CHECK(ja == jt);

  RunConfig t2 = make("theorem2");
  t2.trials = 2;
  t2.J = 3;
  CHECK(run_config(t2).out == run_config(t2).out);
}

TEST_CASE("report envelope") {
  RunConfig c = make("theorem1-exact");
  c.M = 3;
  c.trials = 4;
  c.tolerances["theorem1"] = 1e-6;
  const Outcome o = run_config(c);
  REQUIRE(o.code == kExitOk);
  const json j = json::parse(o.out);
  CHECK(j["tool"] == "mirrorjac");
  CHECK(j.contains("version"));
  CHECK(j["config"]["seed"] == 1);
  CHECK(j["config"]["tolerances"]["theorem1"] == 1e-6);
  CHECK(j["config"]["tolerances"]["eq55"] == 1e-5);
  CHECK(j["trials"].size() == 4);
  CHECK(j["violations"] == 0);
  CHECK(o.out.find("time") == std::string::npos);
}

TEST_CASE("exact sweep over 100 integer specs") {
  RunConfig c = make("theorem1-exact");
  c.M = 4;
  c.seed = 7;
  c.trials = 100;
  CHECK(run_config(c).code == kExitOk);
}

TEST_CASE("file inputs") {
  RunConfig spec = make("theorem1-exact");
  spec.input_path = kData + "/spec_m2.json";
  CHECK(run_config(spec).code == kExitOk);

  RunConfig bridge = make("bridge");
  bridge.input_path = kData + "/half.json";
  bridge.M = 20;
  const Outcome o = run_config(bridge);
  REQUIRE(o.code == kExitOk);
  const json j = json::parse(o.out);
  CHECK(std::abs(j["bridge"]["sum_S"].get<double>()) < 1e-8);
  CHECK(j["convergence"].size() == 3);

  RunConfig bound = make("theorem2");
  bound.input_path = kData + "/bound_state.json";
  const Outcome b = run_config(bound);
  CHECK(b.code == kExitOk);
  CHECK(json::parse(b.out)["trials"][0]["report"]["identity_expected"] == false);

  RunConfig scattering = make("scattering");
  scattering.input_path = kData + "/bound_state.json";
  const json s = json::parse(run_config(scattering).out);
  CHECK(s["winding_number"] == 1);
  CHECK(s["discrete_spectrum"]["eigenvalues"][0].get<double>() == Catch::Approx(-0.5));
}

TEST_CASE("usage errors exit with 2") {
  RunConfig bad_json = make("theorem1");
  bad_json.input_path = kData + "/malformed.json";
  const Outcome o = run_config(bad_json);
  CHECK(o.code == kExitUsage);
  CHECK_FALSE(o.err.empty());

  RunConfig unknown_tol = make("theorem1");
  unknown_tol.tolerances["nonsense"] = 1.0;
  CHECK(run_config(unknown_tol).code == kExitUsage);

  RunConfig negative_tol = make("theorem1");
  negative_tol.tolerances["eq55"] = -1.0;
  CHECK(run_config(negative_tol).code == kExitUsage);

  RunConfig no_bridge = make("bridge");
  no_bridge.input_path = kData + "/bound_state.json";
  CHECK(run_config(no_bridge).code == kExitUsage);

  RunConfig small_A = make("continuum");
  small_A.A = 0.01;
  CHECK(run_config(small_A).code == kExitUsage);

  RunConfig zero_M = make("appendix");
  zero_M.M = 0;
  CHECK(run_config(zero_M).code == kExitUsage);

  CHECK(run_config(make("nothing")).code == kExitUsage);

  CHECK(parse_and_run({}) == kExitUsage);
  CHECK(parse_and_run({"theorem1", "--format", "xml"}) == kExitUsage);
  CHECK(parse_and_run({"theorem1", "--tol", "eq55"}) == kExitUsage);
  CHECK(parse_and_run({"theorem1", "--spec", kData + "/missing.json"}) == kExitUsage);
}

TEST_CASE("violations exit with 1") {
  RunConfig c = make("theorem1");
  c.M = 3;
  c.trials = 3;
  c.tolerances["theorem1"] = 1e-300;
  const Outcome o = run_config(c);
  CHECK(o.code == kExitViolation);
  CHECK(o.err.find("violation") != std::string::npos);
}

TEST_CASE("csv output") {
  RunConfig appendix = make("appendix");
  appendix.M = 3;
  appendix.format = Format::csv;
  const Outcome a = run_config(appendix);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out.rfind("M,identity13_log_residual", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 4);

  RunConfig continuum = make("continuum");
  continuum.N = 25;
  continuum.format = Format::csv;
  const Outcome c = run_config(continuum);
  REQUIRE(c.code == kExitOk);
  CHECK(c.out.rfind("A,N,pairing,lhs_log,rhs_log,gap\n", 0) == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 5);
}

TEST_CASE("continuum report names the converging pairing") {
  RunConfig c = make("continuum");
  c.A = 3.0;
  const Outcome o = run_config(c);
  REQUIRE(o.code == kExitOk);
  const json j = json::parse(o.out);
  CHECK(j["convergence"].size() == 4);
  CHECK_FALSE(j["converging_pairings"].empty());
}
