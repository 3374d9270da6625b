#include "doctest.h"

#include "perop/cli.hpp"
#include "perop/json_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace perop;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec_path(const char* name) {
  return std::string(PEROP_SOURCE_DIR) + "/specs/" + name;
}

}  // namespace

TEST_CASE("classify reports the known structure of the corpus") {
  const CliResult harmonic =
      run_cli({"classify", spec_path("harmonic.json"), "--format", "json"});
  REQUIRE(harmonic.code == 0);
  const Json h = Json::parse(harmonic.out);
  CHECK(h["operator_kind"] == "diagonal");
  CHECK(h["classification"]["kind"] == "proper_dense");
  CHECK(h["classification"]["dense"] == true);
  CHECK(h["classification"]["closed"] == false);

  const Json z = Json::parse(
      run_cli({"classify", spec_path("zigzag.json"), "--format", "json"}).out);
  CHECK(z["operator_kind"] == "permutation");
  CHECK(z["classification"]["kind"] == "zero_only");
  CHECK(z["classification"]["closure_codimension"] == "inf");

  const Json c = Json::parse(
      run_cli({"classify", spec_path("dyadic_codim1.json"), "--format", "json"})
          .out);
  CHECK(c["classification"]["kind"] == "proper_not_closed");
  CHECK(c["classification"]["closure_codimension"] == 1);

  const Json w = Json::parse(
      run_cli({"classify", spec_path("residue_mod_4.json"), "--format", "json"})
          .out);
  CHECK(w["classification"]["kind"] == "whole_space");
  CHECK(w["classification"]["exponent"] == 4);
}

TEST_CASE("period answers match the library over the corpus") {
  const Json h = Json::parse(
      run_cli({"period", spec_path("harmonic.json"), "--format", "json"}).out);
  CHECK(h["vectors"][0]["periodic"] == true);
  CHECK(h["vectors"][0]["period"] == 6);

  const Json z = Json::parse(
      run_cli({"period", spec_path("zigzag.json"), "--format", "json"}).out);
  CHECK(z["vectors"][0]["periodic"] == false);

  const Json d = Json::parse(
      run_cli({"period", spec_path("doubling_blocks.json"), "--format", "json"})
          .out);
  CHECK(d["vectors"][0]["kind"] == "grouped");
  CHECK(d["vectors"][0]["naive_union_member"] == false);
  CHECK(d["vectors"][0]["least_m"] == 2);
  CHECK(d["vectors"][1]["period"] == 2);
}

TEST_CASE("oracle passes on the corpus and reports its checks") {
  const CliResult r =
      run_cli({"oracle", spec_path("mixed_closed.json"), "--format", "json"});
  REQUIRE(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["verdict"] == "pass");
  bool saw_kernel = false, saw_basis = false;
  for (const Json& c : doc["checks"]) {
    CHECK((c["status"] == "pass" || c["status"] == "info"));
    if (c["check"] == "kernel_vs_prediction") saw_kernel = true;
    if (c["check"] == "periodic_basis") saw_basis = true;
  }
  CHECK(saw_kernel);
  CHECK(saw_basis);
}

TEST_CASE("oracle flags honor file defaults and command overrides") {
  const Json file_default = Json::parse(
      run_cli({"oracle", spec_path("roots_enum.json"), "--format", "json"}).out);
  CHECK(file_default["params"]["d"] == 512);  // from the spec file
  const Json overridden = Json::parse(
      run_cli({"oracle", spec_path("roots_enum.json"), "--d", "64", "--format",
               "json"})
          .out);
  CHECK(overridden["params"]["d"] == 64);
  CHECK(overridden["verdict"] == "pass");
}

TEST_CASE("approximate tabulates the ladder and refuses permutations") {
  const CliResult diag = run_cli({"approximate", spec_path("irrational_dense.json"),
                                  "--level", "5", "--probe", "32", "--format",
                                  "json"});
  REQUIRE(diag.code == 0);
  const Json doc = Json::parse(diag.out);
  REQUIRE(doc["levels"].size() == 5);
  for (const Json& row : doc["levels"]) {
    CHECK(row["within_bound"] == true);
    CHECK(row["exponent_divides_bound"] == true);
  }

  const CliResult perm = run_cli({"approximate", spec_path("zigzag.json")});
  CHECK(perm.code == 4);
  CHECK(perm.err.find("sqrt(2)") != std::string::npos);
}

TEST_CASE("exit codes separate the failure families") {
  CHECK(run_cli({"classify", "/nonexistent/nope.json"}).code == 2);
  CHECK(run_cli({"classify"}).code == 2);          // missing argument
  CHECK(run_cli({"frobnicate"}).code == 2);        // unknown subcommand
  CHECK(run_cli({"examples", "nope"}).code == 2);  // unknown example
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("grouped vectors on a diagonal operator are a structural mismatch") {
  const std::string path = "/tmp/perop_test_grouped_diag.json";
  {
    Json j = Json::object();
    j["operator"] = {{"kind", "diagonal"},
                     {"spec", {{"base", {{"family", "harmonic"}}}}}};
    j["vectors"] = Json::array({{{"kind", "grouped"},
                                 {"family", "dyadic_even_blocks"}}});
    std::ofstream(path) << j.dump();
  }
  const CliResult r = run_cli({"period", path});
  CHECK(r.code == 3);
}

TEST_CASE("output is deterministic across runs") {
  for (const char* sub : {"classify", "period", "oracle"}) {
    const CliResult a =
        run_cli({sub, spec_path("finite_cycles.json"), "--format", "json"});
    const CliResult b =
        run_cli({sub, spec_path("finite_cycles.json"), "--format", "json"});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("examples registry runs and lists") {
  const CliResult list = run_cli({"examples", "--list", "--format", "json"});
  REQUIRE(list.code == 0);
  const Json names = Json::parse(list.out)["examples"];
  CHECK(names.size() == 13);

  const CliResult prop = run_cli({"examples", "proper-inclusion", "--format",
                                  "json"});
  REQUIRE(prop.code == 0);
  const Json doc = Json::parse(prop.out);
  CHECK(doc["fixed_by_square"] == true);
  CHECK(doc["fixed_by_first_power"] == false);
  CHECK(doc["naive_union_member"] == false);
  CHECK(doc["residual_m2"].get<double>() < 1e-12);
  CHECK(doc["residual_m1"].get<double>() > 0.1);

  const Json conv =
      Json::parse(run_cli({"examples", "convolution", "--format", "json"}).out);
  CHECK(conv["periodic_dimension"] == 1);
}

TEST_CASE("text format renders the same facts human-readably") {
  const CliResult r = run_cli({"classify", spec_path("harmonic.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("proper_dense") != std::string::npos);
  CHECK(r.out.find("kind:") != std::string::npos);
}
