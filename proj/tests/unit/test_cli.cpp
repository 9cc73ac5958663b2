#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rfm/cli.hpp"
#include "rfm/report.hpp"

using namespace rfm;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run rfm_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("rfm_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

const char* kPresets[] = {"special_generic", "milnor_sphere", "so5_mod_so2", "cp3_over_s4",
                          "bott3", "example2", "example5", "thm5"};

}  // namespace

TEST_CASE("prop1 report for the milnor family") {
  Run r = rfm_run({"prop1", "preset:milnor_sphere", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["command"] == "prop1");
  CHECK(j["result"]["H_n"]["degree"] == 4);
  CHECK(j["result"]["H_n"]["rank"] == 1);
  CHECK(j["diagnostics"].empty());
}

TEST_CASE("euler of the CP^3 preset") {
  Run r = rfm_run({"euler", "preset:cp3_over_s4"});
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
}

TEST_CASE("parse errors exit 1 with a span") {
  const std::string bad = temp_file("nonsense.rfm", "roundfold { m = 5; n = ; }");
  Run r = rfm_run({"classify", bad, "--json"});
  CHECK(r.code == 1);
  Json j = Json::parse(r.out);
  REQUIRE(j["diagnostics"].size() == 1);
  CHECK(j["diagnostics"][0]["span"]["line"] == 1);
  CHECK(j["diagnostics"][0]["span"]["col"] == 24);
  CHECK(r.err.find("nonsense.rfm:1:24") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(rfm_run({}).code == 2);
  CHECK(rfm_run({"frobnicate"}).code == 2);
  CHECK(rfm_run({"classify", "preset:thm5", "--dot", "x.dot"}).code == 2);
  CHECK(rfm_run({"euler", "/nonexistent/file.rfm"}).code == 2);
  CHECK(rfm_run({"--help"}).code == 0);
}

TEST_CASE("every subcommand handles every preset") {
  for (const char* p : kPresets) {
    const std::string ref = std::string("preset:") + p;
    CAPTURE(p);
    for (const char* cmd : {"validate", "reeb", "homology", "euler", "prop1", "classify"}) {
      CAPTURE(cmd);
      Run r = rfm_run({cmd, ref, "--json"});
      CHECK(r.code == 0);
      CHECK(r.err.empty());
      CHECK(Json::parse(r.out)["diagnostics"].empty());
    }
    CHECK(rfm_run({"preset", p}).code == 0);
  }
}

TEST_CASE("json output is deterministic") {
  for (const char* p : kPresets) {
    const std::string ref = std::string("preset:") + p;
    CHECK(rfm_run({"classify", ref, "--json"}).out == rfm_run({"classify", ref, "--json"}).out);
    CHECK(rfm_run({"reeb", ref, "--json"}).out == rfm_run({"reeb", ref, "--json"}).out);
  }
}

TEST_CASE("synthesize, combine, decompose and spin") {
  Run s = rfm_run({"synthesize", "csum(bundle(S(3) over 2), bundle(S(3) over 2, twist \"t\"))"});
  REQUIRE(s.code == 0);
  const std::string f = temp_file("synth.rfm", s.out);
  Run c = rfm_run({"classify", f});
  CHECK(c.code == 0);
  CHECK(c.out.find("csum(") != std::string::npos);

  Run n = rfm_run({"synthesize", "named(\"K\", dim=6)", "--n", "2"});
  CHECK(n.code == 1);
  CHECK(n.err.find("no construction known") != std::string::npos);

  const std::string a = temp_file("a.rfm", rfm_run({"preset", "milnor_sphere(a)"}).out);
  Run sp = rfm_run({"spin", "--n", "2", "--fiber", "S(3)", "--twist", "b"});
  REQUIRE(sp.code == 0);
  const std::string b = temp_file("b.rfm", sp.out);
  Run comb = rfm_run({"combine", b, "c2", b, "--json"});
  CHECK(comb.code == 0);
  CHECK(Json::parse(comb.out)["result"]["l"] == 3);
  CHECK(rfm_run({"combine", a, "c2", a}).code == 1);

  Run dec = rfm_run({"decompose", "preset:thm5(3)", "2", "c2"});
  CHECK(dec.code == 0);
  CHECK(dec.out.find("# f2") != std::string::npos);

  const std::string t = temp_file("t.rfm", "trace { boundary = [b : S(4)]; actions = [ death(b) ]; }");
  Run spin = rfm_run({"spin", t, "--n", "3"});
  CHECK(spin.code == 0);
  CHECK(spin.out.find("birth(") != std::string::npos);
}

TEST_CASE("reeb dot output") {
  Run r = rfm_run({"reeb", "preset:thm5", "--dot", "-"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("graph L {", 0) == 0);
  CHECK(r.out.find("doublecircle") != std::string::npos);
  CHECK(r.out.find("box") != std::string::npos);
}

TEST_CASE("preset path extends the catalog") {
  const auto dir = std::filesystem::temp_directory_path() / "rfm_presets";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "mine.rfm") << "roundfold { m = 5; n = 2; trivial = smooth; events = [ birth(c1 : S(3)) ]; }\n";
  setenv("RFM_PRESET_PATH", dir.c_str(), 1);
  Run r = rfm_run({"classify", "preset:mine"});
  CHECK(r.code == 0);
  CHECK(r.out.find("S(5)") != std::string::npos);
  CHECK(rfm_run({"list-presets"}).out.find("mine") != std::string::npos);
  CHECK(rfm_run({"preset", "mine"}).code == 0);
  unsetenv("RFM_PRESET_PATH");
  CHECK(rfm_run({"preset", "mine"}).code == 1);
}

TEST_CASE("bigints beyond 64 bits are strings") {
  BigInt big = BigInt(1) << 70;
  CHECK(to_json(big).is_string());
  CHECK(to_json(BigInt(-5)) == -5);
}
