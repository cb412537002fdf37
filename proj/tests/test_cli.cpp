#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

// End-to-end runs of the installed binary; COVERCRIMP_BIN is injected by the
// build.

namespace {

using nlohmann::json;

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(COVERCRIMP_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json parse_out(const RunResult& r) {
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("disc: triple point with distinct tangents") {
  RunResult r = run_cli(
      "disc --input '{\"degree\": 3, \"base\": {\"field\": {\"Fq\": 7}, \"precision\": 12}, "
      "\"presentation\": {\"polynomial\": [[\"0\"], [\"0\", \"0\", \"2\"], [\"0\", \"-3\"], "
      "[\"1\"]]}}'");
  json out = parse_out(r);
  CHECK(out["branch_valuation"] == 6);
  CHECK(out["etale"] == false);
  CHECK(out["discriminant"]["coefficients"][6] != "0");
}

TEST_CASE("disc: flags override the input header") {
  // Same cover, field forced to F_11 and precision raised on the command line.
  RunResult r = run_cli(
      "disc --field 11 --precision 10 --input "
      "'{\"degree\": 2, \"presentation\": {\"branches\": [[\"0\"], [\"0\", \"1\"]]}}'");
  json out = parse_out(r);
  CHECK(out["branch_valuation"] == 2);
  CHECK(out["discriminant"]["precision"] == 10);
  CHECK(out["discriminant"]["field"] == json{{"Fq", 11}});
}

TEST_CASE("disc: input from a file and table format") {
  const char* path = "cc_cli_disc_input.json";
  {
    std::ofstream f(path);
    f << R"({"degree": 2, "presentation": {"branches": [["0"], ["0", "1"]]}})";
  }
  RunResult r = run_cli(std::string("disc --format table --input ") + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("branch_valuation: 2") != std::string::npos);
  std::remove(path);
}

TEST_CASE("rh solves in both directions") {
  CHECK(parse_out(run_cli("rh --input '{\"d\": 2, \"h\": 0, \"b\": 6}'"))["g"] == 2);
  CHECK(parse_out(run_cli("rh --input '{\"d\": 2, \"h\": 0, \"g\": 2}'"))["b"] == 6);
  CHECK(run_cli("rh --input '{\"d\": 2, \"h\": 0, \"b\": 6, \"g\": 2}'").code == 2);
  CHECK(run_cli("rh --input '{\"d\": 2, \"h\": 0, \"b\": 5}'").code == 5);  // odd
}

TEST_CASE("hurwitz counts and classes") {
  json out = parse_out(run_cli("hurwitz --input '{\"d\": 3, \"h\": 0, \"b\": 4}'"));
  CHECK(out["raw"] == 24);
  CHECK(out["raw_all"] == 27);
  CHECK(out["weighted"] == "4");

  json half = parse_out(run_cli("hurwitz --input '{\"d\": 2, \"h\": 0, \"b\": 6}'"));
  CHECK(half["weighted"] == "1/2");

  json classes = parse_out(run_cli("hurwitz --input '{\"d\": 3, \"punctures\": [[3], [3]]}'"));
  CHECK(classes["count"] == 1);
  CHECK(classes["classes"][0]["connected"] == true);
  CHECK(classes["classes"][0]["local_orders"] == json::array({3, 3}));
}

TEST_CASE("stable judges the (2,2,1,1) configuration") {
  std::string curve =
      "'{\"curve\": {\"components\": [{\"genus\": 0}], \"markings\": "
      "[{\"component\": 0, \"mult\": 2}, {\"component\": 0, \"mult\": 2}, "
      "{\"component\": 0, \"mult\": 1}, {\"component\": 0, \"mult\": 1}]}}'";
  json mid = parse_out(run_cli("stable --epsilon 1/2 --input " + curve));
  CHECK(mid["stable"] == true);
  CHECK(mid["thresholds"] == json::array({"1/3", "1/2", "1"}));
  json low = parse_out(run_cli("stable --epsilon 1/3 --input " + curve));
  CHECK(low["stable"] == false);
  CHECK(low["reason"].get<std::string>().find("degree") != std::string::npos);
  // Epsilon defaults to 1 when neither flag nor key supplies it.
  json top = parse_out(run_cli("stable --input " + curve));
  CHECK(top["epsilon"] == "1");
  CHECK(top["stable"] == false);
}

TEST_CASE("crimps enumerates the node") {
  json out = parse_out(run_cli(
      "crimps --input '{\"normalization\": {\"split\": 2}, \"b\": 2, \"field\": {\"Fq\": 3}}'"));
  CHECK(out["a"] == 0);
  CHECK(out["b"] == 2);
  CHECK(out["delta"] == 1);
  CHECK(out["count"] == 1);
  CHECK(out["crimps"][0]["dimension"] == 3);
  CHECK(out["crimps"][0]["branch_valuation"] == 2);
  CHECK(out["orbits"] == json::array({json::array({0})}));
}

TEST_CASE("iso compares embedded triple points") {
  std::string shared =
      "\"b\": 6, \"field\": {\"Fq\": 7}, \"precision\": 13, \"covers\": [";
  std::string c2 =
      "{\"degree\": 3, \"presentation\": {\"branches\": [[\"0\"], [\"0\", \"1\"], [\"0\", \"2\"]]}}";
  std::string c3 =
      "{\"degree\": 3, \"presentation\": {\"branches\": [[\"0\"], [\"0\", \"1\"], [\"0\", \"3\"]]}}";
  std::string c4 =
      "{\"degree\": 3, \"presentation\": {\"branches\": [[\"0\"], [\"0\", \"1\"], [\"0\", \"4\"]]}}";

  json same = parse_out(run_cli("iso --input '{" + shared + c2 + ", " + c4 + "]}'"));
  CHECK(same["isomorphic"] == true);
  CHECK(same["cross_ratio_orbits"][0] == same["cross_ratio_orbits"][1]);

  json diff = parse_out(run_cli("iso --input '{" + shared + c2 + ", " + c3 + "]}'"));
  CHECK(diff["isomorphic"] == false);
  CHECK(diff["cross_ratio_orbits"][0] != diff["cross_ratio_orbits"][1]);
  CHECK(diff["cross_ratio_orbits"][0] == json::array({"2", "4", "6"}));
}

TEST_CASE("validate checks the algebra laws") {
  std::string table =
      "\"table\": {\"unit\": [[\"1\"], [\"1\"]], \"c\": "
      "[[[[\"1\"], [\"0\"]], [[\"0\"], [\"0\"]]], [[[\"0\"], [\"0\"]], [[\"0\"], [\"1\"]]]]}";
  json ok = parse_out(run_cli("validate --field 5 --input '{\"degree\": 2, \"presentation\": {" +
                              table + "}}'"));
  CHECK(ok["valid"] == true);
  CHECK(ok["violations"] == json::array());

  // Break commutativity: c(0,1,*) = e_1 but c(1,0,*) = 0.
  std::string bad =
      "\"table\": {\"unit\": [[\"1\"], [\"1\"]], \"c\": "
      "[[[[\"1\"], [\"0\"]], [[\"1\"], [\"0\"]]], [[[\"0\"], [\"0\"]], [[\"0\"], [\"1\"]]]]}";
  json report = parse_out(run_cli("validate --field 5 --input '{\"degree\": 2, \"presentation\": {" +
                                  bad + "}}'"));
  CHECK(report["valid"] == false);
  CHECK(!report["violations"].empty());
}

TEST_CASE("exit codes by error class") {
  CHECK(run_cli("disc --input '{\"not\": \"a cover\"}'").code == 2);
  CHECK(run_cli("disc --input 'garbage'").code == 2);  // no such file either
  // Discriminant t^4 is invisible at precision 3.
  CHECK(run_cli("disc --precision 3 --input "
                "'{\"degree\": 2, \"presentation\": {\"branches\": [[\"0\"], [\"0\", \"0\", "
                "\"1\"]]}}'")
            .code == 3);
  CHECK(run_cli("crimps --budget 1 --input "
                "'{\"normalization\": {\"split\": 2}, \"b\": 2, \"field\": {\"Fq\": 3}}'")
            .code == 4);
  CHECK(run_cli("crimps --input "
                "'{\"normalization\": {\"split\": 2}, \"b\": 2, \"field\": \"rational\"}'")
            .code == 5);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("disc").code == 2);  // --input is required
}

TEST_CASE("repeat runs are byte-identical") {
  std::string cmd =
      "crimps --input '{\"normalization\": {\"split\": 3}, \"b\": 2, \"field\": {\"Fq\": 5}}'";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["count"] == 3);

  std::string h = "hurwitz --input '{\"d\": 4, \"h\": 0, \"b\": 4}'";
  CHECK(run_cli(h).out == run_cli(h).out);
}
