#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cyclefrac/cli.hpp"
#include "cyclefrac/polyring.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclefrac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cyclefrac::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string line_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " ", 0) == 0 || line.rfind(key + "\t", 0) == 0) {
      const auto pos = line.find_first_not_of(" \t", key.size());
      return line.substr(pos);
    }
  }
  return "<missing>";
}

}  // namespace

TEST_CASE("stats") {
  const auto r = run({"stats", "9,3,7,4,6,11,2,8,10,1,5"});
  CHECK(r.code == 0);
  CHECK(line_value(r.out, "cyc") == "5");
  CHECK(line_value(r.out, "ucross") == "2");
  CHECK(line_value(r.out, "lcross") == "2");
  CHECK(line_value(r.out, "lemma_1_1") == "true");
  CHECK(line_value(r.out, "inv_formula") == "true");

  const auto one = run({"stats", "1", "--tsv"});
  CHECK(one.code == 0);
  CHECK(line_value(one.out, "cyc") == "1");
  CHECK(line_value(one.out, "fix") == "1");
  CHECK(line_value(one.out, "ucross") == "0");
  CHECK(line_value(one.out, "inv") == "0");

  const auto j = nlohmann::json::parse(run({"stats", "2,1", "--json"}).out);
  CHECK(j["stats"]["cyc"] == 1);
  CHECK(j["indices"].size() == 2);
  CHECK(j["indices"][0]["cycle"] == "cval");

  const auto bad = run({"stats", "2,2,1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("not a permutation: duplicate value 2") != std::string::npos);
  const auto token = run({"stats", "1,x"});
  CHECK(token.code == 2);
  CHECK(token.err.find("'x'") != std::string::npos);
}

TEST_CASE("series and poly") {
  auto r = run({"series", "--family", "perm", "--scheme", "simple-perm", "--lambda", "-1", "--set", "all=1",
                "--order", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "1; -1; 0; 0; 0\n");
  r = run({"series", "--family", "cyclealt", "--scheme", "simple-cyclealt", "--lambda", "1", "--set", "all=1",
           "--order", "3"});
  CHECK(r.out == "1; 1; 5; 61\n");
  r = run({"series", "--family", "dperm", "--scheme", "xy-dperm", "--lambda", "-1", "--order", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1; x^2 - x*y; ", 0) == 0);
  r = run({"series", "--family", "dperm", "--scheme", "xy-dperm", "--lambda", "-1", "--order", "3", "--set",
           "x=1", "--set", "y=1"});
  CHECK(r.out == "1; 0; 0; 0\n");
  r = run({"series", "--family", "perm", "--scheme", "master-perm", "--order", "1", "--json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["coefficients"].size() == 2);
  CHECK(cyclefrac::polynomial_from_json(j["coefficients"][1]) == cyclefrac::Polynomial::parse("lambda*e[0]"));

  r = run({"poly", "--family", "perm", "--scheme", "master-perm", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "e[0]*lambda\n");
  r = run({"poly", "--family", "dperm", "--scheme", "xy-dperm", "--n", "2", "--lambda", "-1"});
  CHECK(r.out == cyclefrac::Polynomial::parse("x^2 - x*y").to_string() + "\n");

  r = run({"enumerate", "--family", "cyclealt", "--n", "6", "--count"});
  CHECK(r.out == "61\n");
  r = run({"enumerate", "--family", "dperm", "--n", "2"});
  CHECK(r.out == "1,2\n2,1\n");
}

TEST_CASE("errors and caps") {
  auto r = run({"series", "--family", "perm", "--scheme", "master-perm", "--order", "10"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--max-n") != std::string::npos);
  r = run({"--max-n", "10", "enumerate", "--family", "perm", "--n", "10", "--count"});
  CHECK(r.code == 0);
  CHECK(r.out == "3628800\n");
  r = run({"series", "--family", "perm", "--scheme", "no-such", "--order", "2"});
  CHECK(r.code == 2);
  r = run({"series", "--family", "perm", "--scheme", "simple-perm", "--order", "2", "--set", "lambda=1"});
  CHECK(r.code == 2);
  r = run({"frobnicate"});
  CHECK(r.code == 2);
  r = run({"enumerate", "--family", "dperm", "--n", "3"});
  CHECK(r.code == 2);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--id", "LEMMA-1-1", "--order", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pass") != std::string::npos);
  r = run({"verify", "--id", "NOPE"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown identity") != std::string::npos);
  CHECK(r.err.find("PERM-J-MASTER-LM1") != std::string::npos);
  r = run({"verify", "--id", "DP-J-XY-LM1", "--order", "3", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_array());
  CHECK(j[0]["id"] == "DP-J-XY-LM1");
  CHECK(j[0]["status"] == "pass");

  const std::vector<std::string> args = {"verify", "--all", "--mode", "modular", "--order", "3",
                                         "--seed", "42", "--json", "--no-timing"};
  const auto first = run(args);
  const auto second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("millis") == std::string::npos);

  r = run({"list-identities"});
  CHECK(r.code == 0);
  CHECK(r.out.find("LEMMA-4-2") != std::string::npos);
}
