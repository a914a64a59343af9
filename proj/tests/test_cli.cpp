#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fraclap/cli.hpp"
#include "json.hpp"

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = fraclap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Run r = run(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}
}  // namespace

TEST_CASE("kernel subcommand") {
  const auto j = run_json({"kernel", "--alpha", "0.5", "--x-range", "1..1", "--backend", "closed"});
  REQUIRE(j["rows"].size() == 1);
  CHECK(std::abs(j["rows"][0][1].get<double>() - 4.0 / (3.0 * std::numbers::pi)) <= 1e-15);
  const auto all = run_json({"kernel", "--alpha", "0.25", "--x-range", "1..5", "--backend", "all"});
  CHECK(all["columns"] == nlohmann::json({"x", "closed", "heat", "fourier", "max_rel_gap"}));
  for (const auto& row : all["rows"]) CHECK(row[4].get<double>() < 1e-9);
  const auto neg = run_json({"kernel", "--alpha", "-0.2", "--x-range", "-2..2", "--backend", "all"});
  CHECK(neg["columns"].size() == 4);
  CHECK(neg["rows"][0][1] == neg["rows"][4][1]);
}

TEST_CASE("usage errors") {
  const Run unknown = run({"kernel", "--alpha", "0.5", "--x-range", "1..1", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.out.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"kernel", "--alpha", "1.5", "--x-range", "1..1"}).code == 2);
  CHECK(run({"kernel", "--alpha", "-0.2", "--x-range", "1..1", "--backend", "closed"}).code == 2);
  CHECK(run({"kernel", "--alpha", "0.5", "--x-range", "3..1"}).code == 2);
  CHECK(run({"kernel", "--alpha", "0.5", "--x-range", "1..1", "--format", "xml"}).code == 2);
  CHECK(run({"verify-all", "--sigma", "0.7"}).code == 2);
  CHECK(run({"spectrum", "--sigma", "0.25", "--N", "10", "--weight", "family:x"}).code == 2);
}

TEST_CASE("unknown flag through the executable leaves no output") {
  const std::string cmd = std::string(FRACLAP_CLI_PATH) + " kernel --alpha 0.5 --x-range 1..1 --nope 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string captured;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) captured += buf;
  const int status = ::pclose(pipe);
  CHECK(captured.empty());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("weight subcommand") {
  const auto j = run_json({"weight", "--sigma", "0.25", "--x-range", "0..3"});
  CHECK(j["columns"] == nlohmann::json({"x", "w", "x^{2sigma}*w"}));
  const auto f = run_json({"weight", "--sigma", "0.25", "--alpha", "0.375", "--x-range", "0..3"});
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(f["rows"][i][1].get<double>() / j["rows"][i][1].get<double>() - 1.0) < 1e-10);
  }
}

TEST_CASE("identity, gst and nullseq verdicts") {
  const Run id = run({"verify-identity", "--sigma", "0.25", "--alpha", "0.375", "--points=0,-1,5", "--radius", "100000"});
  CHECK(id.code == 0);
  CHECK(id.out.find("# verdict: pass") != std::string::npos);
  const Run gst = run({"gst", "--sigma", "0.25", "--alpha", "0.3", "--trials", "4", "--seed", "11", "--support", "6"});
  CHECK(gst.code == 0);
  const Run ns = run({"nullseq", "--sigma", "0.25", "--alpha", "0.375", "--n-list", "100,1000"});
  CHECK(ns.code == 0);
  const auto j = run_json({"nullseq", "--sigma", "0.25", "--alpha", "0.375", "--n-list", "100,1000"});
  CHECK(j["rows"].size() == 2);
  for (const auto& b : j["err_bounds"]) CHECK(b.is_number());
}

TEST_CASE("criticality, spectrum and scan") {
  const auto c = run_json({"criticality-sum", "--sigma", "0.25", "--alpha", "0.375"});
  CHECK(c["summary"]["diagnosis"] == "divergent-log");
  const auto s = run_json({"spectrum", "--sigma", "0.25", "--weight", "cr", "--N", "100"});
  CHECK(s["verdict"] == "pass");
  const auto p = run_json({"spectrum", "--sigma", "0.25", "--N", "100", "--annulus", "5", "--lambda", "-0.5"});
  CHECK(p["summary"]["negative"] == false);
  const auto sc = run_json({"scan", "--sigma", "0.25", "--step", "0.005"});
  CHECK(sc["verdict"] == "pass");
  CHECK(std::abs(sc["summary"]["argmax"].get<double>() - 0.375) <= 0.005 + 1e-12);
}

TEST_CASE("determinism, output files and timing") {
  const std::vector<std::string> args = {"gst", "--sigma", "0.1", "--alpha", "0.2", "--trials", "3", "--seed", "5"};
  CHECK(run(args).out == run(args).out);
  CHECK(run(args).out.find("wall_time") == std::string::npos);
  std::vector<std::string> timed = args;
  timed.push_back("--timing");
  CHECK(run(timed).out.find("# wall_time: ") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "fraclap_cli_test.csv";
  std::vector<std::string> to_file = args;
  to_file.push_back("--out");
  to_file.push_back(path.string());
  const Run r = run(to_file);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == run(args).out);
  std::filesystem::remove(path);

  std::vector<std::string> par = args;
  par.push_back("--parallel");
  CHECK(run(par).out.find("# mode: parallel") != std::string::npos);
}

TEST_CASE("environment tolerance override") {
  ::setenv("FRAC_HARDY_QUAD_TOL", "1e-10", 1);
  const Run r = run({"kernel", "--alpha", "-0.3", "--x-range", "1..2", "--backend", "heat"});
  CHECK(r.out.find("# parameter rel_tol: 1e-10\n") != std::string::npos);
  ::setenv("FRAC_HARDY_QUAD_TOL", "-1", 1);
  CHECK(run({"kernel", "--alpha", "-0.3", "--x-range", "1..2"}).code == 2);
  ::unsetenv("FRAC_HARDY_QUAD_TOL");
}

TEST_CASE("single acceptance criterion through verify-all restriction") {
  const Run r = run({"verify-all", "--sigma", "0.25", "--format", "json"});
  CHECK((r.code == 0 || r.code == 1));
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 10);
}
